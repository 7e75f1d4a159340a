# Copyright 2026 The matfhe Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the matfhe binary.

Usage: test_cli.py <matfhe executable> <fixture dir>
"""

import os
import subprocess
import sys
import tempfile
import unittest

EXE = None
FIXTURES = None


def run(*args, cwd=None):
    return subprocess.run([EXE, *args], capture_output=True, text=True, cwd=cwd, timeout=240)


def fixture(name):
    return os.path.join(FIXTURES, name)


class CliTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp, name)

    def ok(self, *args, cwd=None):
        r = run(*args, cwd=cwd)
        self.assertEqual(r.returncode, 0, f"{args}: {r.stderr}")
        return r.stdout

    def test_keygen_is_deterministic_under_seed(self):
        self.ok("keygen", "--m", "2", "--lambda", "16", "--seed", "7", "--out", self.path("a"))
        self.ok("keygen", "--m", "2", "--lambda", "16", "--seed", "7", "--out", self.path("b"))
        with open(self.path("a"), "rb") as a, open(self.path("b"), "rb") as b:
            self.assertEqual(a.read(), b.read())
        self.assertTrue(self.ok("verify", "--key", self.path("a")).startswith("ok"))

    def test_keygen_parameter_errors(self):
        self.assertEqual(run("keygen", "--lambda", "7", "--out", self.path("k")).returncode, 2)
        self.assertEqual(run("keygen", "--m", "0", "--out", self.path("k")).returncode, 2)
        self.assertEqual(run("keygen", "--m", "two", "--out", self.path("k")).returncode, 2)
        self.assertEqual(run("keygen").returncode, 2)
        self.assertEqual(run().returncode, 2)

    def test_keygen_exhaustion(self):
        r = run("keygen", "--m", "3", "--lambda", "8", "--seed", "1", "--out", self.path("k"))
        self.assertEqual(r.returncode, 3, r.stderr)

    def test_encrypt_decrypt_round_trip(self):
        key = self.path("k")
        self.ok("keygen", "--m", "2", "--lambda", "16", "--seed", "3", "--out", key)
        self.ok("encrypt", "--key", key, "--value", "257", "--out", self.path("c"), "--seed", "4")
        self.assertEqual(self.ok("decrypt", "--key", key, "--in", self.path("c")).strip(), "257")

    def test_decrypt_worked_example_fixture(self):
        out = self.ok("decrypt", "--key", fixture("single.key"), "--in", fixture("single.ct"))
        self.assertEqual(out.strip(), "257")

    def test_encrypt_range_and_format_errors(self):
        key = fixture("single.key")
        self.assertEqual(run("encrypt", "--key", key, "--value", "1155",
                             "--out", self.path("c")).returncode, 5)
        self.assertEqual(run("encrypt", "--key", key, "--value", "-1",
                             "--out", self.path("c")).returncode, 2)
        bad = self.path("bad.key")
        with open(key) as f:
            text = f.read()
        with open(bad, "w") as f:
            f.write(text.replace("N=1155", "N=1157"))
        self.assertEqual(run("decrypt", "--key", bad, "--in", fixture("single.ct")).returncode, 4)
        self.assertEqual(run("decrypt", "--key", key, "--in", key).returncode, 4)

    def test_eval_worked_example_sum(self):
        key = fixture("pair.key")
        out = self.path("sum")
        self.ok("eval", "--key", key, "--expr", "a+b", "--input",
                "a=" + fixture("pair_c1.ct"), "b=" + fixture("pair_c2.ct"),
                "--out", out)
        self.assertEqual(self.ok("decrypt", "--key", key, "--in", out).strip(), "17")
        self.ok("eval", "--key", key, "--expr", "a*b", "--input",
                "a=" + fixture("pair_c1.ct"), "--input", "b=" + fixture("pair_c2.ct"),
                "--out", out)
        self.assertEqual(self.ok("decrypt", "--key", key, "--in", out).strip(), "60")

    def test_eval_identity_returns_operand(self):
        key = fixture("pair.key")
        out = self.path("id")
        self.ok("eval", "--key", key, "--expr", "a", "--input",
                "a=" + fixture("pair_c1.ct"), "--out", out)
        with open(out) as got, open(fixture("pair_c1.ct")) as want:
            self.assertEqual(got.read(), want.read())

    def test_eval_errors(self):
        key = fixture("pair.key")
        a = "a=" + fixture("pair_c1.ct")
        r = run("eval", "--key", key, "--expr", "a+*b", "--input", a, "--out", self.path("o"))
        self.assertEqual(r.returncode, 6)
        self.assertIn("offset 2", r.stderr)
        r = run("eval", "--key", key, "--expr", "a+b", "--input", a, "--out", self.path("o"))
        self.assertEqual(r.returncode, 7)
        self.assertIn("b", r.stderr)

    def test_protocol_demo(self):
        out = self.ok("protocol-demo", "--f", "x1+x2", "--data", "5,12", "--seed", "1",
                      cwd=self.tmp)
        self.assertEqual(out.strip(), "17")
        with open(self.path("transcript.log")) as f:
            first = f.read()
        self.assertTrue(first.startswith("MATFHE-TRANSCRIPT v1\n"))
        self.ok("protocol-demo", "--f", "x1+x2", "--data", "5,12", "--seed", "1",
                "--transcript", self.path("again.log"))
        with open(self.path("again.log")) as f:
            self.assertEqual(f.read(), first)
        self.assertEqual(run("protocol-demo", "--f", "x1+x3", "--data", "5,12",
                             "--transcript", self.path("t")).returncode, 7)

    def test_analyze(self):
        csv = self.ok("analyze", "invertibility", "--moduli", "6,1155", "--samples", "20",
                      "--repeats", "2", "--seed", "1").splitlines()
        self.assertEqual(csv[0], "modulus,trial,samples,invertible")
        self.assertEqual(len(csv), 5)
        kpa = self.ok("analyze", "kpa", "--trials", "20000", "--m", "1", "--x", "4",
                      "--seed", "2").splitlines()
        self.assertEqual(kpa[0], "m,N,trials,hits,fraction,nominal,exact")
        fields = kpa[1].split(",")
        self.assertEqual(fields[1], "15")
        bf = self.ok("analyze", "bruteforce").splitlines()
        self.assertIn("10,4,164,172", bf)
        lemma = self.ok("analyze", "lemma7", "--count", "20", "--seed", "3").splitlines()
        self.assertEqual(len(lemma), 21)
        self.assertTrue(all(line.endswith(",true") for line in lemma[1:]))
        self.assertEqual(run("analyze", "nonsense").returncode, 2)

    def test_bench(self):
        out = self.ok("bench", "--lambda", "12", "--repeats", "3", "--seed", "5")
        rows = {}
        for line in out.splitlines():
            parts = line.split()
            if len(parts) >= 2 and parts[0] in ("add", "mul", "keygen", "enc", "dec"):
                rows[parts[0]] = float(parts[1])
        self.assertEqual(set(rows), {"add", "mul", "keygen", "enc", "dec"})
        self.assertLess(rows["add"], rows["mul"])


if __name__ == "__main__":
    EXE = os.path.abspath(sys.argv[1])
    FIXTURES = os.path.abspath(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
