/*
 * Copyright 2026 The matfhe Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "matfhe/analysis.h"
#include "matfhe/cipher.h"
#include "matfhe/errors.h"
#include "matfhe/eval.h"
#include "matfhe/format.h"
#include "matfhe/keygen.h"
#include "matfhe/protocol.h"
#include "matfhe/random.h"

namespace py = pybind11;

// Python int <-> mpz_class through decimal text.
namespace pybind11::detail {
template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    const std::string text = py::str(src);
    return value.set_str(text, 10) == 0;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str(10).c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace matfhe {
namespace {

std::vector<std::vector<Integer>> rows(const RingMatrix& m) {
  std::vector<std::vector<Integer>> out(m.dim(), std::vector<Integer>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m.at(i, j);
  return out;
}

CipherEnv env_for(const std::map<std::string, Ciphertext>& inputs) {
  CipherEnv env;
  for (const auto& [name, c] : inputs) env.bind(name, c);
  return env;
}

}  // namespace
}  // namespace matfhe

PYBIND11_MODULE(_matfhe, m) {
  using namespace matfhe;
  m.doc() = "Matrix-based homomorphic encryption over Z_N";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgumentError>(m, "InvalidArgumentError", base.ptr());
  py::register_exception<MismatchError>(m, "MismatchError", base.ptr());
  py::register_exception<ResourceExhaustedError>(m, "ResourceExhaustedError", base.ptr());
  auto not_inv = py::register_exception<NotInvertibleError>(m, "NotInvertibleError", base.ptr());
  py::register_exception<DivisorNotInvertibleError>(m, "DivisorNotInvertibleError",
                                                    not_inv.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<UnboundInputError>(m, "UnboundInputError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<ProtocolError>(m, "ProtocolError", base.ptr());

  py::class_<KeyTuple>(m, "Key")
      .def_property_readonly("n", &KeyTuple::n)
      .def_property_readonly("dim", &KeyTuple::dim)
      .def_property_readonly("factors", [](const KeyTuple& k) { return k.modulus().f(); })
      .def_property_readonly("k", [](const KeyTuple& k) { return rows(k.k()); })
      .def_property_readonly("k_inv", [](const KeyTuple& k) { return rows(k.k_inv()); })
      .def("serialize", &serialize_key)
      .def_static("parse", [](const std::string& text) { return parse_key(text); })
      .def("__eq__", [](const KeyTuple& a, const KeyTuple& b) { return a == b; });

  py::class_<KeySet>(m, "KeySet")
      .def_property_readonly("master", &KeySet::master)
      .def_property_readonly("components", &KeySet::components)
      .def("serialize", &serialize_keyset)
      .def_static("parse", [](const std::string& text) { return parse_keyset(text); });

  py::class_<Ciphertext>(m, "Ciphertext")
      .def_property_readonly("dim", &Ciphertext::dim)
      .def_property_readonly("n", &Ciphertext::modulus)
      .def_property_readonly("matrix", [](const Ciphertext& c) { return rows(c.body()); })
      .def("serialize", &serialize_ciphertext)
      .def_static("parse", [](const std::string& text) { return parse_ciphertext(text); })
      .def("__add__", &he_add)
      .def("__sub__", &he_sub)
      .def("__mul__", &he_mul)
      .def("__truediv__", &he_div)
      .def("__eq__", [](const Ciphertext& a, const Ciphertext& b) { return a == b; });

  m.def(
      "keygen",
      [](std::size_t m_, std::size_t lambda, std::size_t dim, std::uint64_t seed) {
        SeededRandom rng(seed);
        return keygen(dim, m_, lambda, rng);
      },
      py::arg("m"), py::arg("lam"), py::arg("dim") = 4, py::arg("seed") = 0);
  m.def(
      "keyset_gen",
      [](std::size_t l, std::size_t m_, std::size_t lambda, std::size_t dim,
         std::uint64_t seed) {
        SeededRandom rng(seed);
        return keyset_gen(dim, l, m_, lambda, rng);
      },
      py::arg("l"), py::arg("m"), py::arg("lam"), py::arg("dim") = 4, py::arg("seed") = 0);
  m.def(
      "encrypt",
      [](const Integer& x, const KeyTuple& key, std::uint64_t seed) {
        SeededRandom rng(seed);
        return encrypt(x, key, rng);
      },
      py::arg("x"), py::arg("key"), py::arg("seed") = 0);
  m.def("decrypt", &dec, py::arg("c"), py::arg("key"));

  m.def(
      "evaluate",
      [](const std::string& formula, const std::map<std::string, Ciphertext>& inputs) {
        return eval_expr(*parse_expr(formula), env_for(inputs));
      },
      py::arg("formula"), py::arg("inputs"));
  m.def(
      "eval_plain",
      [](const std::string& formula, const std::map<std::string, Integer>& inputs,
         const Integer& n) { return eval_plain(*parse_expr(formula), inputs, n); },
      py::arg("formula"), py::arg("inputs"), py::arg("n"));
  m.def(
      "normalize_formula",
      [](const std::string& formula) { return to_string(*parse_expr(formula)); });

  m.def(
      "run_protocol",
      [](const std::string& formula, const std::vector<Integer>& data, const KeySet& keyset,
         std::uint64_t seed) {
        SeededRandom rng(seed);
        const ProtocolRun run = run_protocol(*parse_expr(formula), data, keyset, rng);
        std::vector<std::string> findings;
        for (const Violation& v : audit_transcript(run.transcript, keyset))
          findings.push_back(v.description);
        return py::make_tuple(run.result, serialize_transcript(run.transcript), findings);
      },
      py::arg("formula"), py::arg("data"), py::arg("keyset"), py::arg("seed") = 0);

  m.def("toy_modulus_n", [](std::size_t m_) { return toy_modulus(m_).n(); });
  m.def("invertible_probability", &invertible_probability, py::arg("dim"), py::arg("n"));
}
