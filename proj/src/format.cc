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

#include "matfhe/format.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "matfhe/errors.h"

namespace matfhe {
namespace {

std::string join(const std::vector<Integer>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += to_decimal(values[i]);
  }
  return out;
}

void put(std::string& out, std::string_view key, std::string_view value) {
  out.append(key);
  out += '=';
  out.append(value);
  out += '\n';
}

void put_header(std::string& out, const RingModulus& modulus, std::size_t dim) {
  put(out, "m", std::to_string(modulus.m()));
  put(out, "lambda", std::to_string(modulus.lambda()));
  put(out, "f", join(modulus.f()));
  put(out, "N", to_decimal(modulus.n()));
  put(out, "dim", std::to_string(dim));
}

// Line cursor over a file body. Every accessor throws FormatError.
class Reader {
 public:
  Reader(std::string_view text, std::string_view kind) {
    if (text.empty() || text.back() != '\n') fail("file must end with a newline");
    std::size_t start = 0;
    while (start < text.size()) {
      const std::size_t end = text.find('\n', start);
      lines_.push_back(text.substr(start, end - start));
      start = end + 1;
    }
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const std::string_view l = lines_[i];
      if (l.find('\r') != std::string_view::npos) fail("CR in line " + std::to_string(i + 1));
      if (!l.empty() && (l.back() == ' ' || l.back() == '\t')) {
        fail("trailing whitespace in line " + std::to_string(i + 1));
      }
    }
    const std::string header = "MATFHE-" + std::string(kind) + " v1";
    if (next_line() != header) fail("expected header '" + header + "'");
  }

  std::string_view next_line() {
    if (cursor_ >= lines_.size()) fail("unexpected end of file");
    return lines_[cursor_++];
  }

  bool at_end() const { return cursor_ == lines_.size(); }
  bool peek_prefix(std::string_view prefix) const {
    return cursor_ < lines_.size() && lines_[cursor_].starts_with(prefix);
  }

  std::string_view field(std::string_view key) {
    const std::size_t line_no = cursor_ + 1;
    const std::string_view line = next_line();
    if (line.size() <= key.size() || !line.starts_with(key) || line[key.size()] != '=') {
      fail("line " + std::to_string(line_no) + ": expected '" + std::string(key) + "='");
    }
    return line.substr(key.size() + 1);
  }

  void finish() {
    if (!at_end()) fail("unexpected content after line " + std::to_string(cursor_));
  }

  [[noreturn]] static void fail(const std::string& what) { throw FormatError(what); }

 private:
  std::vector<std::string_view> lines_;
  std::size_t cursor_ = 0;
};

Integer parse_number(std::string_view text, std::string_view what) {
  const std::optional<Integer> v = parse_decimal(text);
  if (!v) {
    throw FormatError("malformed number for " + std::string(what) + ": '" +
                      std::string(text) + "'");
  }
  return *v;
}

std::size_t parse_small(std::string_view text, std::string_view what) {
  const Integer v = parse_number(text, what);
  if (!v.fits_uint_p()) throw FormatError(std::string(what) + " out of range");
  return v.get_ui();
}

std::vector<Integer> parse_list(std::string_view text, std::string_view what) {
  std::vector<Integer> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

RingMatrix parse_matrix(std::string_view text, std::size_t dim, const Integer& n,
                        std::string_view what) {
  const std::vector<Integer> entries = parse_list(text, what);
  if (entries.size() != dim * dim) {
    throw FormatError(std::string(what) + ": expected " + std::to_string(dim * dim) +
                      " entries, got " + std::to_string(entries.size()));
  }
  for (const Integer& e : entries) {
    if (e >= n) throw FormatError(std::string(what) + ": entry " + to_decimal(e) + " >= N");
  }
  return RingMatrix::from_entries(dim, n, entries);
}

std::size_t parse_dim(std::string_view text) {
  const std::size_t dim = parse_small(text, "dim");
  if (dim < 1 || dim > RingMatrix::kMaxDim) throw FormatError("dim out of range");
  return dim;
}

struct Header {
  RingModulus modulus;
  std::size_t dim;
};

Header read_header(Reader& r) {
  const std::size_t m = parse_small(r.field("m"), "m");
  const std::size_t lambda = parse_small(r.field("lambda"), "lambda");
  std::vector<Integer> f = parse_list(r.field("f"), "f");
  const Integer n = parse_number(r.field("N"), "N");
  const std::size_t dim = parse_dim(r.field("dim"));
  if (f.size() != m) throw FormatError("f lists " + std::to_string(f.size()) + " factors, m is " + std::to_string(m));
  try {
    RingModulus modulus = RingModulus::from_factors(std::move(f), lambda);
    if (modulus.n() != n) throw FormatError("N is not the product of the f_i");
    return {std::move(modulus), dim};
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("bad modulus: ") + e.what());
  }
}

KeyTuple read_key_pair(Reader& r, const RingModulus& modulus, std::size_t dim,
                       const std::string& name) {
  RingMatrix k = parse_matrix(r.field(name), dim, modulus.n(), name);
  RingMatrix k_inv = parse_matrix(r.field(name + "inv"), dim, modulus.n(), name + "inv");
  try {
    return KeyTuple::from_matrices(modulus, std::move(k), std::move(k_inv));
  } catch (const Error& e) {
    throw FormatError(name + ": " + e.what());
  }
}

std::string matrix_text(const RingMatrix& m) { return join(m.entries()); }

// ---- transcripts ----------------------------------------------------------

Role parse_role(std::string_view text) {
  for (Role r : {Role::kDataOwner, Role::kDelegator, Role::kMapper,
                 Role::kComputationCenter, Role::kDataUser}) {
    if (role_name(r) == text) return r;
  }
  throw FormatError("unknown role '" + std::string(text) + "'");
}

std::string payload_text(const Payload& payload) {
  if (const auto* p = std::get_if<DataRequest>(&payload)) {
    std::string out = "indices=";
    for (std::size_t i = 0; i < p->indices.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(p->indices[i]);
    }
    return out;
  }
  if (const auto* p = std::get_if<FormulaAnnouncement>(&payload)) {
    return "f=" + to_string(*p->formula);
  }
  if (const auto* p = std::get_if<MaskedOperand>(&payload)) {
    return "index=" + std::to_string(p->index) + ";c=" + matrix_text(p->operand.body());
  }
  if (const auto* p = std::get_if<EvalResult>(&payload)) {
    return "c=" + matrix_text(p->result.body());
  }
  return "c=" + matrix_text(std::get<MappedResult>(payload).result.body());
}

std::string_view strip(std::string_view text, std::string_view prefix) {
  if (!text.starts_with(prefix)) {
    throw FormatError("payload must start with '" + std::string(prefix) + "'");
  }
  return text.substr(prefix.size());
}

Payload parse_payload(std::string_view kind, std::string_view text, std::size_t dim,
                      const Integer& n) {
  if (kind == "DataRequest") {
    DataRequest req;
    for (const Integer& v : parse_list(strip(text, "indices="), "indices")) {
      if (!v.fits_uint_p()) throw FormatError("index out of range");
      req.indices.push_back(v.get_ui());
    }
    return req;
  }
  if (kind == "FormulaAnnouncement") {
    const std::string_view src = strip(text, "f=");
    try {
      ExprPtr f = parse_expr(src);
      if (to_string(*f) != src) throw FormatError("formula is not in canonical form");
      return FormulaAnnouncement{std::move(f)};
    } catch (const ParseError& e) {
      throw FormatError(std::string("formula: ") + e.what());
    }
  }
  if (kind == "MaskedOperand") {
    const std::string_view rest = strip(text, "index=");
    const std::size_t semi = rest.find(";c=");
    if (semi == std::string_view::npos) throw FormatError("MaskedOperand needs ';c='");
    const std::size_t index = parse_small(rest.substr(0, semi), "index");
    return MaskedOperand{index, Ciphertext(parse_matrix(rest.substr(semi + 3), dim, n, "c"))};
  }
  if (kind == "EvalResult") {
    return EvalResult{Ciphertext(parse_matrix(strip(text, "c="), dim, n, "c"))};
  }
  if (kind == "MappedResult") {
    return MappedResult{Ciphertext(parse_matrix(strip(text, "c="), dim, n, "c"))};
  }
  throw FormatError("unknown payload kind '" + std::string(kind) + "'");
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) return out;
    start = tab + 1;
  }
}

}  // namespace

std::string serialize_key(const KeyTuple& key) {
  std::string out = "MATFHE-KEY v1\n";
  put_header(out, key.modulus(), key.dim());
  put(out, "k", matrix_text(key.k()));
  put(out, "kinv", matrix_text(key.k_inv()));
  return out;
}

KeyTuple parse_key(std::string_view text) {
  Reader r(text, "KEY");
  const Header h = read_header(r);
  if (h.dim != 4 && h.dim != 8) throw FormatError("key dim must be 4 or 8");
  KeyTuple key = read_key_pair(r, h.modulus, h.dim, "k");
  r.finish();
  return key;
}

std::string serialize_keyset(const KeySet& keyset) {
  std::string out = "MATFHE-KEYSET v1\n";
  put_header(out, keyset.modulus(), keyset.master().dim());
  put(out, "l", std::to_string(keyset.size()));
  put(out, "k", matrix_text(keyset.master().k()));
  put(out, "kinv", matrix_text(keyset.master().k_inv()));
  for (std::size_t i = 0; i < keyset.size(); ++i) {
    const std::string name = "k" + std::to_string(i + 1);
    put(out, name, matrix_text(keyset.components()[i].k()));
    put(out, name + "inv", matrix_text(keyset.components()[i].k_inv()));
  }
  return out;
}

KeySet parse_keyset(std::string_view text) {
  Reader r(text, "KEYSET");
  const Header h = read_header(r);
  if (h.dim != 4 && h.dim != 8) throw FormatError("key dim must be 4 or 8");
  const std::size_t l = parse_small(r.field("l"), "l");
  if (l < 2 || l > 64) throw FormatError("l must lie in [2, 64]");
  const KeyTuple master = read_key_pair(r, h.modulus, h.dim, "k");
  std::vector<KeyTuple> components;
  for (std::size_t i = 1; i <= l; ++i) {
    components.push_back(read_key_pair(r, h.modulus, h.dim, "k" + std::to_string(i)));
  }
  r.finish();
  KeySet set = [&] {
    try {
      return KeySet::from_components(h.modulus, std::move(components));
    } catch (const Error& e) {
      throw FormatError(std::string("bad key set: ") + e.what());
    }
  }();
  if (!(set.master() == master)) {
    throw FormatError("master key is not the product of the components");
  }
  return set;
}

std::string serialize_ciphertext(const Ciphertext& c) {
  std::string out = "MATFHE-CIPHERTEXT v1\n";
  put(out, "N", to_decimal(c.modulus()));
  put(out, "dim", std::to_string(c.dim()));
  put(out, "c", matrix_text(c.body()));
  return out;
}

Ciphertext parse_ciphertext(std::string_view text) {
  Reader r(text, "CIPHERTEXT");
  const Integer n = parse_number(r.field("N"), "N");
  if (n < 2) throw FormatError("N must be at least 2");
  const std::size_t dim = parse_dim(r.field("dim"));
  Ciphertext c(parse_matrix(r.field("c"), dim, n, "c"));
  r.finish();
  return c;
}

std::string serialize_transcript(const Transcript& t) {
  std::size_t dim = 0;
  for (const ProtocolMessage& m : t.messages) {
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, MaskedOperand>) {
            dim = p.operand.dim();
          } else if constexpr (std::is_same_v<P, EvalResult> ||
                               std::is_same_v<P, MappedResult>) {
            dim = p.result.dim();
          }
        },
        m.payload);
  }
  std::string out = "MATFHE-TRANSCRIPT v1\n";
  put(out, "N", to_decimal(t.modulus));
  put(out, "dim", std::to_string(dim == 0 ? 4 : dim));
  for (const ProtocolMessage& m : t.messages) {
    out += std::to_string(m.step);
    out += '\t';
    out += role_name(m.from);
    out += '\t';
    out += role_name(m.to);
    out += '\t';
    out += payload_name(m.payload);
    out += '\t';
    out += payload_text(m.payload);
    out += '\n';
  }
  put(out, "result", to_decimal(t.result));
  return out;
}

Transcript parse_transcript(std::string_view text) {
  Reader r(text, "TRANSCRIPT");
  Transcript t;
  t.modulus = parse_number(r.field("N"), "N");
  if (t.modulus < 2) throw FormatError("N must be at least 2");
  const std::size_t dim = parse_dim(r.field("dim"));
  while (!r.peek_prefix("result=")) {
    const std::vector<std::string_view> cols = split_tabs(r.next_line());
    if (cols.size() != 5) throw FormatError("message lines have five tab-separated fields");
    const std::size_t step = parse_small(cols[0], "step");
    t.messages.push_back({static_cast<int>(step), parse_role(cols[1]), parse_role(cols[2]),
                          parse_payload(cols[3], cols[4], dim, t.modulus)});
  }
  t.result = parse_number(r.field("result"), "result");
  r.finish();
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgumentError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace matfhe
