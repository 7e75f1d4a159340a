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

// Text formats. Every file starts with "MATFHE-<KIND> v1" and continues
// with key=value lines in a fixed order:
//
//   KEY         m, lambda, f, N, dim, k, kinv
//   KEYSET      m, lambda, f, N, dim, l, k, kinv, k1, k1inv, ..., kl, klinv
//   CIPHERTEXT  N, dim, c
//   TRANSCRIPT  N, dim, then one tab-separated line per message
//               (step, from, to, kind, payload), then result
//
// Matrices are row-major, comma-separated decimals. Lines end in LF, there
// is no trailing whitespace and numbers carry no sign or leading zero. The
// parsers accept exactly what the writers produce and throw FormatError on
// anything else, so parse(serialize(x)) == x and
// serialize(parse(s)) == s byte for byte.

#ifndef MATFHE_FORMAT_H_
#define MATFHE_FORMAT_H_

#include <string>
#include <string_view>

#include "matfhe/cipher.h"
#include "matfhe/keygen.h"
#include "matfhe/protocol.h"

namespace matfhe {

std::string serialize_key(const KeyTuple& key);
KeyTuple parse_key(std::string_view text);

std::string serialize_keyset(const KeySet& keyset);
KeySet parse_keyset(std::string_view text);

std::string serialize_ciphertext(const Ciphertext& c);
Ciphertext parse_ciphertext(std::string_view text);

std::string serialize_transcript(const Transcript& t);
Transcript parse_transcript(std::string_view text);

// Whole-file helpers. read_file throws InvalidArgumentError when the file
// cannot be opened; write_file throws Error.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace matfhe

#endif  // MATFHE_FORMAT_H_
