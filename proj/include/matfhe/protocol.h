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

// In-process simulation of the four-party delegation protocol:
//
//   1. the data owner holds Y_i = Enc(x_i, k1);
//   2. the delegator tells the owner which indices the formula needs and
//      forwards the formula to the computation center;
//   3. the owner masks Z_i = Lock(Y_i, k2) and sends them to the center;
//   4. the center evaluates Z = Eval(f, Z_i...) and hands Z to the mapper;
//   5. the mapper re-keys Y' = Lock(Z, k3) for the data user;
//   6. the data user decrypts Dec(Y', k) with the master k = k1 k2 k3.
//
// Keys are provisioned out of band; no message variant can carry one.

#ifndef MATFHE_PROTOCOL_H_
#define MATFHE_PROTOCOL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matfhe/cipher.h"
#include "matfhe/eval.h"
#include "matfhe/keygen.h"

namespace matfhe {

// The delegator and mapper are the two divisions of the processing center.
enum class Role { kDataOwner, kDelegator, kMapper, kComputationCenter, kDataUser };

std::string_view role_name(Role role);

struct DataRequest {
  std::vector<std::size_t> indices;  // 1-based, ascending
};
struct FormulaAnnouncement {
  ExprPtr formula;
};
struct MaskedOperand {
  std::size_t index;
  Ciphertext operand;
};
struct EvalResult {
  Ciphertext result;
};
struct MappedResult {
  Ciphertext result;
};

using Payload = std::variant<DataRequest, FormulaAnnouncement, MaskedOperand,
                             EvalResult, MappedResult>;

std::string_view payload_name(const Payload& payload);

struct ProtocolMessage {
  int step;
  Role from;
  Role to;
  Payload payload;
};

struct Transcript {
  Integer modulus;
  std::vector<ProtocolMessage> messages;
  Integer result;
};

struct ProtocolRun {
  Integer result;
  Transcript transcript;
};

// Runs the protocol for formula f over data x1..xn (inputs are named
// "x1", "x2", ...). The key set must hold exactly three components.
ProtocolRun run_protocol(const Expr& f, std::span<const Integer> data,
                         const KeySet& keyset, RandomSource& rng);

struct Violation {
  std::size_t message_index;  // messages.size() for transcript-wide findings
  std::string description;
};

// Key-separation audit. Flags
//   - any matrix sent to the computation center equal to a component key,
//     the master key, or one of their inverses;
//   - any payload other than a masked operand or the formula reaching the
//     computation center;
//   - a data user that does not receive exactly one mapped result;
//   - k1, k2 or their inverses appearing in any message at all.
std::vector<Violation> audit_transcript(const Transcript& t, const KeySet& keyset);

}  // namespace matfhe

#endif  // MATFHE_PROTOCOL_H_
