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

#include "matfhe/protocol.h"

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>

#include "matfhe/errors.h"

namespace matfhe {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string input_name(std::size_t index) { return "x" + std::to_string(index); }

// Maps "x7" to 7; anything else is not a data reference.
std::optional<std::size_t> data_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  const std::optional<Integer> v = parse_decimal(std::string_view(name).substr(1));
  if (!v || *v == 0 || !v->fits_ulong_p()) return std::nullopt;
  return static_cast<std::size_t>(v->get_ui());
}

const Ciphertext* payload_matrix(const Payload& payload) {
  return std::visit(
      Overloaded{
          [](const MaskedOperand& p) -> const Ciphertext* { return &p.operand; },
          [](const EvalResult& p) -> const Ciphertext* { return &p.result; },
          [](const MappedResult& p) -> const Ciphertext* { return &p.result; },
          [](const auto&) -> const Ciphertext* { return nullptr; },
      },
      payload);
}

class Simulation {
 public:
  Simulation(std::span<const Integer> data, const KeySet& keyset, RandomSource& rng)
      : keyset_(keyset) {
    transcript_.modulus = keyset.modulus().n();
    // Step 1: the owner's encrypted store.
    for (const Integer& x : data) {
      owner_store_.push_back(encrypt(x, key(0), rng));
    }
  }

  ProtocolRun run(ExprPtr formula) {
    send(2, Role::kDataUser, Role::kDelegator, FormulaAnnouncement{std::move(formula)});
    while (!queue_.empty()) {
      ProtocolMessage message = std::move(queue_.front());
      queue_.pop_front();
      deliver(message);
      transcript_.messages.push_back(std::move(message));
    }
    if (!result_) throw ProtocolError("protocol finished without a result");
    transcript_.result = *result_;
    return {*result_, std::move(transcript_)};
  }

 private:
  const KeyTuple& key(std::size_t i) const { return keyset_.components()[i]; }

  void send(int step, Role from, Role to, Payload payload) {
    if (step < last_step_) {
      throw ProtocolError("message for step " + std::to_string(step) +
                          " sent after step " + std::to_string(last_step_));
    }
    last_step_ = step;
    queue_.push_back({step, from, to, std::move(payload)});
  }

  void deliver(const ProtocolMessage& m) {
    switch (m.to) {
      case Role::kDelegator:
        on_delegator(m);
        break;
      case Role::kDataOwner:
        on_owner(m);
        break;
      case Role::kComputationCenter:
        on_center(m);
        break;
      case Role::kMapper:
        on_mapper(m);
        break;
      case Role::kDataUser:
        on_user(m);
        break;
    }
  }

  void on_delegator(const ProtocolMessage& m) {
    const auto& announcement = std::get<FormulaAnnouncement>(m.payload);
    DataRequest request;
    for (const std::string& name : input_names(*announcement.formula)) {
      const std::optional<std::size_t> index = data_index(name);
      if (!index || *index > owner_store_.size()) {
        throw UnboundInputError(name);
      }
      request.indices.push_back(*index);
    }
    std::sort(request.indices.begin(), request.indices.end());
    expected_operands_ = request.indices.size();
    send(2, Role::kDelegator, Role::kDataOwner, std::move(request));
    send(2, Role::kDelegator, Role::kComputationCenter, announcement);
  }

  void on_owner(const ProtocolMessage& m) {
    for (std::size_t index : std::get<DataRequest>(m.payload).indices) {
      send(3, Role::kDataOwner, Role::kComputationCenter,
           MaskedOperand{index, lock(owner_store_[index - 1], key(1))});
    }
  }

  void on_center(const ProtocolMessage& m) {
    std::visit(Overloaded{
                   [&](const FormulaAnnouncement& p) { center_formula_ = p.formula; },
                   [&](const MaskedOperand& p) {
                     center_env_.bind(input_name(p.index), p.operand);
                   },
                   [](const auto&) {
                     throw ProtocolError("computation center got an unexpected payload");
                   },
               },
               m.payload);
    if (center_formula_ && center_env_.inputs().size() == expected_operands_) {
      send(4, Role::kComputationCenter, Role::kMapper,
           EvalResult{eval_expr(*center_formula_, center_env_)});
    }
  }

  void on_mapper(const ProtocolMessage& m) {
    const auto& z = std::get<EvalResult>(m.payload).result;
    send(5, Role::kMapper, Role::kDataUser, MappedResult{lock(z, key(2))});
  }

  void on_user(const ProtocolMessage& m) {
    // Step 6 is local to the user.
    result_ = dec(std::get<MappedResult>(m.payload).result, keyset_.master());
  }

  const KeySet& keyset_;
  std::vector<Ciphertext> owner_store_;
  ExprPtr center_formula_;
  CipherEnv center_env_;
  std::size_t expected_operands_ = 0;
  std::optional<Integer> result_;
  std::deque<ProtocolMessage> queue_;
  Transcript transcript_;
  int last_step_ = 0;
};

}  // namespace

std::string_view role_name(Role role) {
  switch (role) {
    case Role::kDataOwner:
      return "DataOwner";
    case Role::kDelegator:
      return "Delegator";
    case Role::kMapper:
      return "Mapper";
    case Role::kComputationCenter:
      return "ComputationCenter";
    case Role::kDataUser:
      return "DataUser";
  }
  return "?";
}

std::string_view payload_name(const Payload& payload) {
  return std::visit(Overloaded{
                        [](const DataRequest&) { return std::string_view("DataRequest"); },
                        [](const FormulaAnnouncement&) {
                          return std::string_view("FormulaAnnouncement");
                        },
                        [](const MaskedOperand&) { return std::string_view("MaskedOperand"); },
                        [](const EvalResult&) { return std::string_view("EvalResult"); },
                        [](const MappedResult&) { return std::string_view("MappedResult"); },
                    },
                    payload);
}

ProtocolRun run_protocol(const Expr& f, std::span<const Integer> data,
                         const KeySet& keyset, RandomSource& rng) {
  if (keyset.size() != 3) {
    throw InvalidArgumentError("the protocol needs a key set with three components");
  }
  // Messages hold shared pointers; give them a tree of their own.
  ExprPtr formula = parse_expr(to_string(f));
  Simulation sim(data, keyset, rng);
  return sim.run(formula);
}

std::vector<Violation> audit_transcript(const Transcript& t, const KeySet& keyset) {
  std::vector<const RingMatrix*> all_keys;
  std::vector<const RingMatrix*> owner_keys;
  for (std::size_t i = 0; i < keyset.components().size(); ++i) {
    const KeyTuple& k = keyset.components()[i];
    all_keys.push_back(&k.k());
    all_keys.push_back(&k.k_inv());
    if (i < 2) {
      owner_keys.push_back(&k.k());
      owner_keys.push_back(&k.k_inv());
    }
  }
  all_keys.push_back(&keyset.master().k());
  all_keys.push_back(&keyset.master().k_inv());

  auto matches_any = [](const RingMatrix& m, const std::vector<const RingMatrix*>& keys) {
    for (const RingMatrix* k : keys) {
      if (k->dim() == m.dim() && k->modulus() == m.modulus() && *k == m) return true;
    }
    return false;
  };

  std::vector<Violation> out;
  std::size_t mapped_results = 0;
  for (std::size_t i = 0; i < t.messages.size(); ++i) {
    const ProtocolMessage& m = t.messages[i];
    const Ciphertext* matrix = payload_matrix(m.payload);
    const std::string route = std::string(role_name(m.from)) + " -> " +
                              std::string(role_name(m.to)) + " " +
                              std::string(payload_name(m.payload));
    if (m.to == Role::kComputationCenter) {
      if (!std::holds_alternative<MaskedOperand>(m.payload) &&
          !std::holds_alternative<FormulaAnnouncement>(m.payload)) {
        out.push_back({i, route + ": computation center may only receive "
                              "masked operands and the formula"});
      }
      if (matrix && matches_any(matrix->body(), all_keys)) {
        out.push_back({i, route + ": key material sent to the computation center"});
      }
    }
    if (matrix && matches_any(matrix->body(), owner_keys)) {
      out.push_back({i, route + ": k1 or k2 (or an inverse) left the data owner"});
    }
    if (m.to == Role::kDataUser && std::holds_alternative<MappedResult>(m.payload)) {
      ++mapped_results;
    }
  }
  if (mapped_results != 1) {
    out.push_back({t.messages.size(), "data user received " +
                                          std::to_string(mapped_results) +
                                          " mapped results, expected exactly one"});
  }
  return out;
}

}  // namespace matfhe
