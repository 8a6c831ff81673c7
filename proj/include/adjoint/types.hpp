// Copyright 2026 The Adjoint Sessions Authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy of
// the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations under
// the License.

#ifndef ADJOINT_TYPES_HPP_
#define ADJOINT_TYPES_HPP_

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace adj {

struct TypeNode;

/// Session types are immutable and shared.
using Type = std::shared_ptr<const TypeNode>;

struct Choice {
  std::string label;
  Type type;
};

struct AtomType {
  std::string name;
};
struct LolliType {
  Type arg;
  Type result;
};
struct TensorType {
  Type left;
  Type right;
};
struct OneType {};
struct PlusType {
  std::vector<Choice> choices;
};
struct WithType {
  std::vector<Choice> choices;
};
/// Outer mode is the node's mode; `body` lives at a lower or equal mode.
struct UpType {
  Type body;
};
/// Outer mode is the node's mode; `body` lives at a higher or equal mode.
struct DownType {
  Type body;
};
/// Reference to a type definition. Equality is by name.
struct NamedType {
  std::string name;
};

struct TypeNode {
  std::string mode;
  std::variant<AtomType, LolliType, TensorType, OneType, PlusType, WithType, UpType,
               DownType, NamedType>
      node;
};

Type make_atom(std::string name, std::string mode);
Type make_lolli(Type arg, Type result);
Type make_tensor(Type left, Type right);
Type make_one(std::string mode);
Type make_plus(std::vector<Choice> choices, std::string mode);
Type make_with(std::vector<Choice> choices, std::string mode);
Type make_up(std::string outer_mode, Type body);
Type make_down(std::string outer_mode, Type body);
Type make_named(std::string name, std::string mode);

/// Binary sums and products use the labels pi1 and pi2.
Type make_binary_plus(Type left, Type right);
Type make_binary_with(Type left, Type right);

template <typename T>
const T* as(const Type& type) {
  return type ? std::get_if<T>(&type->node) : nullptr;
}

/// Syntactic equality; named references compare by name and mode.
bool type_equal(const Type& a, const Type& b);

/// Surface syntax. Atoms and units always carry their mode so the output
/// reparses without a default mode.
std::string to_string(const Type& type);

/// Choice lookup by label, or nullptr.
const Choice* find_choice(const std::vector<Choice>& choices, const std::string& label);

/// Number of type constructors, counting each atom, unit and named reference.
int type_size(const Type& type);

struct Binding {
  std::string chan;
  Type type;
};

/// Unordered; channel names are pairwise distinct.
using Context = std::vector<Binding>;

const Binding* find_binding(const Context& ctx, const std::string& chan);
Context without(const Context& ctx, const std::string& chan);
std::string to_string(const Context& ctx);

/// Same channel names with equal types, ignoring order.
bool context_equal(const Context& a, const Context& b);

/// Antecedents |- succedent. Variables label antecedents; the succedent is
/// anonymous.
struct Sequent {
  Context antecedents;
  Type succedent;
};

std::string to_string(const Sequent& sequent);

}  // namespace adj

#endif  // ADJOINT_TYPES_HPP_
