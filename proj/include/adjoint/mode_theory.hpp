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

#ifndef ADJOINT_MODE_THEORY_HPP_
#define ADJOINT_MODE_THEORY_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace adj {

/// Subset of {W, C}. Exchange is always available and not represented.
struct StructuralProps {
  bool weakening = false;
  bool contraction = false;

  bool contains(const StructuralProps& other) const {
    return (weakening || !other.weakening) && (contraction || !other.contraction);
  }
  friend bool operator==(const StructuralProps&, const StructuralProps&) = default;
};

std::string to_string(const StructuralProps& props);

struct ModeDecl {
  std::string name;
  StructuralProps props;
};

/// A declared generating pair `higher > lower` of the preorder.
struct OrderDecl {
  std::string higher;
  std::string lower;
};

/// Raised for malformed declarations: duplicate modes, undeclared modes in the
/// order, or queries about modes the theory does not know.
class ModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monotonicity failure: `higher >= lower` holds but sigma(higher) does not
/// contain sigma(lower).
struct ModeViolation {
  std::string higher;
  std::string lower;
  std::string message;
};

/// Modes, their structural properties, and the reflexive-transitive closure of
/// the declared order. Immutable once built.
class ModeTheory {
 public:
  ModeTheory() = default;

  /// Builds the closure of `order`. Throws ModeError on duplicate mode names
  /// or on order pairs that mention undeclared modes.
  static ModeTheory build(std::vector<ModeDecl> modes, std::vector<OrderDecl> order);

  /// Lists every closed pair (m, k) with m >= k and sigma(m) not a superset
  /// of sigma(k). Empty means the theory is valid.
  std::vector<ModeViolation> validate() const;

  bool has_mode(std::string_view name) const;
  const std::vector<ModeDecl>& modes() const { return modes_; }
  const std::vector<OrderDecl>& declared_order() const { return order_; }
  StructuralProps sigma(std::string_view mode) const;

  /// m >= k in the reflexive-transitive closure.
  bool geq(std::string_view m, std::string_view k) const;

  /// |S| ~ m: 0 needs W, 1 always, 2 or more needs C.
  bool multiplicity_ok(std::size_t n, std::string_view mode) const;

  /// The single-mode sub-theory containing only `mode`.
  ModeTheory restrict_to(std::string_view mode) const;

 private:
  std::size_t index_of(std::string_view name) const;

  std::vector<ModeDecl> modes_;
  std::vector<OrderDecl> order_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<bool>> closure_;
};

/// Declaration-of-independence check: every entry's mode is >= k.
/// `Entries` is any range of items exposing a mode via `mode_of`.
template <typename Range, typename ModeOf>
bool all_geq(const ModeTheory& theory, const Range& entries, std::string_view k,
             ModeOf mode_of) {
  for (const auto& entry : entries) {
    if (!theory.geq(mode_of(entry), k)) return false;
  }
  return true;
}

}  // namespace adj

#endif  // ADJOINT_MODE_THEORY_HPP_
