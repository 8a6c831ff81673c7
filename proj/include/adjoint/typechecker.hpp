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

#ifndef ADJOINT_TYPECHECKER_HPP_
#define ADJOINT_TYPECHECKER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "adjoint/diagnostics.hpp"
#include "adjoint/logic.hpp"
#include "adjoint/process.hpp"
#include "adjoint/program.hpp"
#include "adjoint/types.hpp"

namespace adj {

enum class TypingRule {
  kId,
  kCut,
  kPlusR0,
  kPlusL,
  kWithR,
  kWithL0,
  kTensorR0,
  kTensorL,
  kOneR,
  kOneL,
  kLolliR,
  kLolliL0,
  kUpR,
  kUpL0,
  kDownR0,
  kDownL,
  kCall,
};

std::string rule_name(TypingRule rule);

/// context |- process :: (chan : type)
struct TypingGoal {
  Context context;
  Proc process;
  std::string chan;
  Type type;
};

struct TypingDerivation {
  TypingRule rule = TypingRule::kId;
  TypingGoal goal;
  std::vector<TypingDerivation> premises;  // case branches in source order
  Type cut_type;                           // kCut
};

struct CheckResult {
  std::optional<TypingDerivation> derivation;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return derivation.has_value(); }
};

/// Syntax-directed checking with exact context use. Named types are unfolded
/// only to expose a head connective; equality of types is syntactic.
CheckResult check(const Program& program, const TypingGoal& goal);

struct DefinitionResult {
  std::string name;
  CheckResult result;
};

/// Checks every definition against its signature; calls use signatures only.
std::vector<DefinitionResult> check_program(const Program& program);

/// Declaration checks followed by every definition; all diagnostics.
std::vector<Diagnostic> check_all(const Program& program);

/// Re-checks each node of a derivation against its rule schema without
/// consulting the checker. Returns the first violation.
std::optional<std::string> validate_derivation(const Program& program,
                                               const TypingDerivation& derivation);

/// Drops process terms, giving a proof in the zero-premise calculus. Empty
/// for derivations that contain calls or named types.
std::optional<Proof> erase(const TypingDerivation& derivation);

}  // namespace adj

#endif  // ADJOINT_TYPECHECKER_HPP_
