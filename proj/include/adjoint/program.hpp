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

#ifndef ADJOINT_PROGRAM_HPP_
#define ADJOINT_PROGRAM_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adjoint/diagnostics.hpp"
#include "adjoint/mode_theory.hpp"
#include "adjoint/process.hpp"
#include "adjoint/types.hpp"

namespace adj {

struct TypeDef {
  std::string name;
  std::string mode;
  Type body;
  SourceSpan span;
};

/// `result.chan <- name <- params` with signature params |- result.
struct ProcDef {
  std::string name;
  Context params;
  Binding result;
  Proc body;
  SourceSpan span;
};

struct Program {
  ModeTheory theory;
  std::vector<TypeDef> types;
  std::vector<ProcDef> procs;

  const TypeDef* find_type(const std::string& name) const;
  const ProcDef* find_proc(const std::string& name) const;
};

class UnboundName : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One-level unfolding of a named reference. Throws UnboundName.
Type unfold(const Program& program, const Type& named);

/// Unfolds named references until the head is a connective. Requires
/// contractive definitions.
Type expose(const Program& program, const Type& type);

/// Checks connective modes, shift directions, nonempty and duplicate-free
/// label sets, and bound names. Named references are checked against their
/// definition's mode without descending into the body.
std::optional<std::string> type_wellformed(const Program& program, const Type& type);

/// Only plus, tensor, one and down, looking through named references.
bool purely_positive(const Program& program, const Type& type);

/// Definition-level checks: the mode theory validates, every type definition
/// is well formed and contractive, and every process signature respects the
/// declaration of independence.
std::vector<Diagnostic> check_declarations(const Program& program);

/// Every antecedent's mode is >= k.
bool context_geq(const ModeTheory& theory, const Context& ctx, const std::string& k);

}  // namespace adj

#endif  // ADJOINT_PROGRAM_HPP_
