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

#ifndef ADJOINT_LOGIC_HPP_
#define ADJOINT_LOGIC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adjoint/mode_theory.hpp"
#include "adjoint/types.hpp"

namespace adj {

// Named types are opaque atoms throughout the logic kernel.

enum class Rule {
  kId,
  kCut,  // multicut: removes |vars| >= 0 copies of cut_type
  kWeaken,
  kContract,
  kPlusR,
  kPlusL,
  kWithR,
  kWithL,
  kTensorR,
  kTensorL,
  kOneR,
  kOneL,
  kLolliR,
  kLolliL,
  kUpR,
  kUpL,
  kDownR,
  kDownL,
  // Zero-premise forms of the noninvertible rules.
  kPlusR0,
  kWithL0,
  kTensorR0,
  kLolliL0,
  kUpL0,
  kDownR0,
};

std::string rule_name(Rule rule);

enum class Calculus {
  kStandard,  // id, multicut, weaken, contract and the two-sided rules
  kAxioms,    // id, multicut, invertible rules, 1R and the zero-premise forms
};

bool rule_in(Rule rule, Calculus calculus);

/// A proof tree. Field use by rule:
///   principal  the antecedent decomposed by a left rule, weaken or contract;
///              the implication in LolliL0
///   vars       PlusL: one new variable per choice; WithL, TensorL (two),
///              LolliR, LolliL, UpL, DownL, Contract (two): new variables;
///              Cut: the removed copies; PlusR0, DownR0, LolliL0: the
///              argument; TensorR0: the two components
///   label      PlusR, WithL, PlusR0, WithL0
///   cut_type   Cut
/// Premises of PlusL and WithR follow the order of the choices.
struct Proof {
  Rule rule = Rule::kId;
  Sequent conclusion;
  std::vector<Proof> premises;
  std::string principal;
  std::vector<std::string> vars;
  std::string label;
  Type cut_type;
};

struct ProofError {
  std::vector<std::size_t> path;  // premise indices from the root
  Rule rule = Rule::kId;
  std::string message;
};

std::string to_string(const ProofError& error);

/// Checks every node against its schema and side conditions, including the
/// presupposition that each antecedent's mode is >= the succedent's.
std::optional<ProofError> check_proof(const ModeTheory& theory, const Proof& proof,
                                      Calculus calculus = Calculus::kStandard);

bool cut_free(const Proof& proof);
std::size_t proof_size(const Proof& proof);
/// True when every id node concludes an atom or a named type.
bool atomic_identities(const Proof& proof);

/// Indented rule tree, one node per line.
std::string print_proof(const Proof& proof);

struct SearchResult {
  std::optional<Proof> proof;
  std::uint64_t nodes = 0;  // goals visited
};

/// Bounded backward search for a cut-free standard proof. `depth` bounds the
/// number of rule applications on any branch. Weaken and contract are tried
/// wherever the mode allows; a branch fails when a sequent repeats on it up to
/// variable names. Without a proof, the search space within the bound was
/// exhausted.
SearchResult prove_cutfree(const ModeTheory& theory, const Sequent& goal, int depth);

/// Same conclusion, identities only at atoms; cut-free input stays cut-free.
Proof identity_expand(const ModeTheory& theory, const Proof& proof);

/// Replaces each zero-premise axiom by its standard rule over identities.
Proof axioms_to_standard(const Proof& proof);

/// Replaces each noninvertible standard rule by a cut against its axiom, and
/// weaken and contract by multicuts with an identity.
Proof standard_to_axioms(const Proof& proof);

struct ConservativityReport {
  bool full_provable = false;
  bool single_provable = false;
  bool agree() const { return full_provable == single_provable; }
};

/// Searches under the full theory and under the single mode `mode`. The
/// sequent must mention only `mode` and no shifts.
ConservativityReport conservativity_probe(const ModeTheory& theory, const Sequent& goal,
                                          const std::string& mode, int depth);

}  // namespace adj

#endif  // ADJOINT_LOGIC_HPP_
