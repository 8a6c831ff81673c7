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

// Random mode theories, types, proofs, processes and configurations for the
// property tests. Proofs are built forward from a pool, one rule at a time,
// so every generated proof is valid by construction and independent of the
// checkers under test.

#ifndef ADJOINT_TESTS_GENERATORS_HPP_
#define ADJOINT_TESTS_GENERATORS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adjoint/configuration.hpp"
#include "adjoint/logic.hpp"
#include "adjoint/program.hpp"

namespace adj::testing {

using Rng = std::mt19937_64;

/// Modes m0..m{n-1} with a random order and structural properties closed
/// upward, so the theory validates.
ModeTheory random_theory(Rng& rng, std::size_t n_modes);

/// A program with the given theory and no definitions.
Program bare_program(const ModeTheory& theory);

std::string random_mode(Rng& rng, const ModeTheory& theory);

struct TypeOptions {
  int depth = 2;
  bool atoms = true;
  bool shifts = true;
  bool positive_only = false;
};

Type random_type(Rng& rng, const ModeTheory& theory, const std::string& mode, const TypeOptions& options);

struct ProofOptions {
  std::size_t pool_steps = 60;
  std::size_t max_size = 40;
  std::size_t max_context = 4;
  bool atoms = true;
};

/// Forward-generated standard-calculus proofs: a pool seeded with identities
/// and units and grown by random rule applications.
class ProofPool {
 public:
  ProofPool(Rng& rng, const ModeTheory& theory, ProofOptions options = {});

  /// Applies up to `pool_steps` random rules.
  void grow();

  const std::vector<Proof>& proofs() const { return pool_; }
  std::vector<Proof> closed() const;

 private:
  std::optional<Proof> apply(int rule);
  const Proof& pick();
  Proof renamed_apart(const Proof& p);
  std::string fresh();
  bool ctx_geq(const Context& ctx, const std::string& m) const;
  std::vector<std::string> modes_between(const std::string& hi, const std::string& lo) const;

  Rng& rng_;
  const ModeTheory& theory_;
  ProofOptions options_;
  std::vector<Proof> pool_;
  std::uint64_t counter_ = 0;
};

/// A random closed proof of `type` built from right rules only, using
/// weakening for implications whose argument cannot be consumed otherwise.
/// Fails on atoms and on uninhabited shapes.
std::optional<Proof> inhabit(Rng& rng, const ModeTheory& theory, const Type& type);

/// Cuts a closed provider into every antecedent of `proof`.
std::optional<Proof> close_proof(Rng& rng, const ModeTheory& theory, const Proof& proof);

/// Renames every channel of `p` consistently through `rename`.
Proof rename_proof(const Proof& p, const std::function<std::string(const std::string&)>& rename);

/// One random proof of reasonable size, or nullopt if the pool produced none.
std::optional<Proof> random_proof(Rng& rng, const ModeTheory& theory, const ProofOptions& options = {});

/// A process for the proof: its antecedents are the used channels and
/// `offer` is the provided one.
Proc extract_process(const Proof& proof, const std::string& offer, NameSupply& names);

/// proc({c0}, antecedents, x, P) with the antecedents as inputs.
Configuration configuration_from_proof(const Proof& proof);

/// A random sequent over a single mode with total type size <= max_size.
Sequent random_single_mode_sequent(Rng& rng, const ModeTheory& theory, const std::string& mode,
                                   std::size_t max_size);

/// Generates well-typed configurations by running a random process from a
/// configuration_from_proof start for a random number of steps.
struct ConfigSample {
  Configuration config;
  Context outputs;
};
std::vector<ConfigSample> reachable_configurations(Rng& rng, const Program& program, const Configuration& start,
                                                   std::size_t max_objects, std::size_t max_steps);

/// Ill-typed variants: retyped objects, dropped objects, extra or missing
/// aliases, renamed uses, swapped interfaces.
std::vector<ConfigSample> mutants(Rng& rng, const Program& program, const ConfigSample& sample);

}  // namespace adj::testing

#endif  // ADJOINT_TESTS_GENERATORS_HPP_
