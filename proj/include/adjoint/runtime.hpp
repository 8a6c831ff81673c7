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

#ifndef ADJOINT_RUNTIME_HPP_
#define ADJOINT_RUNTIME_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adjoint/configuration.hpp"
#include "adjoint/diagnostics.hpp"
#include "adjoint/program.hpp"

namespace adj {

enum class StepRule {
  kId,
  kCut,
  kDrop,
  kCopy,
  kPlusC,
  kWithC,
  kTensorC,
  kLolliC,
  kOneC,
  kDownC,
  kUpC,
  kCall,
};

/// Trace names: id, cut, drop, copy, ⊕C, &C, ⊗C, ⊸C, 1C, ↓C, ↑C, call.
std::string rule_name(StepRule rule);

/// One way the configuration can step.
///   objects  id: provider, forwarder. Communication: the object offering
///            `channel`, then its client. Others: the single object.
///   channel  id: the forwarded channel; communication: the channel
///            communicated on.
///   split    copy: the aliases kept by the first copy.
struct Instance {
  StepRule rule = StepRule::kId;
  std::vector<std::uint64_t> objects;
  std::string channel;
  std::vector<std::string> split;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Lexicographic on objects, rule, channel, split.
bool instance_less(const Instance& a, const Instance& b);

struct TraceEvent {
  std::size_t step = 0;
  StepRule rule = StepRule::kId;
  std::vector<std::uint64_t> consumed;
  std::vector<std::uint64_t> produced;
  std::vector<std::string> channels;
};

/// {step, rule, consumed, produced, channels} on one line.
std::string to_json_line(const TraceEvent& event);

class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Instance> applicable_rules(const Program& program, const Configuration& config);

/// Rewrites the participating objects; every produced object gets a new id.
/// Throws StepError when the instance does not match the configuration.
Configuration step(const Program& program, const Configuration& config, const Instance& instance,
                   TraceEvent* event = nullptr);

/// Sends or receives on its own internal channel.
bool poised(const ProcObject& object);

/// Right-to-left peeling: repeatedly removes an object none of whose aliases
/// is used by a remaining object, typechecks it, and replaces its aliases in
/// the interface by the channels it uses. Empty result means well typed.
std::vector<Diagnostic> check_configuration(const Program& program, const Configuration& config,
                                            const Context& outputs);

/// Search over binary compositions of object subsets with memoization.
/// Exponential; intended for small configurations.
std::vector<Diagnostic> check_configuration_comp(const Program& program,
                                                 const Configuration& config, const Context& outputs);

struct Observation {
  bool observable = false;
  std::vector<std::uint64_t> order;  // peeled message objects, outermost first
  std::string reason;
};

/// Peels message objects from the interface inward. Requires a purely
/// positive interface; throws std::invalid_argument otherwise.
Observation observable(const Program& program, const Configuration& config, const Context& interface);

enum class Policy { kDemandDriven, kEagerStructural, kDeterministic };

std::string to_string(Policy policy);
std::optional<Policy> parse_policy(const std::string& text);

struct RunOptions {
  Policy policy = Policy::kDemandDriven;
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000;
  /// Cancellation (drop, and forwarders without clients) is not prioritized.
  bool lazy_drop = false;
};

enum class Verdict {
  kTerminatedPoised,
  kStuckOpen,
  kStepLimit,
  kStuckUnpoised,  // closed, stuck, and some object is not poised
};

std::string to_string(Verdict verdict);
int exit_code(Verdict verdict);

struct RunResult {
  Configuration final;
  std::vector<TraceEvent> trace;
  Verdict verdict = Verdict::kTerminatedPoised;
};

/// Called before each choice with the current state and its instances.
using StateObserver = std::function<void(const Configuration&, const std::vector<Instance>&)>;

/// The instances a policy may choose from, before the random or
/// deterministic pick.
std::vector<Instance> candidates(const Configuration& config, const std::vector<Instance>& all,
                                 const RunOptions& options);

RunResult run(const Program& program, Configuration config, const RunOptions& options,
              const StateObserver& observer = {});

/// proc({c0}, ., c, c <- main <-) with c0 the only output.
Configuration initial_configuration(const Program& program, const std::string& main,
                                    std::string* error = nullptr);

}  // namespace adj

#endif  // ADJOINT_RUNTIME_HPP_
