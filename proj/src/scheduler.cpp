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

#include <algorithm>
#include <random>

#include <json.hpp>

#include "adjoint/runtime.hpp"

namespace adj {
namespace {

bool is_cancellation(const Configuration& config, const Instance& inst) {
  if (inst.rule == StepRule::kDrop) return true;
  if (inst.rule == StepRule::kId) return config.find(inst.objects[1])->aliases.empty();
  return false;
}

bool is_structural(const Instance& inst) {
  return inst.rule == StepRule::kDrop || inst.rule == StepRule::kCopy;
}

// Copies that split off a single client whose process is blocked on it.
std::vector<Instance> demanded_copies(const Configuration& config) {
  std::vector<Instance> out;
  for (const auto& o : config.objects) {
    if (o.aliases.size() < 2 || as<Fwd>(o.body) || !poised(o)) continue;
    for (const auto& client : config.objects) {
      const auto head = head_channel(client.body);
      if (!head || !std::binary_search(o.aliases.begin(), o.aliases.end(), *head)) continue;
      std::vector<std::string> split;
      if (*head == o.aliases[0]) {
        split = {*head};
      } else {
        for (const auto& a : o.aliases) {
          if (a != *head) split.push_back(a);
        }
      }
      Instance inst{StepRule::kCopy, {o.id}, {}, std::move(split)};
      if (std::find(out.begin(), out.end(), inst) == out.end()) out.push_back(std::move(inst));
    }
  }
  return out;
}

template <typename Pred>
std::vector<Instance> filter(const std::vector<Instance>& all, Pred pred) {
  std::vector<Instance> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), pred);
  return out;
}

}  // namespace

std::string to_string(Policy policy) {
  switch (policy) {
    case Policy::kDemandDriven: return "demand-driven";
    case Policy::kEagerStructural: return "eager-structural";
    case Policy::kDeterministic: return "deterministic";
  }
  return "?";
}

std::optional<Policy> parse_policy(const std::string& text) {
  for (Policy p : {Policy::kDemandDriven, Policy::kEagerStructural, Policy::kDeterministic}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kTerminatedPoised: return "terminated-poised";
    case Verdict::kStuckOpen: return "stuck-open";
    case Verdict::kStepLimit: return "step-limit";
    case Verdict::kStuckUnpoised: return "stuck-unpoised";
  }
  return "?";
}

int exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::kTerminatedPoised: return 0;
    case Verdict::kStuckOpen: return 2;
    case Verdict::kStepLimit: return 3;
    case Verdict::kStuckUnpoised: return 1;
  }
  return 1;
}

std::string to_json_line(const TraceEvent& event) {
  nlohmann::ordered_json j;
  j["step"] = event.step;
  j["rule"] = rule_name(event.rule);
  j["consumed"] = event.consumed;
  j["produced"] = event.produced;
  j["channels"] = event.channels;
  return j.dump();
}

std::vector<Instance> candidates(const Configuration& config, const std::vector<Instance>& all,
                                 const RunOptions& options) {
  if (all.empty()) return all;
  if (options.policy == Policy::kEagerStructural) {
    auto structural = filter(all, is_structural);
    return structural.empty() ? all : structural;
  }
  if (!options.lazy_drop) {
    auto cancel = filter(all, [&](const Instance& i) { return is_cancellation(config, i); });
    if (!cancel.empty()) return cancel;
  }
  auto out = filter(all, [](const Instance& i) { return i.rule != StepRule::kCopy; });
  for (auto& c : demanded_copies(config)) {
    if (std::find(all.begin(), all.end(), c) != all.end()) out.push_back(std::move(c));
  }
  if (out.empty()) return all;
  std::sort(out.begin(), out.end(), instance_less);
  return out;
}

RunResult run(const Program& program, Configuration config, const RunOptions& options,
              const StateObserver& observer) {
  RunResult result;
  std::mt19937_64 rng(options.seed);
  for (std::size_t n = 0;; ++n) {
    const std::vector<Instance> all = applicable_rules(program, config);
    if (observer) observer(config, all);
    if (all.empty()) {
      if (!config.inputs.empty()) {
        result.verdict = Verdict::kStuckOpen;
      } else {
        const bool all_poised = std::all_of(config.objects.begin(), config.objects.end(),
                                            [](const ProcObject& o) { return poised(o); });
        result.verdict = all_poised ? Verdict::kTerminatedPoised : Verdict::kStuckUnpoised;
      }
      break;
    }
    if (n >= options.max_steps) {
      result.verdict = Verdict::kStepLimit;
      break;
    }
    const std::vector<Instance> pool = candidates(config, all, options);
    std::size_t pick = 0;
    if (options.policy != Policy::kDeterministic && pool.size() > 1) {
      pick = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
    }
    TraceEvent event;
    event.step = n + 1;
    config = step(program, config, pool[pick], &event);
    result.trace.push_back(std::move(event));
  }
  result.final = std::move(config);
  return result;
}

}  // namespace adj
