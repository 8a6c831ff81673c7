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
#include <map>
#include <set>

#include "adjoint/runtime.hpp"
#include "adjoint/typechecker.hpp"

namespace adj {
namespace {

std::string describe(const ProcObject& o) {
  std::string s = "object " + std::to_string(o.id) + " {";
  for (std::size_t i = 0; i < o.aliases.size(); ++i) s += (i ? ", " : "") + o.aliases[i];
  return s + "}";
}

// Typechecks the body against its used channels and checks |S| ~ m.
std::optional<std::string> check_object(const Program& program, const ProcObject& o, const Context& uses) {
  if (!o.type) return describe(o) + " has no type";
  const std::string& m = o.type->mode;
  if (!program.theory.multiplicity_ok(o.aliases.size(), m)) {
    return describe(o) + ": " + std::to_string(o.aliases.size()) + " clients are not allowed at mode " + m;
  }
  CheckResult r = check(program, TypingGoal{uses, o.body, o.internal, o.type});
  if (!r.ok()) {
    std::string why;
    for (const auto& d : r.diagnostics) {
      if (d.severity == Severity::kError) why = d.message;
    }
    return describe(o) + ": " + why;
  }
  return std::nullopt;
}

std::string context_key(const Context& ctx) {
  std::vector<std::string> parts;
  for (const auto& b : ctx) parts.push_back(b.chan + ":" + to_string(b.type));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

class CompOracle {
 public:
  CompOracle(const Program& program, const Configuration& config) : program_(program), config_(config) {}

  // Every Psi' with Psi |= (objects in mask) :: Psi'.
  const std::vector<Context>& outputs(std::uint32_t mask, const Context& in) {
    const std::string key = std::to_string(mask) + "|" + context_key(in);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Context> out;
    std::set<std::string> seen;
    auto add = [&](Context c) {
      if (seen.insert(context_key(c)).second) out.push_back(std::move(c));
    };
    if (mask == 0) {
      add(in);
    } else if ((mask & (mask - 1)) == 0) {
      std::size_t i = 0;
      while (!((mask >> i) & 1)) ++i;
      if (auto c = proc(config_.objects[i], in)) add(std::move(*c));
    } else {
      for (std::uint32_t left = (mask - 1) & mask; left != 0; left = (left - 1) & mask) {
        const std::vector<Context> mids = outputs(left, in);
        for (const auto& mid : mids) {
          for (const auto& c : outputs(mask & ~left, mid)) add(c);
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  // Psi Psi' |= proc(S, Psi', a, P) :: Psi (S : A).
  std::optional<Context> proc(const ProcObject& o, const Context& in) {
    Context used;
    for (const auto& u : o.uses) {
      const Binding* b = find_binding(in, u);
      if (!b) return std::nullopt;
      used.push_back(*b);
    }
    Context out;
    for (const auto& b : in) {
      if (!std::binary_search(o.uses.begin(), o.uses.end(), b.chan)) out.push_back(b);
    }
    for (const auto& a : o.aliases) {
      if (find_binding(out, a)) return std::nullopt;
      out.push_back({a, o.type});
    }
    const std::string key = std::to_string(o.id) + "|" + context_key(used);
    auto it = typed_.find(key);
    if (it == typed_.end()) it = typed_.emplace(key, !check_object(program_, o, used)).first;
    if (!it->second) return std::nullopt;
    return out;
  }

  const Program& program_;
  const Configuration& config_;
  std::map<std::string, std::vector<Context>> memo_;
  std::map<std::string, bool> typed_;
};

bool same_context(const Context& a, const Context& b) { return context_key(a) == context_key(b); }

}  // namespace

std::vector<Diagnostic> check_configuration(const Program& program, const Configuration& config,
                                            const Context& outputs) {
  if (auto bad = check_invariants(config)) return {error(*bad)};
  Context target = outputs;
  std::vector<const ProcObject*> remaining;
  for (const auto& o : config.objects) remaining.push_back(&o);

  while (!remaining.empty()) {
    auto peelable = [&](const ProcObject* o) {
      for (const auto& a : o->aliases) {
        const Binding* b = find_binding(target, a);
        if (!b || !type_equal(b->type, o->type)) return false;
        for (const ProcObject* other : remaining) {
          if (other != o && std::binary_search(other->uses.begin(), other->uses.end(), a)) return false;
        }
      }
      return true;
    };
    auto it = std::find_if(remaining.begin(), remaining.end(), peelable);
    if (it == remaining.end()) {
      std::string list;
      for (const ProcObject* o : remaining) list += (list.empty() ? "" : ", ") + describe(*o);
      return {error("no object can be typed last among " + list +
                    " (cyclic or dangling dependency, or interface mismatch)")};
    }
    const ProcObject& o = **it;
    remaining.erase(it);
    for (const auto& a : o.aliases) target = without(target, a);
    Context used;
    for (const auto& u : o.uses) {
      if (find_binding(target, u)) {
        return {error(describe(o) + " uses '" + u + "', which is already in the interface")};
      }
      Type t = config.channel_type(u);
      if (!t) return {error(describe(o) + " uses dangling channel '" + u + "'")};
      used.push_back({u, t});
    }
    if (auto bad = check_object(program, o, used)) return {error(*bad)};
    target.insert(target.end(), used.begin(), used.end());
  }
  if (!same_context(target, config.inputs)) {
    return {error("configuration expects " + to_string(target) + " but the inputs are " +
                  to_string(config.inputs))};
  }
  return {};
}

std::vector<Diagnostic> check_configuration_comp(const Program& program, const Configuration& config,
                                                 const Context& outputs) {
  if (auto bad = check_invariants(config)) return {error(*bad)};
  if (config.objects.size() > 20) return {error("configuration is too large for the composition search")};
  CompOracle oracle(program, config);
  const std::uint32_t all = (std::uint32_t{1} << config.objects.size()) - 1;
  for (const auto& c : oracle.outputs(all, config.inputs)) {
    if (same_context(c, outputs)) return {};
  }
  return {error("no composition of the objects provides " + to_string(outputs))};
}

}  // namespace adj
