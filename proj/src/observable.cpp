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
#include <stdexcept>

#include "adjoint/runtime.hpp"

namespace adj {
namespace {

// The channels carried by a message object on `c : type`, with their types,
// or nullopt when the object is not a message matching the type.
std::optional<Context> carried(const Program& program, const ProcObject& o, const Type& type) {
  const Type t = expose(program, type);
  const std::string& x = o.internal;
  if (const auto* s = as<SendUnit>(o.body); s && s->chan == x && as<OneType>(t)) {
    if (!o.uses.empty()) return std::nullopt;
    return Context{};
  }
  if (const auto* s = as<SendLabel>(o.body); s && s->chan == x) {
    const auto* plus = as<PlusType>(t);
    if (!plus || o.uses != std::vector<std::string>{s->cont}) return std::nullopt;
    const Choice* ch = find_choice(plus->choices, s->label);
    if (!ch) return std::nullopt;
    return Context{{s->cont, ch->type}};
  }
  if (const auto* s = as<SendShift>(o.body); s && s->chan == x) {
    const auto* down = as<DownType>(t);
    if (!down || o.uses != std::vector<std::string>{s->cont}) return std::nullopt;
    return Context{{s->cont, down->body}};
  }
  if (const auto* s = as<SendPair>(o.body); s && s->chan == x) {
    const auto* tensor = as<TensorType>(t);
    if (!tensor || s->first == s->second) return std::nullopt;
    std::vector<std::string> expected{s->first, s->second};
    std::sort(expected.begin(), expected.end());
    if (o.uses != expected) return std::nullopt;
    return Context{{s->first, tensor->left}, {s->second, tensor->right}};
  }
  return std::nullopt;
}

}  // namespace

Observation observable(const Program& program, const Configuration& config, const Context& interface) {
  for (const auto& b : interface) {
    if (!purely_positive(program, b.type)) {
      throw std::invalid_argument("interface channel '" + b.chan + "' has type " + to_string(b.type) +
                                  ", which is not purely positive");
    }
  }
  Observation out;
  Context target = interface;
  std::vector<const ProcObject*> remaining;
  for (const auto& o : config.objects) remaining.push_back(&o);

  while (!target.empty()) {
    const Binding goal = target.front();
    target.erase(target.begin());
    auto it = std::find_if(remaining.begin(), remaining.end(), [&](const ProcObject* o) {
      return o->aliases == std::vector<std::string>{goal.chan};
    });
    if (it == remaining.end()) {
      out.reason = "no single-client message object provides '" + goal.chan + "'";
      return out;
    }
    const std::optional<Context> next = carried(program, **it, goal.type);
    if (!next) {
      out.reason = "object " + std::to_string((*it)->id) + " is not a message of type " + to_string(goal.type);
      return out;
    }
    for (const auto& b : *next) {
      if (find_binding(target, b.chan)) {
        out.reason = "channel '" + b.chan + "' is carried twice";
        return out;
      }
      target.push_back(b);
    }
    out.order.push_back((*it)->id);
    remaining.erase(it);
  }
  if (!remaining.empty()) {
    out.order.clear();
    out.reason = "object " + std::to_string(remaining.front()->id) + " is not reachable from the interface";
    return out;
  }
  out.observable = true;
  return out;
}

}  // namespace adj
