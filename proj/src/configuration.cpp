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

#include "adjoint/configuration.hpp"

#include <algorithm>
#include <set>

namespace adj {

const ProcObject* Configuration::find(std::uint64_t id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const ProcObject* Configuration::provider_of(const std::string& alias) const {
  for (const auto& o : objects) {
    if (std::binary_search(o.aliases.begin(), o.aliases.end(), alias)) return &o;
  }
  return nullptr;
}

Type Configuration::channel_type(const std::string& chan) const {
  if (const ProcObject* p = provider_of(chan)) return p->type;
  if (const Binding* b = find_binding(inputs, chan)) return b->type;
  return nullptr;
}

ProcObject Configuration::make_object(std::vector<std::string> aliases, std::string internal,
                                      Proc body, Type type) {
  ProcObject obj;
  obj.id = next_id++;
  std::sort(aliases.begin(), aliases.end());
  obj.aliases = std::move(aliases);
  std::set<std::string> used = free_channels(body);
  used.erase(internal);
  obj.uses.assign(used.begin(), used.end());
  obj.internal = std::move(internal);
  obj.body = std::move(body);
  obj.type = std::move(type);
  names.reserve_all(obj.aliases);
  names.reserve(obj.internal);
  return obj;
}

void Configuration::reserve_names() {
  for (const auto& b : inputs) names.reserve(b.chan);
  for (const auto& o : objects) {
    names.reserve_all(o.aliases);
    names.reserve(o.internal);
    names.reserve_all(all_names(o.body));
  }
}

Context output_interface(const Configuration& config) {
  std::set<std::string> consumed;
  for (const auto& o : config.objects) consumed.insert(o.uses.begin(), o.uses.end());
  Context out;
  for (const auto& b : config.inputs) {
    if (!consumed.count(b.chan)) out.push_back(b);
  }
  for (const auto& o : config.objects) {
    for (const auto& a : o.aliases) {
      if (!consumed.count(a)) out.push_back({a, o.type});
    }
  }
  return out;
}

std::optional<std::string> check_invariants(const Configuration& config) {
  std::set<std::string> provided;
  for (const auto& b : config.inputs) {
    if (!provided.insert(b.chan).second) return "input '" + b.chan + "' declared twice";
  }
  std::set<std::uint64_t> ids;
  for (const auto& o : config.objects) {
    if (!ids.insert(o.id).second) return "duplicate object id " + std::to_string(o.id);
    for (const auto& a : o.aliases) {
      if (!provided.insert(a).second) {
        return "channel '" + a + "' is provided by more than one object or input";
      }
    }
    std::set<std::string> used = free_channels(o.body);
    used.erase(o.internal);
    if (!std::equal(used.begin(), used.end(), o.uses.begin(), o.uses.end())) {
      return "object " + std::to_string(o.id) + " lists used channels that differ from its body";
    }
  }
  return std::nullopt;
}

}  // namespace adj
