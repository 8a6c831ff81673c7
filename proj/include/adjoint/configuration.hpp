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

#ifndef ADJOINT_CONFIGURATION_HPP_
#define ADJOINT_CONFIGURATION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adjoint/names.hpp"
#include "adjoint/process.hpp"
#include "adjoint/types.hpp"

namespace adj {

/// A running process: offers `internal` to clients under `aliases`, uses the
/// channels in `uses`, and executes `body`. `type` is the offered session type.
struct ProcObject {
  std::uint64_t id = 0;
  std::vector<std::string> aliases;  // sorted
  std::vector<std::string> uses;     // sorted, equals free(body) minus internal
  std::string internal;
  Proc body;
  Type type;
};

struct Configuration {
  std::vector<ProcObject> objects;
  /// Channels provided from outside; empty for closed configurations.
  Context inputs;
  std::uint64_t next_id = 1;
  NameSupply names;

  const ProcObject* find(std::uint64_t id) const;
  /// The object listing `alias` among its aliases.
  const ProcObject* provider_of(const std::string& alias) const;
  /// Type of a channel from its provider's annotation or the input interface.
  Type channel_type(const std::string& chan) const;

  /// Assigns a fresh id, sorts aliases and derives `uses` from the body.
  ProcObject make_object(std::vector<std::string> aliases, std::string internal, Proc body,
                         Type type);
  /// Reserves every name in the configuration with the name supply.
  void reserve_names();
};

/// Channels provided but not used by any object, paired with their types.
/// Inputs no object touches pass straight through and are included.
Context output_interface(const Configuration& config);

/// Object structural invariants: alias disjointness, `uses` equal to the
/// free channels of the body minus the internal name, no alias shadowing an
/// input. Returns the first violation.
std::optional<std::string> check_invariants(const Configuration& config);

}  // namespace adj

#endif  // ADJOINT_CONFIGURATION_HPP_
