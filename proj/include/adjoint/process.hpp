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

#ifndef ADJOINT_PROCESS_HPP_
#define ADJOINT_PROCESS_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "adjoint/diagnostics.hpp"
#include "adjoint/names.hpp"
#include "adjoint/types.hpp"

namespace adj {

struct ProcNode;
using Proc = std::shared_ptr<const ProcNode>;

/// dst <- src
struct Fwd {
  std::string dst;
  std::string src;
};
/// {aliases} <- (nu internal [: annotation]) body ; cont
struct Spawn {
  std::vector<std::string> aliases;
  std::string internal;
  Type annotation;  // may be null
  Proc body;
  Proc cont;
};
/// chan.label(cont)
struct SendLabel {
  std::string chan;
  std::string label;
  std::string cont;
};
struct Branch {
  std::string label;
  std::string var;
  Proc body;
};
struct CaseLabel {
  std::string chan;
  std::vector<Branch> branches;
};
/// chan.<first, second>
struct SendPair {
  std::string chan;
  std::string first;
  std::string second;
};
struct CasePair {
  std::string chan;
  std::string first;
  std::string second;
  Proc body;
};
struct SendUnit {
  std::string chan;
};
struct CaseUnit {
  std::string chan;
  Proc body;
};
struct SendShift {
  std::string chan;
  std::string cont;
};
struct CaseShift {
  std::string chan;
  std::string var;
  Proc body;
};
/// result <- name <- args
struct Call {
  std::string name;
  std::vector<std::string> args;
  std::string result;
};

struct ProcNode {
  std::variant<Fwd, Spawn, SendLabel, CaseLabel, SendPair, CasePair, SendUnit, CaseUnit,
               SendShift, CaseShift, Call>
      node;
  SourceSpan span;
};

template <typename T>
const T* as(const Proc& p) {
  return p ? std::get_if<T>(&p->node) : nullptr;
}

template <typename T>
Proc make_proc(T node, SourceSpan span = {}) {
  return std::make_shared<const ProcNode>(ProcNode{std::move(node), std::move(span)});
}

std::set<std::string> free_channels(const Proc& p);

/// Every channel name occurring in `p`, free or bound.
std::set<std::string> all_names(const Proc& p);

/// The channel the head action communicates on. Forwards, spawns and calls
/// have none.
std::optional<std::string> head_channel(const Proc& p);

/// Capture-avoiding simultaneous renaming of free names. Binders that would
/// capture a substituted name are renamed using `names`.
Proc substitute(const Proc& p, const std::map<std::string, std::string>& renaming,
                NameSupply& names);

/// Renames every binder in `p` to a fresh name.
Proc freshen(const Proc& p, NameSupply& names);

bool alpha_equivalent(const Proc& a, const Proc& b);

}  // namespace adj

#endif  // ADJOINT_PROCESS_HPP_
