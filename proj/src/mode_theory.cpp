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

#include "adjoint/mode_theory.hpp"

namespace adj {

std::string to_string(const StructuralProps& props) {
  std::string out = "{";
  if (props.weakening) out += "W";
  if (props.contraction) out += props.weakening ? ",C" : "C";
  out += "}";
  return out;
}

ModeTheory ModeTheory::build(std::vector<ModeDecl> modes, std::vector<OrderDecl> order) {
  ModeTheory theory;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    auto [it, inserted] = theory.index_.emplace(modes[i].name, i);
    if (!inserted) throw ModeError("duplicate mode '" + modes[i].name + "'");
  }
  for (const auto& pair : order) {
    for (const auto* name : {&pair.higher, &pair.lower}) {
      if (!theory.index_.count(*name)) {
        throw ModeError("order mentions undeclared mode '" + *name + "'");
      }
    }
  }
  const std::size_t n = modes.size();
  theory.closure_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) theory.closure_[i][i] = true;
  for (const auto& pair : order) {
    theory.closure_[theory.index_.at(pair.higher)][theory.index_.at(pair.lower)] = true;
  }
  // Warshall.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!theory.closure_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (theory.closure_[k][j]) theory.closure_[i][j] = true;
      }
    }
  }
  theory.modes_ = std::move(modes);
  theory.order_ = std::move(order);
  return theory;
}

std::vector<ModeViolation> ModeTheory::validate() const {
  std::vector<ModeViolation> out;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    for (std::size_t j = 0; j < modes_.size(); ++j) {
      if (i == j || !closure_[i][j]) continue;
      const auto& hi = modes_[i];
      const auto& lo = modes_[j];
      if (!hi.props.contains(lo.props)) {
        out.push_back({hi.name, lo.name,
                       hi.name + " >= " + lo.name + " but sigma(" + hi.name +
                           ")=" + to_string(hi.props) + " does not contain sigma(" +
                           lo.name + ")=" + to_string(lo.props)});
      }
    }
  }
  return out;
}

bool ModeTheory::has_mode(std::string_view name) const {
  return index_.count(std::string(name)) != 0;
}

std::size_t ModeTheory::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw ModeError("undeclared mode '" + std::string(name) + "'");
  return it->second;
}

StructuralProps ModeTheory::sigma(std::string_view mode) const {
  return modes_[index_of(mode)].props;
}

bool ModeTheory::geq(std::string_view m, std::string_view k) const {
  return closure_[index_of(m)][index_of(k)];
}

bool ModeTheory::multiplicity_ok(std::size_t n, std::string_view mode) const {
  const StructuralProps props = sigma(mode);
  if (n == 0) return props.weakening;
  if (n == 1) return true;
  return props.contraction;
}

ModeTheory ModeTheory::restrict_to(std::string_view mode) const {
  return build({modes_[index_of(mode)]}, {});
}

}  // namespace adj
