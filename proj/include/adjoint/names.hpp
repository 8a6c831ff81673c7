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

#ifndef ADJOINT_NAMES_HPP_
#define ADJOINT_NAMES_HPP_

#include <cstdint>
#include <set>
#include <string>

namespace adj {

/// Generates channel names that never collide with any name it has seen.
/// The counter only grows, so two supplies fed the same history agree.
class NameSupply {
 public:
  void reserve(const std::string& name) { used_.insert(name); }
  template <typename Range>
  void reserve_all(const Range& names) {
    for (const auto& n : names) used_.insert(n);
  }
  bool used(const std::string& name) const { return used_.count(name) != 0; }

  /// `base` with any trailing `_N` suffix replaced by a fresh counter value.
  std::string fresh(const std::string& base);

  std::uint64_t counter() const { return counter_; }

 private:
  std::set<std::string> used_;
  std::uint64_t counter_ = 0;
};

/// Strips a trailing `_<digits>` suffix.
std::string name_stem(const std::string& name);

}  // namespace adj

#endif  // ADJOINT_NAMES_HPP_
