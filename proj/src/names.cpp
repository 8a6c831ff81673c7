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

#include "adjoint/names.hpp"

#include <cctype>

namespace adj {

std::string name_stem(const std::string& name) {
  const auto pos = name.rfind('_');
  if (pos == std::string::npos || pos == 0 || pos + 1 == name.size()) return name;
  for (std::size_t i = pos + 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  }
  return name.substr(0, pos);
}

std::string NameSupply::fresh(const std::string& base) {
  const std::string stem = name_stem(base.empty() ? std::string("ch") : base);
  std::string candidate;
  do {
    candidate = stem + "_" + std::to_string(++counter_);
  } while (used_.count(candidate));
  used_.insert(candidate);
  return candidate;
}

}  // namespace adj
