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

#ifndef ADJOINT_DIAGNOSTICS_HPP_
#define ADJOINT_DIAGNOSTICS_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace adj {

/// Byte offsets into a source file, with the 1-based line and column of
/// `start` cached at lex time.
struct SourceSpan {
  std::string file;
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 0;
  int col = 0;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  SourceSpan span;
};

Diagnostic error(std::string message, SourceSpan span = {});
Diagnostic warning(std::string message, SourceSpan span = {});

bool has_errors(const std::vector<Diagnostic>& diags);

/// `file:line:col: severity: message`. Missing positions print as 0.
std::string format(const Diagnostic& diag);

/// One JSON object with keys severity, message, file, line, col.
std::string to_json(const Diagnostic& diag);
std::string to_json(const std::vector<Diagnostic>& diags);

}  // namespace adj

#endif  // ADJOINT_DIAGNOSTICS_HPP_
