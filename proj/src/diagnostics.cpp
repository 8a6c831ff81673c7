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

#include "adjoint/diagnostics.hpp"

#include <algorithm>

#include "json.hpp"

namespace adj {
namespace {

const char* severity_name(Severity s) { return s == Severity::kError ? "error" : "warning"; }

nlohmann::ordered_json as_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = severity_name(d.severity);
  j["message"] = d.message;
  j["file"] = d.span.file;
  j["line"] = d.span.line;
  j["col"] = d.span.col;
  return j;
}

}  // namespace

Diagnostic error(std::string message, SourceSpan span) {
  return {Severity::kError, std::move(message), std::move(span)};
}

Diagnostic warning(std::string message, SourceSpan span) {
  return {Severity::kWarning, std::move(message), std::move(span)};
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

std::string format(const Diagnostic& d) {
  const std::string file = d.span.file.empty() ? "<input>" : d.span.file;
  return file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + ": " +
         severity_name(d.severity) + ": " + d.message;
}

std::string to_json(const Diagnostic& d) { return as_json(d).dump(); }

std::string to_json(const std::vector<Diagnostic>& diags) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : diags) arr.push_back(as_json(d));
  return arr.dump();
}

}  // namespace adj
