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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adjoint/frontend.hpp"
#include "adjoint/logic.hpp"
#include "adjoint/runtime.hpp"
#include "adjoint/typechecker.hpp"

namespace py = pybind11;

namespace {

constexpr const char* kDefaultTheory = "mode U with W, C ; mode L ; order U > L ;";

py::dict to_dict(const adj::Diagnostic& d) {
  py::dict out;
  out["severity"] = d.severity == adj::Severity::kError ? "error" : "warning";
  out["message"] = d.message;
  out["file"] = d.span.file;
  out["line"] = d.span.line;
  out["col"] = d.span.col;
  return out;
}

[[noreturn]] void raise(const std::vector<adj::Diagnostic>& diags) {
  std::string text;
  for (const auto& d : diags) text += (text.empty() ? "" : "\n") + adj::format(d);
  throw py::value_error(text);
}

adj::Program parse_or_raise(const std::string& source, const std::string& file) {
  auto parsed = adj::parse_program(source, file);
  if (!parsed.ok()) raise(parsed.diagnostics);
  return std::move(*parsed.value);
}

py::list check(const std::string& source, const std::string& file) {
  py::list out;
  auto parsed = adj::parse_program(source, file);
  for (const auto& d : parsed.diagnostics) out.append(to_dict(d));
  if (!parsed.ok()) return out;
  for (const auto& d : adj::check_all(*parsed.value)) out.append(to_dict(d));
  return out;
}

py::dict run(const std::string& source, const std::optional<std::string>& config, const std::string& main,
             std::uint64_t seed, const std::string& policy, std::size_t max_steps, bool lazy_drop) {
  const adj::Program program = parse_or_raise(source, "<program>");
  auto errors = adj::check_all(program);
  if (adj::has_errors(errors)) raise(errors);

  adj::Configuration start;
  if (config) {
    auto parsed = adj::parse_config(*config, program, "<config>");
    if (!parsed.ok()) raise(parsed.diagnostics);
    start = std::move(*parsed.value);
  } else {
    std::string why;
    start = adj::initial_configuration(program, main, &why);
    if (!why.empty()) throw py::value_error(why);
  }
  const adj::Context interface = adj::output_interface(start);
  auto ill = adj::check_configuration(program, start, interface);
  if (!ill.empty()) raise(ill);

  adj::RunOptions options;
  const auto p = adj::parse_policy(policy);
  if (!p) throw py::value_error("unknown policy '" + policy + "'");
  options.policy = *p;
  options.seed = seed;
  options.max_steps = max_steps;
  options.lazy_drop = lazy_drop;

  adj::RunResult result;
  {
    py::gil_scoped_release release;
    result = adj::run(program, std::move(start), options);
  }

  py::list trace;
  for (const auto& e : result.trace) trace.append(adj::to_json_line(e));
  py::dict out;
  out["verdict"] = adj::to_string(result.verdict);
  out["exit_code"] = adj::exit_code(result.verdict);
  out["steps"] = result.trace.size();
  out["trace"] = trace;
  out["final"] = adj::print_config(result.final);
  bool positive = true;
  for (const auto& b : interface) positive = positive && adj::purely_positive(program, b.type);
  if (positive && result.verdict == adj::Verdict::kTerminatedPoised) {
    out["observable"] = adj::observable(program, result.final, interface).observable;
  } else {
    out["observable"] = py::none();
  }
  return out;
}

std::optional<std::string> prove(const std::string& sequent, const std::optional<std::string>& theory, int depth) {
  const adj::Program program = parse_or_raise(theory.value_or(kDefaultTheory), "<theory>");
  auto goal = adj::parse_sequent(sequent, program);
  if (!goal.ok()) raise(goal.diagnostics);
  const adj::SearchResult found = adj::prove_cutfree(program.theory, *goal.value, depth);
  if (!found.proof) return std::nullopt;
  return adj::print_proof(*found.proof);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adjoint session processes: typechecking, execution and proof search";

  m.def("check", &check, py::arg("source"), py::arg("file") = "<input>",
        "Parses and typechecks a program; returns its diagnostics as dicts.");
  m.def("run", &run, py::arg("source"), py::arg("config") = py::none(), py::arg("main") = "main",
        py::arg("seed") = 0, py::arg("policy") = "demand-driven", py::arg("max_steps") = 10000,
        py::arg("lazy_drop") = false,
        "Runs a configuration (or `main`) and returns the verdict, trace lines and final configuration.");
  m.def("prove", &prove, py::arg("sequent"), py::arg("theory") = py::none(), py::arg("depth") = 6,
        "Searches for a cut-free proof; returns it printed, or None when the bound is exhausted.");
  m.def(
      "format_program", [](const std::string& source) { return adj::print_program(parse_or_raise(source, "<input>")); },
      py::arg("source"), "Pretty-prints a program.");
}
