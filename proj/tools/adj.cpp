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

// adj: check, run, prove and fmt.
//
// Exit codes: 0 success (run: terminated-poised), 1 error, 2 stuck-open,
// 3 step-limit, 4 proof search exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "adjoint/frontend.hpp"
#include "adjoint/logic.hpp"
#include "adjoint/runtime.hpp"
#include "adjoint/typechecker.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitExhausted = 4;

constexpr const char* kDefaultTheory = "mode U with W, C ; mode L ; order U > L ;";

struct Flags {
  bool json = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(const std::vector<adj::Diagnostic>& diags, const Flags& flags) {
  if (flags.json) {
    std::cout << adj::to_json(diags) << "\n";
    return;
  }
  for (const auto& d : diags) std::cerr << adj::format(d) << "\n";
}

std::optional<adj::Program> load_program(const std::string& path, std::vector<adj::Diagnostic>& diags) {
  const auto text = read_file(path);
  if (!text) {
    diags.push_back(adj::error("cannot read '" + path + "'"));
    return std::nullopt;
  }
  auto parsed = adj::parse_program(*text, path);
  diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  if (!parsed.ok()) return std::nullopt;
  return std::move(parsed.value);
}

int cmd_check(const std::string& path, const Flags& flags) {
  std::vector<adj::Diagnostic> diags;
  auto program = load_program(path, diags);
  if (program) {
    auto more = adj::check_all(*program);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  report(diags, flags);
  return program && !adj::has_errors(diags) ? 0 : kExitError;
}

struct RunFlags {
  std::string main = "main";
  std::string config;
  std::uint64_t seed = 0;
  std::string policy = "demand-driven";
  std::size_t max_steps = 10000;
  std::string trace;
  bool unsafe = false;
  bool lazy_drop = false;
  bool deterministic = false;
  bool eager_structural = false;
};

int cmd_run(const std::string& path, const RunFlags& rf, const Flags& flags) {
  std::vector<adj::Diagnostic> diags;
  auto program = load_program(path, diags);
  if (!program) {
    report(diags, flags);
    return kExitError;
  }
  if (!rf.unsafe) {
    auto more = adj::check_all(*program);
    diags.insert(diags.end(), more.begin(), more.end());
    if (adj::has_errors(diags)) {
      diags.push_back(adj::error("refusing to run an ill-typed program (use --unsafe to override)"));
      report(diags, flags);
      return kExitError;
    }
  }

  adj::Configuration config;
  if (!rf.config.empty()) {
    const auto text = read_file(rf.config);
    if (!text) {
      report({adj::error("cannot read '" + rf.config + "'")}, flags);
      return kExitError;
    }
    auto parsed = adj::parse_config(*text, *program, rf.config);
    if (!parsed.ok()) {
      report(parsed.diagnostics, flags);
      return kExitError;
    }
    config = std::move(*parsed.value);
  } else {
    std::string why;
    config = adj::initial_configuration(*program, rf.main, &why);
    if (!why.empty()) {
      report({adj::error(why)}, flags);
      return kExitError;
    }
  }
  const adj::Context interface = adj::output_interface(config);
  if (!rf.unsafe) {
    auto bad = adj::check_configuration(*program, config, interface);
    if (!bad.empty()) {
      report(bad, flags);
      return kExitError;
    }
  }
  bool positive = true;
  for (const auto& b : interface) positive = positive && adj::purely_positive(*program, b.type);
  if (!positive) diags.push_back(adj::warning("the interface is not purely positive; observability is not checked"));

  adj::RunOptions options;
  options.seed = rf.seed;
  if (const char* env = std::getenv("ADJ_SEED")) {
    try {
      options.seed = std::stoull(env);
    } catch (const std::exception&) {
      report({adj::error("ADJ_SEED is not an unsigned integer")}, flags);
      return kExitError;
    }
  }
  std::string policy = rf.policy;
  if (rf.deterministic) policy = "deterministic";
  if (rf.eager_structural) policy = "eager-structural";
  options.policy = *adj::parse_policy(policy);
  options.max_steps = rf.max_steps;
  options.lazy_drop = rf.lazy_drop;

  adj::RunResult result;
  try {
    result = adj::run(*program, std::move(config), options);
  } catch (const std::exception& e) {
    diags.push_back(adj::error(std::string("runtime failure: ") + e.what()));
    report(diags, flags);
    return kExitError;
  }

  if (!rf.trace.empty()) {
    std::ofstream file;
    if (rf.trace != "-") {
      file.open(rf.trace, std::ios::binary);
      if (!file) {
        diags.push_back(adj::error("cannot write '" + rf.trace + "'"));
        report(diags, flags);
        return kExitError;
      }
    }
    std::ostream& out = rf.trace == "-" ? std::cout : file;
    for (const auto& e : result.trace) out << adj::to_json_line(e) << "\n";
  }

  std::cout << "verdict: " << adj::to_string(result.verdict) << " after " << result.trace.size() << " steps\n";
  std::cout << adj::print_config(result.final);
  if (positive && result.verdict == adj::Verdict::kTerminatedPoised) {
    const adj::Observation obs = adj::observable(*program, result.final, interface);
    std::cout << "observable: " << (obs.observable ? "yes" : "no");
    if (!obs.observable) std::cout << " (" << obs.reason << ")";
    std::cout << "\n";
  }
  if (result.verdict == adj::Verdict::kStuckUnpoised) {
    diags.push_back(adj::error("closed configuration is stuck with an object that is not poised"));
  }
  report(diags, flags);
  return adj::exit_code(result.verdict);
}

int cmd_prove(const std::string& sequent, int depth, const std::string& theory_file, const Flags& flags) {
  std::string theory_text = kDefaultTheory;
  if (!theory_file.empty()) {
    const auto text = read_file(theory_file);
    if (!text) {
      report({adj::error("cannot read '" + theory_file + "'")}, flags);
      return kExitError;
    }
    theory_text = *text;
  }
  auto program = adj::parse_program(theory_text, theory_file.empty() ? "<theory>" : theory_file);
  if (!program.ok()) {
    report(program.diagnostics, flags);
    return kExitError;
  }
  auto goal = adj::parse_sequent(sequent, *program.value);
  if (!goal.ok()) {
    report(goal.diagnostics, flags);
    return kExitError;
  }
  const adj::SearchResult found = adj::prove_cutfree(program.value->theory, *goal.value, depth);
  if (!found.proof) {
    std::cout << "EXHAUSTED(" << depth << ")\n";
    return kExitExhausted;
  }
  std::cout << adj::print_proof(*found.proof);
  return 0;
}

int cmd_fmt(const std::string& path, const std::string& program_path, const Flags& flags) {
  const auto text = read_file(path);
  if (!text) {
    report({adj::error("cannot read '" + path + "'")}, flags);
    return kExitError;
  }
  if (program_path.empty()) {
    auto parsed = adj::parse_program(*text, path);
    if (!parsed.ok()) {
      report(parsed.diagnostics, flags);
      return kExitError;
    }
    std::cout << adj::print_program(*parsed.value);
    return 0;
  }
  std::vector<adj::Diagnostic> diags;
  auto program = load_program(program_path, diags);
  if (!program) {
    report(diags, flags);
    return kExitError;
  }
  auto parsed = adj::parse_config(*text, *program, path);
  if (!parsed.ok()) {
    report(parsed.diagnostics, flags);
    return kExitError;
  }
  std::cout << adj::print_config(*parsed.value);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjoint session processes: typechecking, execution and proof search"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_flag("--json", flags.json, "Emit diagnostics as JSON");

  std::string file;
  auto* check = app.add_subcommand("check", "Typecheck a program");
  check->add_option("file", file, "Program file")->required();

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Run a program or configuration");
  run->add_option("file", file, "Program file")->required();
  run->add_option("--main", rf.main, "Process to run in the initial configuration");
  run->add_option("--config", rf.config, "Run this configuration instead of the initial one");
  run->add_option("--seed", rf.seed, "Scheduler seed (ADJ_SEED overrides)");
  run->add_option("--policy", rf.policy, "Scheduler policy")
      ->check(CLI::IsMember({"demand-driven", "eager-structural", "deterministic"}));
  run->add_flag("--deterministic", rf.deterministic, "Same as --policy deterministic");
  run->add_flag("--eager-structural", rf.eager_structural, "Same as --policy eager-structural");
  run->add_option("--max-steps", rf.max_steps, "Step limit")->check(CLI::PositiveNumber);
  run->add_option("--trace", rf.trace, "Write the JSON-lines trace to this file ('-' for stdout)");
  run->add_flag("--unsafe", rf.unsafe, "Run without typechecking");
  run->add_flag("--lazy-drop", rf.lazy_drop, "Do not prioritize cancellation");

  std::string sequent;
  int depth = 6;
  std::string theory_file;
  auto* prove = app.add_subcommand("prove", "Search for a cut-free proof of a sequent");
  prove->add_option("sequent", sequent, "Sequent such as 'x : A * B |- B * A at L'")->required();
  prove->add_option("--depth", depth, "Search depth")->check(CLI::NonNegativeNumber);
  prove->add_option("--mode-theory", theory_file, "File declaring the modes (default: U > L)");

  std::string fmt_program;
  auto* fmt = app.add_subcommand("fmt", "Pretty-print a program or configuration");
  fmt->add_option("file", file, "File to format")->required();
  fmt->add_option("--program", fmt_program, "Treat the file as a configuration over this program");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (check->parsed()) return cmd_check(file, flags);
  if (run->parsed()) return cmd_run(file, rf, flags);
  if (prove->parsed()) return cmd_prove(sequent, depth, theory_file, flags);
  if (fmt->parsed()) return cmd_fmt(file, fmt_program, flags);
  return kExitError;
}
