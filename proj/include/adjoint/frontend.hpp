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

#ifndef ADJOINT_FRONTEND_HPP_
#define ADJOINT_FRONTEND_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adjoint/configuration.hpp"
#include "adjoint/diagnostics.hpp"
#include "adjoint/process.hpp"
#include "adjoint/program.hpp"
#include "adjoint/types.hpp"

namespace adj {

// Concrete syntax, informally:
//
//   mode U with W, C ;            order U > L ;
//   type bits[U] = +{ b0 : bits, b1 : bits } ;
//   proc nor (x : bits, y : bits) |- (z : bits) = P
//
//   A ::= p[m] | 1[m] | A -o A | A * A | A + A | A & A
//       | +{ l : A, ... } | &{ l : A, ... } | up[m] A | down[m] A | name
//   P ::= c <- a | x <- f <- a, ... | S <- (nu x [: A]) P ; P | S <- f <- a, ... ; P
//       | c.l(a) | c.<a, b> | c.<> | c.shift(a)
//       | case c { l(x) => P | ... } | case c { <x, y> => P }
//       | case c { <> => P } | case c { shift(x) => P }
//   S ::= { a, ... } | a
//
// `%` comments run to the end of the line.

template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value() && !has_errors(diagnostics); }
};

/// Parses, resolves modes, and renames binders so that no binder in the
/// program repeats another binder or a signature channel.
Parsed<Program> parse_program(std::string_view text, const std::string& file = "<input>");

/// `proc {S} [D] a : A { P }` objects and `input c : A ;` declarations.
/// Types resolve against `program`'s definitions and modes.
Parsed<Configuration> parse_config(std::string_view text, const Program& program,
                                   const std::string& file = "<input>");

/// `x : A, y : B |- C [at m]`. Unannotated atoms and units take mode `m`, or
/// the only mode when the theory has one.
Parsed<Sequent> parse_sequent(std::string_view text, const Program& program);

/// Parses a single process term against `program` (used by tests and tools).
Parsed<Proc> parse_process(std::string_view text, const Program& program);

/// Parses a single type against `program`.
Parsed<Type> parse_type(std::string_view text, const Program& program,
                        const std::string& default_mode = "");

std::string print_process(const Proc& p, int indent = 0);
std::string print_program(const Program& program);
std::string print_config(const Configuration& config);

}  // namespace adj

#endif  // ADJOINT_FRONTEND_HPP_
