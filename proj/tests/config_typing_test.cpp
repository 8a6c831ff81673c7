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

#include <stdexcept>

#include "adjoint/frontend.hpp"
#include "adjoint/runtime.hpp"
#include "gtest/gtest.h"
#include "support/generators.hpp"

namespace adj {
namespace {

constexpr const char* kSource =
    "mode U with W, C ;\nmode L ;\norder U > L ;\n"
    "type flag[L] = +{ t : 1, f : 1 } ;\n";

class ConfigTyping : public ::testing::Test {
 protected:
  void SetUp() override {
    auto r = parse_program(kSource);
    ASSERT_TRUE(r.ok());
    program_ = *r.value;
  }

  Configuration config(const std::string& text) {
    auto r = parse_config(text, program_);
    EXPECT_TRUE(r.ok()) << (r.diagnostics.empty() ? "" : format(r.diagnostics.front()));
    return r.value ? *r.value : Configuration{};
  }

  // Both forms, which must agree.
  bool typed(const Configuration& c, const Context& outputs) {
    const bool extend = check_configuration(program_, c, outputs).empty();
    const bool comp = check_configuration_comp(program_, c, outputs).empty();
    EXPECT_EQ(extend, comp) << print_config(c);
    return extend;
  }

  Type unit_l() const { return make_one("L"); }
  Type flag() const { return make_named("flag", "L"); }

  Program program_;
};

TEST_F(ConfigTyping, SingleUnitMessage) {
  const Configuration c = config("proc {c0} [] c : 1[L] { c.<> }\n");
  EXPECT_TRUE(typed(c, {{"c0", unit_l()}}));
  EXPECT_FALSE(typed(c, {{"c1", unit_l()}}));
  EXPECT_FALSE(typed(c, {{"c0", make_one("U")}}));
  EXPECT_FALSE(typed(c, {}));
}

TEST_F(ConfigTyping, ChainOfObjects) {
  const Configuration c = config(
      "proc {u} [] w : 1[L] { w.<> }\n"
      "proc {c0} [u] c : flag { c.t(u) }\n");
  EXPECT_TRUE(typed(c, {{"c0", flag()}}));
  EXPECT_FALSE(typed(c, {{"c0", flag()}, {"u", unit_l()}}));
}

TEST_F(ConfigTyping, OverlappingAliasesAreRejected) {
  auto parsed = parse_config(
      "proc {u} [] w : 1[L] { w.<> }\n"
      "proc {u} [] w : 1[L] { w.<> }\n",
      program_);
  EXPECT_FALSE(parsed.ok());
  Configuration c = config("proc {u} [] w : 1[L] { w.<> }\n");
  c.objects.push_back(c.objects[0]);
  c.objects.back().id = c.next_id++;
  EXPECT_TRUE(check_invariants(c).has_value());
  EXPECT_FALSE(check_configuration(program_, c, {{"u", unit_l()}}).empty());
  EXPECT_FALSE(check_configuration_comp(program_, c, {{"u", unit_l()}}).empty());
}

TEST_F(ConfigTyping, LinearChannelUsedTwiceIsRejected) {
  const Configuration c = config(
      "proc {u} [] w : 1[L] { w.<> }\n"
      "proc {a} [u] x : flag { x.t(u) }\n"
      "proc {b} [u] x : flag { x.f(u) }\n");
  EXPECT_FALSE(typed(c, {{"a", flag()}, {"b", flag()}}));
}

TEST_F(ConfigTyping, MultiplicityFollowsTheMode) {
  const Configuration linear = config("proc {a, b} [] w : 1[L] { w.<> }\n");
  EXPECT_FALSE(typed(linear, {{"a", unit_l()}, {"b", unit_l()}}));
  const Configuration shared = config("proc {a, b} [] w : 1[U] { w.<> }\n");
  EXPECT_TRUE(typed(shared, {{"a", make_one("U")}, {"b", make_one("U")}}));
  const Configuration none = config("proc {} [] w : 1[U] { w.<> }\n");
  EXPECT_TRUE(typed(none, {}));
  const Configuration none_linear = config("proc {} [] w : 1[L] { w.<> }\n");
  EXPECT_FALSE(typed(none_linear, {}));
}

TEST_F(ConfigTyping, InputsMustBeConsumed) {
  const Configuration c = config("input x : 1[L] ;\nproc {c0} [x] c : 1[L] { c <- x }\n");
  EXPECT_TRUE(typed(c, {{"c0", unit_l()}}));
  const Configuration unused = config("input x : 1[L] ;\nproc {c0} [] c : 1[L] { c.<> }\n");
  EXPECT_FALSE(typed(unused, {{"c0", unit_l()}}));
}

TEST_F(ConfigTyping, GeneratedSamplesAgree) {
  testing::Rng rng(31);
  std::size_t samples = 0;
  for (int round = 0; round < 30; ++round) {
    const ModeTheory theory = testing::random_theory(rng, 1 + round % 3);
    const Program program = testing::bare_program(theory);
    testing::ProofPool pool(rng, theory);
    pool.grow();
    for (std::size_t i = 0; i < pool.proofs().size(); i += 7) {
      const Configuration start = testing::configuration_from_proof(pool.proofs()[i]);
      for (const auto& s : testing::reachable_configurations(rng, program, start, 6, 10)) {
        EXPECT_TRUE(check_configuration(program, s.config, s.outputs).empty());
        for (const auto& m : testing::mutants(rng, program, s)) {
          ++samples;
          EXPECT_EQ(check_configuration(program, m.config, m.outputs).empty(),
                    check_configuration_comp(program, m.config, m.outputs).empty())
              << print_config(m.config);
        }
      }
    }
  }
  EXPECT_GT(samples, 100u);
}

TEST_F(ConfigTyping, ObservableMessages) {
  const Configuration c = config(
      "proc {u} [] w : 1[L] { w.<> }\n"
      "proc {c0} [u] c : flag { c.t(u) }\n");
  const Observation obs = observable(program_, c, {{"c0", flag()}});
  EXPECT_TRUE(obs.observable) << obs.reason;
  EXPECT_EQ(obs.order, (std::vector<std::uint64_t>{c.objects[1].id, c.objects[0].id}));
}

TEST_F(ConfigTyping, GarbageIsNotObservable) {
  const Configuration c = config(
      "proc {u} [] w : 1[L] { w.<> }\n"
      "proc {c0} [u] c : flag { c.t(u) }\n"
      "proc {} [] g : 1[U] { g.<> }\n");
  const Observation obs = observable(program_, c, {{"c0", flag()}});
  EXPECT_FALSE(obs.observable);
  EXPECT_TRUE(obs.order.empty());
}

TEST_F(ConfigTyping, NonMessageIsNotObservable) {
  const Configuration c = config("input x : 1[L] ;\nproc {c0} [x] c : 1[L] { case x { <> => c.<> } }\n");
  EXPECT_FALSE(observable(program_, c, {{"c0", unit_l()}}).observable);
}

TEST_F(ConfigTyping, NegativeInterfaceThrows) {
  const Configuration c = config("proc {c0} [] c : 1[L] -o 1[L] { case c { <v, w> => case v { <> => w.<> } } }\n");
  EXPECT_THROW(observable(program_, c, output_interface(c)), std::invalid_argument);
}

}  // namespace
}  // namespace adj
