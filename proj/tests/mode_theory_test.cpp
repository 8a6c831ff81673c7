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

#include <random>

#include "adjoint/mode_theory.hpp"
#include "gtest/gtest.h"

namespace adj {
namespace {

ModeTheory ul() {
  return ModeTheory::build({{"U", {true, true}}, {"L", {false, false}}}, {{"U", "L"}});
}

TEST(ModeTheory, OrderIsReflexiveAndDirected) {
  const ModeTheory t = ul();
  EXPECT_TRUE(t.geq("U", "U"));
  EXPECT_TRUE(t.geq("L", "L"));
  EXPECT_TRUE(t.geq("U", "L"));
  EXPECT_FALSE(t.geq("L", "U"));
  EXPECT_TRUE(t.validate().empty());
}

TEST(ModeTheory, Multiplicity) {
  const ModeTheory t = ModeTheory::build(
      {{"n", {false, false}}, {"w", {true, false}}, {"c", {false, true}}, {"s", {true, true}}}, {});
  for (const char* m : {"n", "w", "c", "s"}) EXPECT_TRUE(t.multiplicity_ok(1, m)) << m;
  EXPECT_FALSE(t.multiplicity_ok(0, "n"));
  EXPECT_TRUE(t.multiplicity_ok(0, "w"));
  EXPECT_FALSE(t.multiplicity_ok(0, "c"));
  EXPECT_FALSE(t.multiplicity_ok(2, "w"));
  EXPECT_TRUE(t.multiplicity_ok(2, "c"));
  EXPECT_TRUE(t.multiplicity_ok(5, "s"));
  EXPECT_TRUE(t.multiplicity_ok(0, "s"));
}

TEST(ModeTheory, MonotonicityViolationIsReported) {
  const ModeTheory t = ModeTheory::build({{"U", {false, false}}, {"L", {true, false}}}, {{"U", "L"}});
  const auto v = t.validate();
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].higher, "U");
  EXPECT_EQ(v[0].lower, "L");
}

TEST(ModeTheory, TransitiveViolationIsReported) {
  const ModeTheory t = ModeTheory::build(
      {{"a", {false, false}}, {"b", {false, false}}, {"c", {false, true}}}, {{"a", "b"}, {"b", "c"}});
  const auto v = t.validate();
  bool ac = false;
  for (const auto& x : v) ac = ac || (x.higher == "a" && x.lower == "c");
  EXPECT_TRUE(ac);
}

TEST(ModeTheory, BadDeclarationsThrow) {
  EXPECT_THROW(ModeTheory::build({{"a", {}}, {"a", {}}}, {}), ModeError);
  EXPECT_THROW(ModeTheory::build({{"a", {}}}, {{"a", "b"}}), ModeError);
  EXPECT_THROW(ul().sigma("Q"), ModeError);
}

TEST(ModeTheory, RestrictKeepsOneMode) {
  const ModeTheory r = ul().restrict_to("U");
  ASSERT_EQ(r.modes().size(), 1u);
  EXPECT_EQ(r.modes()[0].name, "U");
  EXPECT_TRUE(r.sigma("U").contraction);
  EXPECT_FALSE(r.has_mode("L"));
}

// The preorder agrees with reachability computed by depth-first search.
TEST(ModeTheory, GeqMatchesReachability) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<ModeDecl> modes;
    for (int i = 0; i < n; ++i) modes.push_back({"m" + std::to_string(i), {}});
    std::vector<OrderDecl> order;
    std::vector<std::vector<int>> edges(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && rng() % 4 == 0) {
          order.push_back({modes[i].name, modes[j].name});
          edges[i].push_back(j);
        }
      }
    }
    const ModeTheory t = ModeTheory::build(modes, order);
    for (int i = 0; i < n; ++i) {
      std::vector<bool> seen(n, false);
      std::vector<int> stack{i};
      seen[i] = true;
      while (!stack.empty()) {
        const int k = stack.back();
        stack.pop_back();
        for (int j : edges[k]) {
          if (!seen[j]) {
            seen[j] = true;
            stack.push_back(j);
          }
        }
      }
      for (int j = 0; j < n; ++j) EXPECT_EQ(t.geq(modes[i].name, modes[j].name), seen[j]);
    }
  }
}

}  // namespace
}  // namespace adj
