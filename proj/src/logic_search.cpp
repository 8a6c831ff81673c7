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

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "adjoint/logic.hpp"
#include "adjoint/names.hpp"

namespace adj {
namespace {

constexpr std::size_t kClean = std::numeric_limits<std::size_t>::max();

struct Goal {
  Context ctx;
  Type succ;
};

struct Alternative {
  Proof node;  // rule and annotations; premises filled on success
  std::vector<Goal> goals;
};

std::string key_of(const Context& ctx, const Type& succ) {
  std::vector<std::string> parts;
  parts.reserve(ctx.size());
  for (const auto& b : ctx) parts.push_back(to_string(b.type));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ", ";
  return out + "|- " + to_string(succ);
}

Context plus(Context ctx, std::initializer_list<Binding> extra) {
  for (const auto& b : extra) ctx.push_back(b);
  return ctx;
}

class Prover {
 public:
  Prover(const ModeTheory& theory, NameSupply names) : theory_(theory), names_(std::move(names)) {}

  struct Outcome {
    std::optional<Proof> proof;
    std::size_t taint = kClean;  // lowest branch position a loop check referred to
  };

  Outcome search(const Context& ctx, const Type& succ, int depth) {
    ++nodes_;
    const std::string key = key_of(ctx, succ);
    if (auto it = branch_.find(key); it != branch_.end()) return {std::nullopt, it->second};
    if (depth <= 0) return {};
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= depth) return {};

    const std::size_t pos = branch_.size();
    branch_.emplace(key, pos);
    std::size_t taint = kClean;
    std::optional<Proof> found;
    for (auto& alt : alternatives(ctx, succ)) {
      bool ok = true;
      for (const auto& g : alt.goals) {
        Outcome sub = search(g.ctx, g.succ, depth - 1);
        taint = std::min(taint, sub.taint);
        if (!sub.proof) {
          ok = false;
          break;
        }
        alt.node.premises.push_back(std::move(*sub.proof));
      }
      if (ok) {
        alt.node.conclusion = {ctx, succ};
        found = std::move(alt.node);
        break;
      }
    }
    branch_.erase(key);
    if (!found && taint >= pos) {
      int& best = failed_[key];
      best = std::max(best, depth);
    }
    return {std::move(found), taint};
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::string fresh() { return names_.fresh("u"); }

  static Proof node(Rule r) {
    Proof p;
    p.rule = r;
    return p;
  }

  // All splits of `ctx` into two parts, optionally constrained on the first.
  template <typename Pred>
  static std::vector<std::pair<Context, Context>> splits(const Context& ctx, Pred first_ok) {
    std::vector<std::pair<Context, Context>> out;
    const std::size_t n = ctx.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Context a;
      Context b;
      for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? a : b).push_back(ctx[i]);
      if (first_ok(a)) out.emplace_back(std::move(a), std::move(b));
    }
    return out;
  }

  bool all_geq(const Context& ctx, const std::string& m) const {
    return std::all_of(ctx.begin(), ctx.end(), [&](const Binding& b) { return theory_.geq(b.type->mode, m); });
  }

  std::vector<Alternative> alternatives(const Context& ctx, const Type& succ) {
    std::vector<Alternative> out;
    if (ctx.size() == 1 && type_equal(ctx[0].type, succ)) out.push_back({node(Rule::kId), {}});
    if (ctx.empty() && as<OneType>(succ)) out.push_back({node(Rule::kOneR), {}});

    if (const auto* s = as<PlusType>(succ)) {
      for (const auto& ch : s->choices) {
        Proof p = node(Rule::kPlusR);
        p.label = ch.label;
        out.push_back({p, {{ctx, ch.type}}});
      }
    } else if (const auto* w = as<WithType>(succ)) {
      Alternative alt{node(Rule::kWithR), {}};
      for (const auto& ch : w->choices) alt.goals.push_back({ctx, ch.type});
      out.push_back(std::move(alt));
    } else if (const auto* t = as<TensorType>(succ)) {
      for (auto& [a, b] : splits(ctx, [](const Context&) { return true; })) {
        out.push_back({node(Rule::kTensorR), {{a, t->left}, {b, t->right}}});
      }
    } else if (const auto* l = as<LolliType>(succ)) {
      Proof p = node(Rule::kLolliR);
      p.vars = {fresh()};
      out.push_back({p, {{plus(ctx, {{p.vars[0], l->arg}}), l->result}}});
    } else if (const auto* u = as<UpType>(succ)) {
      out.push_back({node(Rule::kUpR), {{ctx, u->body}}});
    } else if (const auto* d = as<DownType>(succ)) {
      if (all_geq(ctx, d->body->mode)) out.push_back({node(Rule::kDownR), {{ctx, d->body}}});
    }

    std::set<std::string> seen_types;
    for (const auto& x : ctx) {
      // Antecedents of equal type give isomorphic subgoals.
      if (!seen_types.insert(to_string(x.type)).second) continue;
      const Context rest = without(ctx, x.chan);
      const Type& a = x.type;
      auto left = [&](Rule r) {
        Proof p = node(r);
        p.principal = x.chan;
        return p;
      };
      if (const auto* s = as<PlusType>(a)) {
        Alternative alt{left(Rule::kPlusL), {}};
        for (const auto& ch : s->choices) {
          alt.node.vars.push_back(fresh());
          alt.goals.push_back({plus(rest, {{alt.node.vars.back(), ch.type}}), succ});
        }
        out.push_back(std::move(alt));
      } else if (const auto* w = as<WithType>(a)) {
        for (const auto& ch : w->choices) {
          Proof p = left(Rule::kWithL);
          p.label = ch.label;
          p.vars = {fresh()};
          out.push_back({p, {{plus(rest, {{p.vars[0], ch.type}}), succ}}});
        }
      } else if (const auto* t = as<TensorType>(a)) {
        Proof p = left(Rule::kTensorL);
        p.vars = {fresh(), fresh()};
        out.push_back({p, {{plus(rest, {{p.vars[0], t->left}, {p.vars[1], t->right}}), succ}}});
      } else if (as<OneType>(a)) {
        out.push_back({left(Rule::kOneL), {{rest, succ}}});
      } else if (const auto* l = as<LolliType>(a)) {
        const std::string v = fresh();
        for (auto& [first, second] : splits(rest, [&](const Context& c) { return all_geq(c, a->mode); })) {
          Proof p = left(Rule::kLolliL);
          p.vars = {v};
          out.push_back({p, {{first, l->arg}, {plus(second, {{v, l->result}}), succ}}});
        }
      } else if (const auto* u = as<UpType>(a)) {
        if (theory_.geq(u->body->mode, succ->mode)) {
          Proof p = left(Rule::kUpL);
          p.vars = {fresh()};
          out.push_back({p, {{plus(rest, {{p.vars[0], u->body}}), succ}}});
        }
      } else if (const auto* d = as<DownType>(a)) {
        Proof p = left(Rule::kDownL);
        p.vars = {fresh()};
        out.push_back({p, {{plus(rest, {{p.vars[0], d->body}}), succ}}});
      }
      const StructuralProps props = theory_.sigma(a->mode);
      if (props.weakening) out.push_back({left(Rule::kWeaken), {{rest, succ}}});
      if (props.contraction) {
        Proof p = left(Rule::kContract);
        p.vars = {fresh(), fresh()};
        out.push_back({p, {{plus(rest, {{p.vars[0], a}, {p.vars[1], a}}), succ}}});
      }
    }
    return out;
  }

  const ModeTheory& theory_;
  NameSupply names_;
  std::unordered_map<std::string, std::size_t> branch_;
  std::unordered_map<std::string, int> failed_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult prove_cutfree(const ModeTheory& theory, const Sequent& goal, int depth) {
  NameSupply names;
  for (const auto& b : goal.antecedents) names.reserve(b.chan);
  Prover prover(theory, std::move(names));
  SearchResult out;
  out.proof = prover.search(goal.antecedents, goal.succedent, depth).proof;
  out.nodes = prover.nodes();
  return out;
}

ConservativityReport conservativity_probe(const ModeTheory& theory, const Sequent& goal,
                                          const std::string& mode, int depth) {
  ConservativityReport out;
  out.full_provable = prove_cutfree(theory, goal, depth).proof.has_value();
  out.single_provable = prove_cutfree(theory.restrict_to(mode), goal, depth).proof.has_value();
  return out;
}

}  // namespace adj
