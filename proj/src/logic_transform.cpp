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

#include "adjoint/logic.hpp"
#include "adjoint/names.hpp"

namespace adj {
namespace {

void collect_names(const Proof& p, NameSupply& names) {
  for (const auto& b : p.conclusion.antecedents) names.reserve(b.chan);
  names.reserve(p.principal);
  names.reserve_all(p.vars);
  for (const auto& q : p.premises) collect_names(q, names);
}

NameSupply names_of(const Proof& p) {
  NameSupply names;
  collect_names(p, names);
  return names;
}

Proof make(Rule rule, Context ctx, Type succ, std::vector<Proof> premises = {}) {
  Proof p;
  p.rule = rule;
  p.conclusion = {std::move(ctx), std::move(succ)};
  p.premises = std::move(premises);
  return p;
}

Proof identity(const std::string& x, const Type& a) { return make(Rule::kId, {{x, a}}, a); }

const Binding& principal_of(const Proof& p) { return *find_binding(p.conclusion.antecedents, p.principal); }

class Expander {
 public:
  explicit Expander(NameSupply names) : names_(std::move(names)) {}

  Proof run(const Proof& p) {
    if (p.rule == Rule::kId) {
      return eta(p.conclusion.antecedents[0].chan, p.conclusion.succedent);
    }
    Proof out = p;
    for (auto& q : out.premises) q = run(q);
    return out;
  }

 private:
  std::string fresh() { return names_.fresh("e"); }

  // A proof of x : a |- a with identities only at atoms.
  Proof eta(const std::string& x, const Type& a) {
    const Context self{{x, a}};
    if (const auto* t = as<TensorType>(a)) {
      const std::string y = fresh();
      const std::string z = fresh();
      Proof pair = make(Rule::kTensorR, {{y, t->left}, {z, t->right}}, a,
                        {eta(y, t->left), eta(z, t->right)});
      Proof out = make(Rule::kTensorL, self, a, {std::move(pair)});
      out.principal = x;
      out.vars = {y, z};
      return out;
    }
    if (as<OneType>(a)) {
      Proof out = make(Rule::kOneL, self, a, {make(Rule::kOneR, {}, a)});
      out.principal = x;
      return out;
    }
    if (const auto* s = as<PlusType>(a)) {
      Proof out = make(Rule::kPlusL, self, a);
      out.principal = x;
      for (const auto& ch : s->choices) {
        const std::string y = fresh();
        Proof inj = make(Rule::kPlusR, {{y, ch.type}}, a, {eta(y, ch.type)});
        inj.label = ch.label;
        out.vars.push_back(y);
        out.premises.push_back(std::move(inj));
      }
      return out;
    }
    if (const auto* w = as<WithType>(a)) {
      Proof out = make(Rule::kWithR, self, a);
      for (const auto& ch : w->choices) {
        const std::string y = fresh();
        Proof proj = make(Rule::kWithL, self, ch.type, {eta(y, ch.type)});
        proj.principal = x;
        proj.label = ch.label;
        proj.vars = {y};
        out.premises.push_back(std::move(proj));
      }
      return out;
    }
    if (const auto* l = as<LolliType>(a)) {
      const std::string u = fresh();
      const std::string y = fresh();
      Proof apply = make(Rule::kLolliL, {{x, a}, {u, l->arg}}, l->result,
                         {eta(u, l->arg), eta(y, l->result)});
      apply.principal = x;
      apply.vars = {y};
      Proof out = make(Rule::kLolliR, self, a, {std::move(apply)});
      out.vars = {u};
      return out;
    }
    if (const auto* up = as<UpType>(a)) {
      const std::string y = fresh();
      Proof open = make(Rule::kUpL, self, up->body, {eta(y, up->body)});
      open.principal = x;
      open.vars = {y};
      return make(Rule::kUpR, self, a, {std::move(open)});
    }
    if (const auto* down = as<DownType>(a)) {
      const std::string y = fresh();
      Proof close = make(Rule::kDownR, {{y, down->body}}, a, {eta(y, down->body)});
      Proof out = make(Rule::kDownL, self, a, {std::move(close)});
      out.principal = x;
      out.vars = {y};
      return out;
    }
    return identity(x, a);
  }

  NameSupply names_;
};

class ToStandard {
 public:
  explicit ToStandard(NameSupply names) : names_(std::move(names)) {}

  Proof run(const Proof& p) {
    const Context& ctx = p.conclusion.antecedents;
    const Type& c = p.conclusion.succedent;
    switch (p.rule) {
      case Rule::kPlusR0: {
        const Binding& a = ctx[0];
        Proof out = make(Rule::kPlusR, ctx, c, {identity(a.chan, a.type)});
        out.label = p.label;
        return out;
      }
      case Rule::kWithL0: {
        const std::string y = names_.fresh("s");
        Proof out = make(Rule::kWithL, ctx, c, {identity(y, c)});
        out.principal = p.principal;
        out.label = p.label;
        out.vars = {y};
        return out;
      }
      case Rule::kTensorR0: {
        const Binding& a = *find_binding(ctx, p.vars[0]);
        const Binding& b = *find_binding(ctx, p.vars[1]);
        return make(Rule::kTensorR, ctx, c, {identity(a.chan, a.type), identity(b.chan, b.type)});
      }
      case Rule::kLolliL0: {
        const Binding& a = *find_binding(ctx, p.vars[0]);
        const std::string y = names_.fresh("s");
        Proof out = make(Rule::kLolliL, ctx, c, {identity(a.chan, a.type), identity(y, c)});
        out.principal = p.principal;
        out.vars = {y};
        return out;
      }
      case Rule::kUpL0: {
        const std::string y = names_.fresh("s");
        Proof out = make(Rule::kUpL, ctx, c, {identity(y, c)});
        out.principal = p.principal;
        out.vars = {y};
        return out;
      }
      case Rule::kDownR0: {
        const Binding& a = ctx[0];
        return make(Rule::kDownR, ctx, c, {identity(a.chan, a.type)});
      }
      default: {
        Proof out = p;
        for (auto& q : out.premises) q = run(q);
        return out;
      }
    }
  }

 private:
  NameSupply names_;
};

class ToAxioms {
 public:
  explicit ToAxioms(NameSupply names) : names_(std::move(names)) {}

  Proof run(const Proof& p) {
    const Context& ctx = p.conclusion.antecedents;
    const Type& c = p.conclusion.succedent;
    switch (p.rule) {
      case Rule::kPlusR: {
        const Type& chosen = p.premises[0].conclusion.succedent;
        const std::string v = fresh();
        Proof ax = make(Rule::kPlusR0, {{v, chosen}}, c);
        ax.vars = {v};
        ax.label = p.label;
        return cut({v}, chosen, ctx, c, run(p.premises[0]), std::move(ax));
      }
      case Rule::kWithL: {
        const Binding& x = principal_of(p);
        const Type component = find_binding(p.premises[0].conclusion.antecedents, p.vars[0])->type;
        Proof ax = make(Rule::kWithL0, {x}, component);
        ax.principal = x.chan;
        ax.label = p.label;
        return cut(p.vars, component, ctx, c, std::move(ax), run(p.premises[0]));
      }
      case Rule::kTensorR: {
        const auto* t = as<TensorType>(c);
        const std::string a = fresh();
        const std::string b = fresh();
        Proof ax = make(Rule::kTensorR0, {{a, t->left}, {b, t->right}}, c);
        ax.vars = {a, b};
        Context inner_ctx = p.premises[1].conclusion.antecedents;
        inner_ctx.push_back({a, t->left});
        Proof inner = cut({b}, t->right, inner_ctx, c, run(p.premises[1]), std::move(ax));
        return cut({a}, t->left, ctx, c, run(p.premises[0]), std::move(inner));
      }
      case Rule::kLolliL: {
        const Binding& x = principal_of(p);
        const auto* l = as<LolliType>(x.type);
        const std::string a = fresh();
        Proof ax = make(Rule::kLolliL0, {{a, l->arg}, x}, l->result);
        ax.principal = x.chan;
        ax.vars = {a};
        Context inner_ctx;
        for (const auto& b : ctx) {
          if (!find_binding(p.premises[0].conclusion.antecedents, b.chan)) inner_ctx.push_back(b);
        }
        inner_ctx.push_back({a, l->arg});
        Proof inner = cut(p.vars, l->result, inner_ctx, c, std::move(ax), run(p.premises[1]));
        return cut({a}, l->arg, ctx, c, run(p.premises[0]), std::move(inner));
      }
      case Rule::kUpL: {
        const Binding& x = principal_of(p);
        const auto* u = as<UpType>(x.type);
        Proof ax = make(Rule::kUpL0, {x}, u->body);
        ax.principal = x.chan;
        return cut(p.vars, u->body, ctx, c, std::move(ax), run(p.premises[0]));
      }
      case Rule::kDownR: {
        const auto* d = as<DownType>(c);
        const std::string a = fresh();
        Proof ax = make(Rule::kDownR0, {{a, d->body}}, c);
        ax.vars = {a};
        return cut({a}, d->body, ctx, c, run(p.premises[0]), std::move(ax));
      }
      case Rule::kWeaken:
      case Rule::kContract: {
        const Binding& x = principal_of(p);
        return cut(p.vars, x.type, ctx, c, identity(x.chan, x.type), run(p.premises[0]));
      }
      default: {
        Proof out = p;
        for (auto& q : out.premises) q = run(q);
        return out;
      }
    }
  }

 private:
  std::string fresh() { return names_.fresh("a"); }

  static Proof cut(std::vector<std::string> vars, const Type& a, const Context& ctx, const Type& c,
                   Proof left, Proof right) {
    Proof out = make(Rule::kCut, ctx, c, {std::move(left), std::move(right)});
    out.vars = std::move(vars);
    out.cut_type = a;
    return out;
  }

  NameSupply names_;
};

}  // namespace

Proof identity_expand(const ModeTheory& /*theory*/, const Proof& proof) {
  return Expander(names_of(proof)).run(proof);
}

Proof axioms_to_standard(const Proof& proof) { return ToStandard(names_of(proof)).run(proof); }

Proof standard_to_axioms(const Proof& proof) { return ToAxioms(names_of(proof)).run(proof); }

}  // namespace adj
