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

#include <set>

#include "adjoint/typechecker.hpp"

namespace adj {
namespace {

struct Invalid {
  std::string message;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Invalid{msg};
}

Context with(Context ctx, std::initializer_list<Binding> extra) {
  for (const auto& b : extra) ctx.push_back(b);
  return ctx;
}

bool is_exactly(const Context& ctx, const Context& expected) { return context_equal(ctx, expected); }

class Validator {
 public:
  explicit Validator(const Program& program) : program_(program), theory_(program.theory) {}

  void node(const TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    require(p && a, "incomplete goal");
    std::set<std::string> names{c};
    for (const auto& b : ctx) {
      require(names.insert(b.chan).second, "repeated channel '" + b.chan + "'");
      require(theory_.geq(b.type->mode, a->mode), "presupposition fails for '" + b.chan + "'");
    }
    const std::size_t arity = premise_count(d);
    require(d.premises.size() == arity, rule_name(d.rule) + " with the wrong number of premises");
    schema(d);
    for (const auto& prem : d.premises) node(prem);
  }

 private:
  std::size_t premise_count(const TypingDerivation& d) const {
    switch (d.rule) {
      case TypingRule::kCut: return 2;
      case TypingRule::kPlusL: return as<CaseLabel>(d.goal.process) ? as<CaseLabel>(d.goal.process)->branches.size() : 0;
      case TypingRule::kWithR: return as<CaseLabel>(d.goal.process) ? as<CaseLabel>(d.goal.process)->branches.size() : 0;
      case TypingRule::kTensorL:
      case TypingRule::kOneL:
      case TypingRule::kLolliR:
      case TypingRule::kUpR:
      case TypingRule::kDownL: return 1;
      default: return 0;
    }
  }

  Type ex(const Type& t) const { return expose(program_, t); }

  const Binding& in(const Context& ctx, const std::string& x) const {
    const Binding* b = find_binding(ctx, x);
    require(b != nullptr, "channel '" + x + "' is not in the context");
    return *b;
  }

  void goal_is(const TypingDerivation& prem, const Context& ctx, const Proc& p, const std::string& c,
               const Type& a) const {
    require(prem.goal.process == p, "premise checks the wrong process");
    require(prem.goal.chan == c, "premise offers '" + prem.goal.chan + "' instead of '" + c + "'");
    require(type_equal(prem.goal.type, a), "premise offers the wrong type");
    require(is_exactly(prem.goal.context, ctx), "premise context differs from the schema");
  }

  void schema(const TypingDerivation& d) const {
    const auto& [ctx, p, c, a] = d.goal;
    switch (d.rule) {
      case TypingRule::kId: {
        const auto* f = as<Fwd>(p);
        require(f && f->dst == c, "id needs c <- a");
        require(is_exactly(ctx, {{f->src, a}}), "id context must be exactly the forwarded channel");
        return;
      }
      case TypingRule::kCut: {
        const auto* s = as<Spawn>(p);
        require(s != nullptr, "cut needs a spawn");
        const Type& t = d.cut_type;
        require(t != nullptr, "cut without a type");
        if (s->annotation) require(type_equal(s->annotation, t), "cut type differs from annotation");
        const Context& left = d.premises[0].goal.context;
        Context right;
        for (const auto& b : ctx) {
          if (!find_binding(left, b.chan)) right.push_back(b);
        }
        require(left.size() + right.size() == ctx.size(), "cut premises do not split the context");
        for (const auto& b : left) {
          const Binding* orig = find_binding(ctx, b.chan);
          require(orig && type_equal(orig->type, b.type), "cut premise invents '" + b.chan + "'");
          require(theory_.geq(b.type->mode, t->mode), "cut independence fails for '" + b.chan + "'");
        }
        require(theory_.geq(t->mode, a->mode), "cut mode is not >= the conclusion mode");
        require(theory_.multiplicity_ok(s->aliases.size(), t->mode), "alias count not allowed");
        goal_is(d.premises[0], left, s->body, s->internal, t);
        Context cont = right;
        for (const auto& x : s->aliases) {
          require(!find_binding(ctx, x) && x != c, "alias '" + x + "' clashes");
          cont.push_back({x, t});
        }
        goal_is(d.premises[1], cont, s->cont, c, a);
        return;
      }
      case TypingRule::kPlusR0: {
        const auto* s = as<SendLabel>(p);
        require(s && s->chan == c, "+R0 needs c.l(a)");
        const auto* plus = as<PlusType>(ex(a));
        require(plus != nullptr, "+R0 offers a non-choice");
        const Choice* ch = find_choice(plus->choices, s->label);
        require(ch != nullptr, "+R0 label not in the choice");
        require(is_exactly(ctx, {{s->cont, ch->type}}), "+R0 context mismatch");
        return;
      }
      case TypingRule::kWithL0: {
        const auto* s = as<SendLabel>(p);
        require(s && s->cont == c, "&L0 needs a.l(c)");
        const auto* with = as<WithType>(ex(in(ctx, s->chan).type));
        require(with != nullptr, "&L0 on a non-choice");
        const Choice* ch = find_choice(with->choices, s->label);
        require(ch && type_equal(ch->type, a), "&L0 label type mismatch");
        require(ctx.size() == 1, "&L0 context must be exactly the choice");
        return;
      }
      case TypingRule::kPlusL:
      case TypingRule::kWithR: {
        const auto* cl = as<CaseLabel>(p);
        require(cl != nullptr, "branching rule needs a case");
        const bool right = d.rule == TypingRule::kWithR;
        require((cl->chan == c) == right, "case channel does not match the rule");
        const std::vector<Choice>* choices = nullptr;
        if (right) {
          const auto* w = as<WithType>(ex(a));
          require(w != nullptr, "&R offers a non-choice");
          choices = &w->choices;
        } else {
          const auto* s = as<PlusType>(ex(in(ctx, cl->chan).type));
          require(s != nullptr, "+L on a non-choice");
          choices = &s->choices;
        }
        require(choices->size() == cl->branches.size(), "branches do not cover the choice");
        for (std::size_t i = 0; i < cl->branches.size(); ++i) {
          const Branch& br = cl->branches[i];
          const Choice* ch = find_choice(*choices, br.label);
          require(ch != nullptr, "branch label not in the choice");
          if (right) {
            goal_is(d.premises[i], ctx, br.body, br.var, ch->type);
          } else {
            goal_is(d.premises[i], with(without(ctx, cl->chan), {{br.var, ch->type}}), br.body, c, a);
          }
        }
        return;
      }
      case TypingRule::kTensorR0: {
        const auto* s = as<SendPair>(p);
        require(s && s->chan == c && s->first != s->second, "*R0 needs c.<a, b>");
        const auto* t = as<TensorType>(ex(a));
        require(t != nullptr, "*R0 offers a non-tensor");
        require(is_exactly(ctx, {{s->first, t->left}, {s->second, t->right}}), "*R0 context mismatch");
        return;
      }
      case TypingRule::kLolliL0: {
        const auto* s = as<SendPair>(p);
        require(s && s->second == c && s->first != s->chan, "-oL0 needs c.<a, b>");
        const auto* l = as<LolliType>(ex(in(ctx, s->chan).type));
        require(l != nullptr, "-oL0 on a non-implication");
        require(type_equal(l->result, a), "-oL0 result mismatch");
        require(ctx.size() == 2 && type_equal(in(ctx, s->first).type, l->arg), "-oL0 context mismatch");
        return;
      }
      case TypingRule::kTensorL:
      case TypingRule::kLolliR: {
        const auto* cp = as<CasePair>(p);
        require(cp != nullptr, "pair rule needs case <x, y>");
        if (d.rule == TypingRule::kLolliR) {
          require(cp->chan == c, "-oR must receive on the offered channel");
          const auto* l = as<LolliType>(ex(a));
          require(l != nullptr, "-oR offers a non-implication");
          goal_is(d.premises[0], with(ctx, {{cp->first, l->arg}}), cp->body, cp->second, l->result);
        } else {
          const auto* t = as<TensorType>(ex(in(ctx, cp->chan).type));
          require(t != nullptr, "*L on a non-tensor");
          goal_is(d.premises[0], with(without(ctx, cp->chan), {{cp->first, t->left}, {cp->second, t->right}}),
                  cp->body, c, a);
        }
        return;
      }
      case TypingRule::kOneR:
        require(as<SendUnit>(p) && as<SendUnit>(p)->chan == c, "1R needs c.<>");
        require(as<OneType>(ex(a)) != nullptr, "1R offers a non-unit");
        require(ctx.empty(), "1R context must be empty");
        return;
      case TypingRule::kOneL: {
        const auto* cu = as<CaseUnit>(p);
        require(cu && cu->chan != c, "1L needs case a <>");
        require(as<OneType>(ex(in(ctx, cu->chan).type)) != nullptr, "1L on a non-unit");
        goal_is(d.premises[0], without(ctx, cu->chan), cu->body, c, a);
        return;
      }
      case TypingRule::kUpR:
      case TypingRule::kDownL: {
        const auto* cs = as<CaseShift>(p);
        require(cs != nullptr, "shift rule needs case shift(x)");
        if (d.rule == TypingRule::kUpR) {
          require(cs->chan == c, "upR must receive on the offered channel");
          const auto* u = as<UpType>(ex(a));
          require(u != nullptr, "upR offers a non-shift");
          goal_is(d.premises[0], ctx, cs->body, cs->var, u->body);
        } else {
          const auto* dn = as<DownType>(ex(in(ctx, cs->chan).type));
          require(dn != nullptr, "downL on a non-shift");
          goal_is(d.premises[0], with(without(ctx, cs->chan), {{cs->var, dn->body}}), cs->body, c, a);
        }
        return;
      }
      case TypingRule::kUpL0: {
        const auto* s = as<SendShift>(p);
        require(s && s->cont == c, "upL0 needs a.shift(c)");
        const auto* u = as<UpType>(ex(in(ctx, s->chan).type));
        require(u && type_equal(u->body, a), "upL0 type mismatch");
        require(ctx.size() == 1, "upL0 context must be exactly the shift");
        return;
      }
      case TypingRule::kDownR0: {
        const auto* s = as<SendShift>(p);
        require(s && s->chan == c, "downR0 needs c.shift(a)");
        const auto* dn = as<DownType>(ex(a));
        require(dn != nullptr, "downR0 offers a non-shift");
        require(is_exactly(ctx, {{s->cont, dn->body}}), "downR0 context mismatch");
        return;
      }
      case TypingRule::kCall: {
        const auto* call = as<Call>(p);
        require(call && call->result == c, "call must offer the goal channel");
        const ProcDef* def = program_.find_proc(call->name);
        require(def != nullptr, "call to an undefined process");
        require(def->params.size() == call->args.size() && ctx.size() == call->args.size(),
                "call arity mismatch");
        for (std::size_t i = 0; i < call->args.size(); ++i) {
          require(type_equal(in(ctx, call->args[i]).type, def->params[i].type), "call argument mismatch");
        }
        require(type_equal(def->result.type, a), "call result mismatch");
        return;
      }
    }
  }

  const Program& program_;
  const ModeTheory& theory_;
};

bool mentions_named(const Type& t) {
  if (as<NamedType>(t)) return true;
  if (const auto* l = as<LolliType>(t)) return mentions_named(l->arg) || mentions_named(l->result);
  if (const auto* p = as<TensorType>(t)) return mentions_named(p->left) || mentions_named(p->right);
  if (const auto* s = as<PlusType>(t); s || as<WithType>(t)) {
    for (const auto& c : s ? s->choices : as<WithType>(t)->choices) {
      if (mentions_named(c.type)) return true;
    }
    return false;
  }
  if (const auto* u = as<UpType>(t)) return mentions_named(u->body);
  if (const auto* d = as<DownType>(t)) return mentions_named(d->body);
  return false;
}

struct NotErasable {};

Proof erase_node(const TypingDerivation& d) {
  const auto& [ctx, p, c, a] = d.goal;
  if (mentions_named(a)) throw NotErasable{};
  for (const auto& b : ctx) {
    if (mentions_named(b.type)) throw NotErasable{};
  }
  Proof out;
  out.conclusion = {ctx, a};
  for (const auto& prem : d.premises) out.premises.push_back(erase_node(prem));
  switch (d.rule) {
    case TypingRule::kId: out.rule = Rule::kId; break;
    case TypingRule::kCut:
      out.rule = Rule::kCut;
      out.vars = as<Spawn>(p)->aliases;
      out.cut_type = d.cut_type;
      break;
    case TypingRule::kPlusR0:
      out.rule = Rule::kPlusR0;
      out.vars = {as<SendLabel>(p)->cont};
      out.label = as<SendLabel>(p)->label;
      break;
    case TypingRule::kWithL0:
      out.rule = Rule::kWithL0;
      out.principal = as<SendLabel>(p)->chan;
      out.label = as<SendLabel>(p)->label;
      break;
    case TypingRule::kPlusL:
    case TypingRule::kWithR: {
      const auto* cl = as<CaseLabel>(p);
      const auto* choices = d.rule == TypingRule::kWithR ? &as<WithType>(a)->choices : nullptr;
      if (!choices) choices = &as<PlusType>(find_binding(ctx, cl->chan)->type)->choices;
      // Reorder premises to follow the choice order.
      std::vector<Proof> ordered;
      std::vector<std::string> vars;
      for (const auto& ch : *choices) {
        for (std::size_t i = 0; i < cl->branches.size(); ++i) {
          if (cl->branches[i].label == ch.label) {
            ordered.push_back(out.premises[i]);
            vars.push_back(cl->branches[i].var);
          }
        }
      }
      out.premises = std::move(ordered);
      if (d.rule == TypingRule::kPlusL) {
        out.rule = Rule::kPlusL;
        out.principal = cl->chan;
        out.vars = std::move(vars);
      } else {
        out.rule = Rule::kWithR;
      }
      break;
    }
    case TypingRule::kTensorR0:
      out.rule = Rule::kTensorR0;
      out.vars = {as<SendPair>(p)->first, as<SendPair>(p)->second};
      break;
    case TypingRule::kTensorL:
      out.rule = Rule::kTensorL;
      out.principal = as<CasePair>(p)->chan;
      out.vars = {as<CasePair>(p)->first, as<CasePair>(p)->second};
      break;
    case TypingRule::kOneR: out.rule = Rule::kOneR; break;
    case TypingRule::kOneL:
      out.rule = Rule::kOneL;
      out.principal = as<CaseUnit>(p)->chan;
      break;
    case TypingRule::kLolliR:
      out.rule = Rule::kLolliR;
      out.vars = {as<CasePair>(p)->first};
      break;
    case TypingRule::kLolliL0:
      out.rule = Rule::kLolliL0;
      out.principal = as<SendPair>(p)->chan;
      out.vars = {as<SendPair>(p)->first};
      break;
    case TypingRule::kUpR: out.rule = Rule::kUpR; break;
    case TypingRule::kUpL0:
      out.rule = Rule::kUpL0;
      out.principal = as<SendShift>(p)->chan;
      break;
    case TypingRule::kDownR0:
      out.rule = Rule::kDownR0;
      out.vars = {as<SendShift>(p)->cont};
      break;
    case TypingRule::kDownL:
      out.rule = Rule::kDownL;
      out.principal = as<CaseShift>(p)->chan;
      out.vars = {as<CaseShift>(p)->var};
      break;
    case TypingRule::kCall: throw NotErasable{};
  }
  return out;
}

}  // namespace

std::optional<std::string> validate_derivation(const Program& program,
                                               const TypingDerivation& derivation) {
  try {
    Validator(program).node(derivation);
  } catch (const Invalid& e) {
    return e.message;
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

std::optional<Proof> erase(const TypingDerivation& derivation) {
  try {
    return erase_node(derivation);
  } catch (const NotErasable&) {
    return std::nullopt;
  }
}

}  // namespace adj
