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

#include "adjoint/typechecker.hpp"

#include <set>

namespace adj {
namespace {

struct TypeError {
  Diagnostic diag;
};

class Checker {
 public:
  explicit Checker(const Program& program) : program_(program), theory_(program.theory) {}

  TypingDerivation check(const Context& ctx, const Proc& p, const std::string& c, const Type& a) {
    span_ = p->span;
    presupposition(ctx, c, a);
    TypingDerivation d;
    d.goal = {ctx, p, c, a};
    std::visit([&](const auto& n) { rule(n, d); }, p->node);
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw TypeError{error(msg, span_)}; }

  Type expose_or_fail(const Type& t) const {
    try {
      return expose(program_, t);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  void presupposition(const Context& ctx, const std::string& c, const Type& a) const {
    for (const auto& b : ctx) {
      if (!theory_.geq(b.type->mode, a->mode)) {
        fail("independence violated: '" + b.chan + "' at mode " + b.type->mode +
             " is used by '" + c + "' at mode " + a->mode + ", but " + b.type->mode + " >= " +
             a->mode + " does not hold");
      }
    }
  }

  const Binding& lookup(const Context& ctx, const std::string& x) const {
    const Binding* b = find_binding(ctx, x);
    if (!b) fail("unbound channel '" + x + "'");
    return *b;
  }

  void fresh_for(const Context& ctx, const std::string& c, const std::string& x) const {
    if (x == c || find_binding(ctx, x)) fail("channel '" + x + "' is already in scope");
  }

  // Axioms consume exactly the listed channels.
  void exact(const Context& ctx, const std::vector<std::string>& used) const {
    for (const auto& b : ctx) {
      bool listed = false;
      for (const auto& u : used) listed = listed || u == b.chan;
      if (!listed) fail("channel '" + b.chan + "' is left unused");
    }
    std::set<std::string> seen;
    for (const auto& u : used) {
      lookup(ctx, u);
      if (!seen.insert(u).second) fail("channel '" + u + "' is used twice");
    }
  }

  void same(const Type& expected, const Type& found, const std::string& what) const {
    if (!type_equal(expected, found)) {
      fail(what + ": expected " + to_string(expected) + " but found " + to_string(found));
    }
  }

  template <typename T>
  const T* head(const Type& exposed, const std::string& chan, const char* connective) const {
    const T* t = as<T>(exposed);
    if (!t) {
      fail("channel '" + chan + "' has type " + to_string(exposed) + ", not " + connective);
    }
    return t;
  }

  static std::set<std::string> labels_of(const std::vector<Choice>& choices) {
    std::set<std::string> out;
    for (const auto& c : choices) out.insert(c.label);
    return out;
  }

  void same_labels(const std::vector<Choice>& choices, const std::vector<Branch>& branches) const {
    std::set<std::string> have;
    for (const auto& b : branches) {
      if (!have.insert(b.label).second) fail("duplicate branch '" + b.label + "'");
    }
    for (const auto& l : labels_of(choices)) {
      if (!have.count(l)) fail("missing branch for label '" + l + "'");
    }
    for (const auto& l : have) {
      if (!find_choice(choices, l)) fail("label '" + l + "' is not in the choice");
    }
  }

  void rule(const Fwd& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    d.rule = TypingRule::kId;
    if (n.dst != c) fail("forward must write the offered channel '" + c + "', not '" + n.dst + "'");
    exact(ctx, {n.src});
    same(a, lookup(ctx, n.src).type, "forward type mismatch");
  }

  void rule(const Spawn& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    d.rule = TypingRule::kCut;
    Type t = n.annotation;
    if (!t) {
      if (const auto* call = as<Call>(n.body)) {
        const ProcDef* def = program_.find_proc(call->name);
        if (!def) fail("call to undefined process '" + call->name + "'");
        t = def->result.type;
      } else if (const auto* f = as<Fwd>(n.body); f && f->dst == n.internal) {
        t = lookup(ctx, f->src).type;
      } else {
        fail("spawn of '" + n.internal + "' needs a type annotation");
      }
    }
    if (auto bad = type_wellformed(program_, t)) fail(*bad);
    d.cut_type = t;
    std::set<std::string> seen;
    for (const auto& s : n.aliases) {
      fresh_for(ctx, c, s);
      if (!seen.insert(s).second) fail("duplicate alias '" + s + "'");
    }
    std::set<std::string> body_free = free_channels(n.body);
    body_free.erase(n.internal);
    Context left;
    Context right;
    for (const auto& b : ctx) (body_free.count(b.chan) ? left : right).push_back(b);
    for (const auto& f : body_free) {
      if (f == c) fail("spawned process uses the offered channel '" + c + "'");
      lookup(ctx, f);
    }
    const std::string& m = t->mode;
    for (const auto& b : left) {
      if (!theory_.geq(b.type->mode, m)) {
        fail("independence violated at cut: '" + b.chan + "' at mode " + b.type->mode +
             " is used by a process at mode " + m);
      }
    }
    if (!theory_.geq(m, a->mode)) {
      fail("cut at mode " + m + " from a process at mode " + a->mode + " requires " + m +
           " >= " + a->mode);
    }
    if (!theory_.multiplicity_ok(n.aliases.size(), m)) {
      fail(std::to_string(n.aliases.size()) + " aliases are not allowed at mode " + m + " (" +
           to_string(theory_.sigma(m)) + ")");
    }
    if (n.internal == c || find_binding(left, n.internal)) {
      fail("channel '" + n.internal + "' is already in scope");
    }
    d.premises.push_back(check(left, n.body, n.internal, t));
    span_ = p->span;
    for (const auto& s : n.aliases) right.push_back({s, t});
    d.premises.push_back(check(right, n.cont, c, a));
  }

  void rule(const SendLabel& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    if (n.chan == c) {
      d.rule = TypingRule::kPlusR0;
      const auto* plus = head<PlusType>(expose_or_fail(a), c, "an internal choice");
      const Choice* ch = find_choice(plus->choices, n.label);
      if (!ch) fail("label '" + n.label + "' is not in " + to_string(a));
      exact(ctx, {n.cont});
      same(ch->type, lookup(ctx, n.cont).type, "continuation of label '" + n.label + "'");
      return;
    }
    d.rule = TypingRule::kWithL0;
    const Binding& b = lookup(ctx, n.chan);
    const auto* with = head<WithType>(expose_or_fail(b.type), n.chan, "an external choice");
    const Choice* ch = find_choice(with->choices, n.label);
    if (!ch) fail("label '" + n.label + "' is not in " + to_string(b.type));
    if (n.cont != c) fail("the continuation of '" + n.chan + "' must be the offered channel '" + c + "'");
    exact(ctx, {n.chan});
    same(ch->type, a, "continuation of label '" + n.label + "'");
  }

  void rule(const CaseLabel& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    if (n.chan == c) {
      d.rule = TypingRule::kWithR;
      const auto* with = head<WithType>(expose_or_fail(a), c, "an external choice");
      same_labels(with->choices, n.branches);
      for (const auto& br : n.branches) {
        fresh_for(ctx, c, br.var);
        d.premises.push_back(check(ctx, br.body, br.var, find_choice(with->choices, br.label)->type));
      }
      return;
    }
    d.rule = TypingRule::kPlusL;
    const Binding& b = lookup(ctx, n.chan);
    const auto* plus = head<PlusType>(expose_or_fail(b.type), n.chan, "an internal choice");
    same_labels(plus->choices, n.branches);
    Context rest = without(ctx, n.chan);
    for (const auto& br : n.branches) {
      fresh_for(rest, c, br.var);
      Context sub = rest;
      sub.push_back({br.var, find_choice(plus->choices, br.label)->type});
      d.premises.push_back(check(sub, br.body, c, a));
    }
  }

  void rule(const SendPair& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    if (n.chan == c) {
      d.rule = TypingRule::kTensorR0;
      const auto* t = head<TensorType>(expose_or_fail(a), c, "a tensor");
      exact(ctx, {n.first, n.second});
      same(t->left, lookup(ctx, n.first).type, "first component");
      same(t->right, lookup(ctx, n.second).type, "second component");
      return;
    }
    d.rule = TypingRule::kLolliL0;
    const Binding& b = lookup(ctx, n.chan);
    const auto* l = head<LolliType>(expose_or_fail(b.type), n.chan, "an implication");
    if (n.second != c) fail("the continuation of '" + n.chan + "' must be the offered channel '" + c + "'");
    exact(ctx, {n.first, n.chan});
    same(l->arg, lookup(ctx, n.first).type, "argument");
    same(l->result, a, "result");
  }

  void rule(const CasePair& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    if (n.first == n.second) fail("pattern binds '" + n.first + "' twice");
    if (n.chan == c) {
      d.rule = TypingRule::kLolliR;
      const auto* l = head<LolliType>(expose_or_fail(a), c, "an implication");
      fresh_for(ctx, c, n.first);
      fresh_for(ctx, c, n.second);
      Context sub = ctx;
      sub.push_back({n.first, l->arg});
      d.premises.push_back(check(sub, n.body, n.second, l->result));
      return;
    }
    d.rule = TypingRule::kTensorL;
    const Binding& b = lookup(ctx, n.chan);
    const auto* t = head<TensorType>(expose_or_fail(b.type), n.chan, "a tensor");
    Context sub = without(ctx, n.chan);
    fresh_for(sub, c, n.first);
    fresh_for(sub, c, n.second);
    sub.push_back({n.first, t->left});
    sub.push_back({n.second, t->right});
    d.premises.push_back(check(sub, n.body, c, a));
  }

  void rule(const SendUnit& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    d.rule = TypingRule::kOneR;
    if (n.chan != c) fail("'" + n.chan + ".<>' closes a channel the process does not offer");
    head<OneType>(expose_or_fail(a), c, "the unit");
    exact(ctx, {});
  }

  void rule(const CaseUnit& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    d.rule = TypingRule::kOneL;
    if (n.chan == c) fail("cannot wait on the offered channel '" + c + "'");
    const Binding& b = lookup(ctx, n.chan);
    head<OneType>(expose_or_fail(b.type), n.chan, "the unit");
    d.premises.push_back(check(without(ctx, n.chan), n.body, c, a));
  }

  void rule(const SendShift& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    if (n.chan == c) {
      d.rule = TypingRule::kDownR0;
      const auto* down = head<DownType>(expose_or_fail(a), c, "a down shift");
      exact(ctx, {n.cont});
      same(down->body, lookup(ctx, n.cont).type, "shifted continuation");
      return;
    }
    d.rule = TypingRule::kUpL0;
    const Binding& b = lookup(ctx, n.chan);
    const auto* up = head<UpType>(expose_or_fail(b.type), n.chan, "an up shift");
    if (n.cont != c) fail("the continuation of '" + n.chan + "' must be the offered channel '" + c + "'");
    exact(ctx, {n.chan});
    same(up->body, a, "shifted continuation");
  }

  void rule(const CaseShift& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    if (n.chan == c) {
      d.rule = TypingRule::kUpR;
      const auto* up = head<UpType>(expose_or_fail(a), c, "an up shift");
      fresh_for(ctx, c, n.var);
      d.premises.push_back(check(ctx, n.body, n.var, up->body));
      return;
    }
    d.rule = TypingRule::kDownL;
    const Binding& b = lookup(ctx, n.chan);
    const auto* down = head<DownType>(expose_or_fail(b.type), n.chan, "a down shift");
    Context sub = without(ctx, n.chan);
    fresh_for(sub, c, n.var);
    sub.push_back({n.var, down->body});
    d.premises.push_back(check(sub, n.body, c, a));
  }

  void rule(const Call& n, TypingDerivation& d) {
    const auto& [ctx, p, c, a] = d.goal;
    d.rule = TypingRule::kCall;
    const ProcDef* def = program_.find_proc(n.name);
    if (!def) fail("call to undefined process '" + n.name + "'");
    if (n.result != c) fail("call must offer '" + c + "', not '" + n.result + "'");
    if (n.args.size() != def->params.size()) {
      fail("'" + n.name + "' expects " + std::to_string(def->params.size()) + " arguments, got " +
           std::to_string(n.args.size()));
    }
    if (!context_geq(theory_, def->params, def->result.type->mode)) {
      fail("signature of '" + n.name + "' violates independence");
    }
    exact(ctx, n.args);
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      same(def->params[i].type, lookup(ctx, n.args[i]).type,
           "argument " + std::to_string(i + 1) + " of '" + n.name + "'");
    }
    same(def->result.type, a, "result of '" + n.name + "'");
  }

  const Program& program_;
  const ModeTheory& theory_;
  SourceSpan span_;
};

}  // namespace

std::string rule_name(TypingRule rule) {
  switch (rule) {
    case TypingRule::kId: return "id";
    case TypingRule::kCut: return "cut";
    case TypingRule::kPlusR0: return "+R0";
    case TypingRule::kPlusL: return "+L";
    case TypingRule::kWithR: return "&R";
    case TypingRule::kWithL0: return "&L0";
    case TypingRule::kTensorR0: return "*R0";
    case TypingRule::kTensorL: return "*L";
    case TypingRule::kOneR: return "1R";
    case TypingRule::kOneL: return "1L";
    case TypingRule::kLolliR: return "-oR";
    case TypingRule::kLolliL0: return "-oL0";
    case TypingRule::kUpR: return "upR";
    case TypingRule::kUpL0: return "upL0";
    case TypingRule::kDownR0: return "downR0";
    case TypingRule::kDownL: return "downL";
    case TypingRule::kCall: return "call";
  }
  return "?";
}

CheckResult check(const Program& program, const TypingGoal& goal) {
  CheckResult out;
  std::set<std::string> seen;
  for (const auto& b : goal.context) {
    if (!seen.insert(b.chan).second || b.chan == goal.chan) {
      out.diagnostics.push_back(error("channel '" + b.chan + "' appears twice in the context",
                                      goal.process ? goal.process->span : SourceSpan{}));
      return out;
    }
  }
  for (const auto& b : goal.context) {
    if (auto bad = type_wellformed(program, b.type)) {
      out.diagnostics.push_back(error(*bad, goal.process->span));
      return out;
    }
  }
  if (auto bad = type_wellformed(program, goal.type)) {
    out.diagnostics.push_back(error(*bad, goal.process->span));
    return out;
  }
  try {
    Checker checker(program);
    out.derivation = checker.check(goal.context, goal.process, goal.chan, goal.type);
  } catch (const TypeError& e) {
    out.diagnostics.push_back(e.diag);
  }
  return out;
}

std::vector<DefinitionResult> check_program(const Program& program) {
  std::vector<DefinitionResult> out;
  for (const auto& def : program.procs) {
    CheckResult r = check(program, {def.params, def.body, def.result.chan, def.result.type});
    for (auto& d : r.diagnostics) {
      d.message = "in '" + def.name + "': " + d.message;
      if (d.span.file.empty()) d.span = def.span;
    }
    out.push_back({def.name, std::move(r)});
  }
  return out;
}

std::vector<Diagnostic> check_all(const Program& program) {
  std::vector<Diagnostic> out = check_declarations(program);
  if (has_errors(out)) return out;
  for (auto& r : check_program(program)) {
    for (auto& d : r.result.diagnostics) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace adj
