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
#include <sstream>

#include "adjoint/logic.hpp"

namespace adj {
namespace {

struct Violation {
  std::string message;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Violation{msg};
}

bool same_context(const Context& a, const Context& b) { return context_equal(a, b); }

// `whole` is the disjoint union of `parts`.
bool splits(const Context& whole, const std::vector<const Context*>& parts) {
  Context joined;
  std::set<std::string> names;
  for (const Context* p : parts) {
    for (const auto& b : *p) {
      if (!names.insert(b.chan).second) return false;
      joined.push_back(b);
    }
  }
  return same_context(whole, joined);
}

Context extend(Context ctx, const std::vector<Binding>& extra) {
  for (const auto& b : extra) ctx.push_back(b);
  return ctx;
}

class ProofChecker {
 public:
  ProofChecker(const ModeTheory& theory, Calculus calculus) : theory_(theory), calculus_(calculus) {}

  std::optional<ProofError> run(const Proof& proof) {
    std::vector<std::size_t> path;
    return visit(proof, path);
  }

 private:
  std::optional<ProofError> visit(const Proof& p, std::vector<std::size_t>& path) {
    try {
      node(p);
    } catch (const Violation& v) {
      return ProofError{path, p.rule, v.message};
    } catch (const ModeError& e) {
      return ProofError{path, p.rule, e.what()};
    }
    for (std::size_t i = 0; i < p.premises.size(); ++i) {
      path.push_back(i);
      if (auto e = visit(p.premises[i], path)) return e;
      path.pop_back();
    }
    return std::nullopt;
  }

  const Binding& principal(const Proof& p) const {
    const Binding* b = find_binding(p.conclusion.antecedents, p.principal);
    require(b != nullptr, "principal '" + p.principal + "' is not an antecedent");
    return *b;
  }

  void arity(const Proof& p, std::size_t n) const {
    require(p.premises.size() == n, "expected " + std::to_string(n) + " premises, found " +
                                        std::to_string(p.premises.size()));
  }

  void vars(const Proof& p, std::size_t n) const {
    require(p.vars.size() == n, "expected " + std::to_string(n) + " variables");
  }

  void premise(const Proof& p, std::size_t i, const Context& ctx, const Type& succ) const {
    const Sequent& s = p.premises[i].conclusion;
    require(type_equal(s.succedent, succ), "premise " + std::to_string(i) + " proves " +
                                               to_string(s.succedent) + ", expected " + to_string(succ));
    require(same_context(s.antecedents, ctx), "premise " + std::to_string(i) + " has context " +
                                                  to_string(s.antecedents) + ", expected " +
                                                  to_string(ctx));
  }

  // New variables must not collide with the rest of the context.
  void fresh(const Context& rest, const std::vector<std::string>& names) const {
    std::set<std::string> seen;
    for (const auto& n : names) {
      require(!find_binding(rest, n), "variable '" + n + "' already in the context");
      require(seen.insert(n).second, "variable '" + n + "' introduced twice");
    }
  }

  void node(const Proof& p) const {
    require(rule_in(p.rule, calculus_), rule_name(p.rule) + " is not a rule of this calculus");
    const Context& ctx = p.conclusion.antecedents;
    const Type& c = p.conclusion.succedent;
    require(c != nullptr, "missing succedent");
    std::set<std::string> names;
    for (const auto& b : ctx) {
      require(names.insert(b.chan).second, "antecedent '" + b.chan + "' appears twice");
      require(theory_.geq(b.type->mode, c->mode),
              "presupposition fails: '" + b.chan + "' at mode " + b.type->mode + " is not >= " + c->mode);
    }
    switch (p.rule) {
      case Rule::kId:
        arity(p, 0);
        require(ctx.size() == 1 && type_equal(ctx[0].type, c), "id needs exactly x : A |- A");
        return;
      case Rule::kCut: {
        arity(p, 2);
        const Type& a = p.cut_type;
        require(a != nullptr, "cut without a cut formula");
        const Context& left = p.premises[0].conclusion.antecedents;
        premise(p, 0, left, a);
        Context right;
        for (const auto& b : ctx) {
          if (!find_binding(left, b.chan)) right.push_back(b);
        }
        require(splits(ctx, {&left, &right}), "cut premises do not split the context");
        fresh(ctx, p.vars);
        std::vector<Binding> copies;
        for (const auto& v : p.vars) copies.push_back({v, a});
        premise(p, 1, extend(right, copies), c);
        for (const auto& b : left) {
          require(theory_.geq(b.type->mode, a->mode), "cut needs '" + b.chan + "' at mode >= " + a->mode);
        }
        require(theory_.geq(a->mode, c->mode), "cut formula mode " + a->mode + " is not >= " + c->mode);
        require(theory_.multiplicity_ok(p.vars.size(), a->mode),
                std::to_string(p.vars.size()) + " copies not allowed at mode " + a->mode);
        return;
      }
      case Rule::kWeaken: {
        arity(p, 1);
        const Binding& x = principal(p);
        require(theory_.sigma(x.type->mode).weakening, "weakening not allowed at mode " + x.type->mode);
        premise(p, 0, without(ctx, x.chan), c);
        return;
      }
      case Rule::kContract: {
        arity(p, 1);
        vars(p, 2);
        const Binding& x = principal(p);
        require(theory_.sigma(x.type->mode).contraction, "contraction not allowed at mode " + x.type->mode);
        Context rest = without(ctx, x.chan);
        fresh(rest, p.vars);
        premise(p, 0, extend(rest, {{p.vars[0], x.type}, {p.vars[1], x.type}}), c);
        return;
      }
      case Rule::kPlusR: {
        arity(p, 1);
        const auto* s = as<PlusType>(c);
        require(s != nullptr, "+R needs an internal choice");
        const Choice* ch = find_choice(s->choices, p.label);
        require(ch != nullptr, "label '" + p.label + "' not in the choice");
        premise(p, 0, ctx, ch->type);
        return;
      }
      case Rule::kPlusR0: {
        arity(p, 0);
        vars(p, 1);
        const auto* s = as<PlusType>(c);
        require(s != nullptr, "+R0 needs an internal choice");
        const Choice* ch = find_choice(s->choices, p.label);
        require(ch != nullptr, "label '" + p.label + "' not in the choice");
        require(same_context(ctx, {{p.vars[0], ch->type}}), "+R0 needs exactly the chosen component");
        return;
      }
      case Rule::kPlusL: {
        const Binding& x = principal(p);
        const auto* s = as<PlusType>(x.type);
        require(s != nullptr, "+L on a non-choice");
        arity(p, s->choices.size());
        vars(p, s->choices.size());
        Context rest = without(ctx, x.chan);
        for (std::size_t i = 0; i < s->choices.size(); ++i) {
          fresh(rest, {p.vars[i]});
          premise(p, i, extend(rest, {{p.vars[i], s->choices[i].type}}), c);
        }
        return;
      }
      case Rule::kWithR: {
        const auto* w = as<WithType>(c);
        require(w != nullptr, "&R needs an external choice");
        arity(p, w->choices.size());
        for (std::size_t i = 0; i < w->choices.size(); ++i) premise(p, i, ctx, w->choices[i].type);
        return;
      }
      case Rule::kWithL: {
        arity(p, 1);
        vars(p, 1);
        const Binding& x = principal(p);
        const auto* w = as<WithType>(x.type);
        require(w != nullptr, "&L on a non-choice");
        const Choice* ch = find_choice(w->choices, p.label);
        require(ch != nullptr, "label '" + p.label + "' not in the choice");
        Context rest = without(ctx, x.chan);
        fresh(rest, p.vars);
        premise(p, 0, extend(rest, {{p.vars[0], ch->type}}), c);
        return;
      }
      case Rule::kWithL0: {
        arity(p, 0);
        const Binding& x = principal(p);
        const auto* w = as<WithType>(x.type);
        require(w != nullptr, "&L0 on a non-choice");
        const Choice* ch = find_choice(w->choices, p.label);
        require(ch != nullptr && type_equal(ch->type, c), "&L0 proves the chosen component");
        require(ctx.size() == 1, "&L0 needs exactly the choice");
        return;
      }
      case Rule::kTensorR: {
        arity(p, 2);
        const auto* t = as<TensorType>(c);
        require(t != nullptr, "*R needs a tensor");
        const Context& l = p.premises[0].conclusion.antecedents;
        const Context& r = p.premises[1].conclusion.antecedents;
        require(splits(ctx, {&l, &r}), "*R premises do not split the context");
        premise(p, 0, l, t->left);
        premise(p, 1, r, t->right);
        return;
      }
      case Rule::kTensorR0: {
        arity(p, 0);
        vars(p, 2);
        const auto* t = as<TensorType>(c);
        require(t != nullptr, "*R0 needs a tensor");
        require(p.vars[0] != p.vars[1], "*R0 components must differ");
        require(same_context(ctx, {{p.vars[0], t->left}, {p.vars[1], t->right}}), "*R0 context mismatch");
        return;
      }
      case Rule::kTensorL: {
        arity(p, 1);
        vars(p, 2);
        const Binding& x = principal(p);
        const auto* t = as<TensorType>(x.type);
        require(t != nullptr, "*L on a non-tensor");
        Context rest = without(ctx, x.chan);
        fresh(rest, p.vars);
        premise(p, 0, extend(rest, {{p.vars[0], t->left}, {p.vars[1], t->right}}), c);
        return;
      }
      case Rule::kOneR:
        arity(p, 0);
        require(as<OneType>(c) != nullptr && ctx.empty(), "1R needs . |- 1");
        return;
      case Rule::kOneL: {
        arity(p, 1);
        const Binding& x = principal(p);
        require(as<OneType>(x.type) != nullptr, "1L on a non-unit");
        premise(p, 0, without(ctx, x.chan), c);
        return;
      }
      case Rule::kLolliR: {
        arity(p, 1);
        vars(p, 1);
        const auto* l = as<LolliType>(c);
        require(l != nullptr, "-oR needs an implication");
        fresh(ctx, p.vars);
        premise(p, 0, extend(ctx, {{p.vars[0], l->arg}}), l->result);
        return;
      }
      case Rule::kLolliL: {
        arity(p, 2);
        vars(p, 1);
        const Binding& x = principal(p);
        const auto* l = as<LolliType>(x.type);
        require(l != nullptr, "-oL on a non-implication");
        Context rest = without(ctx, x.chan);
        const Context& first = p.premises[0].conclusion.antecedents;
        Context second;
        for (const auto& b : rest) {
          if (!find_binding(first, b.chan)) second.push_back(b);
        }
        require(splits(rest, {&first, &second}), "-oL premises do not split the context");
        premise(p, 0, first, l->arg);
        fresh(second, p.vars);
        premise(p, 1, extend(second, {{p.vars[0], l->result}}), c);
        for (const auto& b : first) {
          require(theory_.geq(b.type->mode, x.type->mode), "-oL needs '" + b.chan + "' at mode >= " + x.type->mode);
        }
        return;
      }
      case Rule::kLolliL0: {
        arity(p, 0);
        vars(p, 1);
        const Binding& x = principal(p);
        const auto* l = as<LolliType>(x.type);
        require(l != nullptr, "-oL0 on a non-implication");
        require(p.vars[0] != x.chan, "-oL0 argument must differ from the implication");
        require(type_equal(l->result, c), "-oL0 proves the result");
        require(same_context(ctx, {{p.vars[0], l->arg}, x}), "-oL0 context mismatch");
        return;
      }
      case Rule::kUpR: {
        arity(p, 1);
        const auto* u = as<UpType>(c);
        require(u != nullptr, "upR needs an up shift");
        premise(p, 0, ctx, u->body);
        return;
      }
      case Rule::kUpL: {
        arity(p, 1);
        vars(p, 1);
        const Binding& x = principal(p);
        const auto* u = as<UpType>(x.type);
        require(u != nullptr, "upL on a non-shift");
        require(theory_.geq(u->body->mode, c->mode), "upL needs " + u->body->mode + " >= " + c->mode);
        Context rest = without(ctx, x.chan);
        fresh(rest, p.vars);
        premise(p, 0, extend(rest, {{p.vars[0], u->body}}), c);
        return;
      }
      case Rule::kUpL0: {
        arity(p, 0);
        const Binding& x = principal(p);
        const auto* u = as<UpType>(x.type);
        require(u != nullptr && type_equal(u->body, c), "upL0 proves the shifted body");
        require(ctx.size() == 1, "upL0 needs exactly the shift");
        return;
      }
      case Rule::kDownR: {
        arity(p, 1);
        const auto* d = as<DownType>(c);
        require(d != nullptr, "downR needs a down shift");
        for (const auto& b : ctx) {
          require(theory_.geq(b.type->mode, d->body->mode), "downR needs '" + b.chan + "' at mode >= " + d->body->mode);
        }
        premise(p, 0, ctx, d->body);
        return;
      }
      case Rule::kDownR0: {
        arity(p, 0);
        vars(p, 1);
        const auto* d = as<DownType>(c);
        require(d != nullptr, "downR0 needs a down shift");
        require(same_context(ctx, {{p.vars[0], d->body}}), "downR0 needs exactly the body");
        return;
      }
      case Rule::kDownL: {
        arity(p, 1);
        vars(p, 1);
        const Binding& x = principal(p);
        const auto* d = as<DownType>(x.type);
        require(d != nullptr, "downL on a non-shift");
        Context rest = without(ctx, x.chan);
        fresh(rest, p.vars);
        premise(p, 0, extend(rest, {{p.vars[0], d->body}}), c);
        return;
      }
    }
  }

  const ModeTheory& theory_;
  Calculus calculus_;
};

void print_node(const Proof& p, int depth, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << rule_name(p.rule);
  if (!p.label.empty()) out << "[" << p.label << "]";
  if (!p.principal.empty()) out << " on " << p.principal;
  if (p.rule == Rule::kCut) {
    out << " {";
    for (std::size_t i = 0; i < p.vars.size(); ++i) out << (i ? ", " : "") << p.vars[i];
    out << "} : " << to_string(p.cut_type);
  }
  out << "   " << to_string(p.conclusion) << "\n";
  for (const auto& q : p.premises) print_node(q, depth + 1, out);
}

}  // namespace

std::string rule_name(Rule rule) {
  switch (rule) {
    case Rule::kId: return "id";
    case Rule::kCut: return "cut";
    case Rule::kWeaken: return "weaken";
    case Rule::kContract: return "contract";
    case Rule::kPlusR: return "+R";
    case Rule::kPlusL: return "+L";
    case Rule::kWithR: return "&R";
    case Rule::kWithL: return "&L";
    case Rule::kTensorR: return "*R";
    case Rule::kTensorL: return "*L";
    case Rule::kOneR: return "1R";
    case Rule::kOneL: return "1L";
    case Rule::kLolliR: return "-oR";
    case Rule::kLolliL: return "-oL";
    case Rule::kUpR: return "upR";
    case Rule::kUpL: return "upL";
    case Rule::kDownR: return "downR";
    case Rule::kDownL: return "downL";
    case Rule::kPlusR0: return "+R0";
    case Rule::kWithL0: return "&L0";
    case Rule::kTensorR0: return "*R0";
    case Rule::kLolliL0: return "-oL0";
    case Rule::kUpL0: return "upL0";
    case Rule::kDownR0: return "downR0";
  }
  return "?";
}

bool rule_in(Rule rule, Calculus calculus) {
  switch (rule) {
    case Rule::kId:
    case Rule::kCut:
    case Rule::kPlusL:
    case Rule::kWithR:
    case Rule::kTensorL:
    case Rule::kOneR:
    case Rule::kOneL:
    case Rule::kLolliR:
    case Rule::kUpR:
    case Rule::kDownL: return true;
    case Rule::kWeaken:
    case Rule::kContract:
    case Rule::kPlusR:
    case Rule::kWithL:
    case Rule::kTensorR:
    case Rule::kLolliL:
    case Rule::kUpL:
    case Rule::kDownR: return calculus == Calculus::kStandard;
    case Rule::kPlusR0:
    case Rule::kWithL0:
    case Rule::kTensorR0:
    case Rule::kLolliL0:
    case Rule::kUpL0:
    case Rule::kDownR0: return calculus == Calculus::kAxioms;
  }
  return false;
}

std::string to_string(const ProofError& error) {
  std::string at = "root";
  for (std::size_t i : error.path) at += "." + std::to_string(i);
  return rule_name(error.rule) + " at " + at + ": " + error.message;
}

std::optional<ProofError> check_proof(const ModeTheory& theory, const Proof& proof, Calculus calculus) {
  return ProofChecker(theory, calculus).run(proof);
}

bool cut_free(const Proof& proof) {
  if (proof.rule == Rule::kCut) return false;
  for (const auto& p : proof.premises) {
    if (!cut_free(p)) return false;
  }
  return true;
}

std::size_t proof_size(const Proof& proof) {
  std::size_t n = 1;
  for (const auto& p : proof.premises) n += proof_size(p);
  return n;
}

bool atomic_identities(const Proof& proof) {
  if (proof.rule == Rule::kId) {
    const Type& t = proof.conclusion.succedent;
    return as<AtomType>(t) != nullptr || as<NamedType>(t) != nullptr;
  }
  for (const auto& p : proof.premises) {
    if (!atomic_identities(p)) return false;
  }
  return true;
}

std::string print_proof(const Proof& proof) {
  std::ostringstream out;
  print_node(proof, 0, out);
  return out.str();
}

}  // namespace adj
