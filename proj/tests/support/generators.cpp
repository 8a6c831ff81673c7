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

#include "generators.hpp"

#include <algorithm>
#include <map>

#include "adjoint/runtime.hpp"

namespace adj::testing {
namespace {

template <typename T>
const T& choose(Rng& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

int below(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

Proof node(Rule rule, Context ctx, Type succ, std::vector<Proof> premises = {}) {
  Proof p;
  p.rule = rule;
  p.conclusion = {std::move(ctx), std::move(succ)};
  p.premises = std::move(premises);
  return p;
}

Context with(Context ctx, const Binding& b) {
  ctx.push_back(b);
  return ctx;
}

std::vector<std::string> mode_names(const ModeTheory& theory) {
  std::vector<std::string> out;
  for (const auto& m : theory.modes()) out.push_back(m.name);
  return out;
}

void collect_names(const Proof& p, std::set<std::string>& out) {
  for (const auto& b : p.conclusion.antecedents) out.insert(b.chan);
  if (!p.principal.empty()) out.insert(p.principal);
  out.insert(p.vars.begin(), p.vars.end());
  for (const auto& q : p.premises) collect_names(q, out);
}

}  // namespace

ModeTheory random_theory(Rng& rng, std::size_t n_modes) {
  std::vector<ModeDecl> modes;
  std::vector<OrderDecl> order;
  for (std::size_t i = 0; i < n_modes; ++i) {
    modes.push_back({"m" + std::to_string(i), {coin(rng), coin(rng)}});
  }
  for (std::size_t i = 0; i < n_modes; ++i) {
    for (std::size_t j = i + 1; j < n_modes; ++j) {
      if (coin(rng, 0.45)) order.push_back({modes[i].name, modes[j].name});
    }
  }
  const ModeTheory shape = ModeTheory::build(modes, order);
  // Lower indices are higher in the order; propagate properties upward.
  for (std::size_t j = n_modes; j-- > 0;) {
    for (std::size_t i = 0; i < j; ++i) {
      if (shape.geq(modes[i].name, modes[j].name)) {
        modes[i].props.weakening = modes[i].props.weakening || modes[j].props.weakening;
        modes[i].props.contraction = modes[i].props.contraction || modes[j].props.contraction;
      }
    }
  }
  return ModeTheory::build(std::move(modes), std::move(order));
}

Program bare_program(const ModeTheory& theory) {
  Program p;
  p.theory = theory;
  return p;
}

std::string random_mode(Rng& rng, const ModeTheory& theory) { return choose(rng, mode_names(theory)); }

Type random_type(Rng& rng, const ModeTheory& theory, const std::string& mode, const TypeOptions& options) {
  auto leaf = [&]() -> Type {
    if (options.atoms && !options.positive_only && coin(rng, 0.6)) {
      return make_atom(coin(rng) ? "A" : "B", mode);
    }
    return make_one(mode);
  };
  if (options.depth <= 0) return leaf();
  TypeOptions sub = options;
  sub.depth = options.depth - 1;
  std::vector<std::string> lower;
  std::vector<std::string> higher;
  for (const auto& m : mode_names(theory)) {
    if (theory.geq(mode, m)) lower.push_back(m);
    if (theory.geq(m, mode)) higher.push_back(m);
  }
  const int kind = below(rng, options.positive_only ? 5 : 8);
  auto choices = [&]() {
    std::vector<Choice> out{{"l0", random_type(rng, theory, mode, sub)}};
    if (coin(rng, 0.7)) out.push_back({"l1", random_type(rng, theory, mode, sub)});
    return out;
  };
  switch (kind) {
    case 0: return leaf();
    case 1: return make_plus(choices(), mode);
    case 2: return make_tensor(random_type(rng, theory, mode, sub), random_type(rng, theory, mode, sub));
    case 3:
      if (options.shifts) return make_down(mode, random_type(rng, theory, choose(rng, higher), sub));
      return leaf();
    case 4: return make_one(mode);
    case 5: return make_with(choices(), mode);
    case 6: return make_lolli(random_type(rng, theory, mode, sub), random_type(rng, theory, mode, sub));
    default:
      if (options.shifts) return make_up(mode, random_type(rng, theory, choose(rng, lower), sub));
      return leaf();
  }
}

Proof rename_proof(const Proof& p, const std::function<std::string(const std::string&)>& rename) {
  Proof out = p;
  for (auto& b : out.conclusion.antecedents) b.chan = rename(b.chan);
  if (!out.principal.empty()) out.principal = rename(out.principal);
  for (auto& v : out.vars) v = rename(v);
  for (auto& q : out.premises) q = rename_proof(q, rename);
  return out;
}

ProofPool::ProofPool(Rng& rng, const ModeTheory& theory, ProofOptions options)
    : rng_(rng), theory_(theory), options_(options) {
  for (const auto& m : mode_names(theory_)) {
    pool_.push_back(node(Rule::kOneR, {}, make_one(m)));
    for (int i = 0; i < 2; ++i) {
      const std::string x = fresh();
      Type a = random_type(rng_, theory_, m, {1, options_.atoms, true, false});
      pool_.push_back(node(Rule::kId, {{x, a}}, a));
    }
  }
}

std::string ProofPool::fresh() { return "v" + std::to_string(counter_++); }

const Proof& ProofPool::pick() {
  // Favor recent, larger proofs.
  const std::size_t n = pool_.size();
  if (coin(rng_, 0.6) && n > 4) {
    return pool_[std::uniform_int_distribution<std::size_t>(n / 2, n - 1)(rng_)];
  }
  return choose(rng_, pool_);
}

Proof ProofPool::renamed_apart(const Proof& p) {
  std::map<std::string, std::string> map;
  return rename_proof(p, [&](const std::string& x) {
    auto it = map.find(x);
    if (it == map.end()) it = map.emplace(x, fresh()).first;
    return it->second;
  });
}

bool ProofPool::ctx_geq(const Context& ctx, const std::string& m) const {
  return std::all_of(ctx.begin(), ctx.end(), [&](const Binding& b) { return theory_.geq(b.type->mode, m); });
}

std::vector<std::string> ProofPool::modes_between(const std::string& hi, const std::string& lo) const {
  std::vector<std::string> out;
  for (const auto& m : mode_names(theory_)) {
    if (theory_.geq(hi, m) && theory_.geq(m, lo)) out.push_back(m);
  }
  return out;
}

void ProofPool::grow() {
  for (std::size_t i = 0; i < options_.pool_steps; ++i) {
    if (auto p = apply(below(rng_, 18))) {
      if (proof_size(*p) <= options_.max_size && p->conclusion.antecedents.size() <= options_.max_context) {
        pool_.push_back(std::move(*p));
      }
    }
  }
}

std::vector<Proof> ProofPool::closed() const {
  std::vector<Proof> out;
  for (const auto& p : pool_) {
    if (p.conclusion.antecedents.empty()) out.push_back(p);
  }
  return out;
}

std::optional<Proof> ProofPool::apply(int rule) {
  const TypeOptions small{1, options_.atoms, true, false};
  const Proof& pi = pick();
  const Context& ctx = pi.conclusion.antecedents;
  const Type& c = pi.conclusion.succedent;
  auto some_antecedent = [&]() -> const Binding* { return ctx.empty() ? nullptr : &choose(rng_, ctx); };

  switch (rule) {
    case 0: {
      // Identities at inhabited types give cuts something to close.
      const std::vector<Proof> done = closed();
      Type a = coin(rng_) && !done.empty()
                   ? choose(rng_, done).conclusion.succedent
                   : random_type(rng_, theory_, random_mode(rng_, theory_), small);
      return node(Rule::kId, {{fresh(), a}}, a);
    }
    case 1: return node(Rule::kOneR, {}, make_one(random_mode(rng_, theory_)));
    case 2: {
      std::vector<Choice> chs{{"l0", c}};
      if (coin(rng_)) chs.push_back({"l1", random_type(rng_, theory_, c->mode, small)});
      if (chs.size() == 2 && coin(rng_)) std::swap(chs[0].type, chs[1].type);
      const std::string label = type_equal(chs[0].type, c) ? "l0" : "l1";
      Proof p = node(Rule::kPlusR, ctx, make_plus(std::move(chs), c->mode), {pi});
      p.label = label;
      return p;
    }
    case 3: {
      const Binding* y = some_antecedent();
      if (!y) return std::nullopt;
      const bool two = coin(rng_);
      std::vector<Choice> chs{{"l0", y->type}};
      if (two) chs.push_back({"l1", y->type});
      const std::string x = fresh();
      Proof p = node(Rule::kPlusL, with(without(ctx, y->chan), {x, make_plus(chs, y->type->mode)}), c);
      p.principal = x;
      for (std::size_t i = 0; i < chs.size(); ++i) {
        p.premises.push_back(pi);
        p.vars.push_back(y->chan);
      }
      return p;
    }
    case 4: {
      std::vector<Choice> chs{{"l0", c}};
      if (coin(rng_)) chs.push_back({"l1", c});
      Proof p = node(Rule::kWithR, ctx, make_with(chs, c->mode));
      for (std::size_t i = 0; i < chs.size(); ++i) p.premises.push_back(pi);
      return p;
    }
    case 5: {
      const Binding* y = some_antecedent();
      if (!y) return std::nullopt;
      std::vector<Choice> chs{{"l0", y->type}};
      if (coin(rng_)) chs.push_back({"l1", random_type(rng_, theory_, y->type->mode, small)});
      if (chs.size() == 2 && coin(rng_)) std::swap(chs[0].label, chs[1].label);
      const std::string label = chs[0].label;
      const std::string x = fresh();
      Proof p = node(Rule::kWithL, with(without(ctx, y->chan), {x, make_with(chs, y->type->mode)}), c, {pi});
      p.principal = x;
      p.label = label;
      p.vars = {y->chan};
      return p;
    }
    case 6: {
      Proof right = renamed_apart(pick());
      if (right.conclusion.succedent->mode != c->mode) return std::nullopt;
      Context all = ctx;
      for (const auto& b : right.conclusion.antecedents) all.push_back(b);
      Type t = make_tensor(c, right.conclusion.succedent);
      return node(Rule::kTensorR, std::move(all), std::move(t), {pi, std::move(right)});
    }
    case 7: {
      if (ctx.size() < 2) return std::nullopt;
      const Binding y = choose(rng_, ctx);
      const Binding z = choose(rng_, ctx);
      if (y.chan == z.chan || y.type->mode != z.type->mode) return std::nullopt;
      const std::string x = fresh();
      Context rest = without(without(ctx, y.chan), z.chan);
      Proof p = node(Rule::kTensorL, with(rest, {x, make_tensor(y.type, z.type)}), c, {pi});
      p.principal = x;
      p.vars = {y.chan, z.chan};
      return p;
    }
    case 8: {
      const auto ms = modes_between(random_mode(rng_, theory_), c->mode);
      if (ms.empty()) return std::nullopt;
      const std::string x = fresh();
      Proof p = node(Rule::kOneL, with(ctx, {x, make_one(choose(rng_, ms))}), c, {pi});
      p.principal = x;
      return p;
    }
    case 9: {
      const Binding* y = some_antecedent();
      if (!y || y->type->mode != c->mode) return std::nullopt;
      Proof p = node(Rule::kLolliR, without(ctx, y->chan), make_lolli(y->type, c), {pi});
      p.vars = {y->chan};
      return p;
    }
    case 10: {
      const Binding* y = some_antecedent();
      if (!y) return std::nullopt;
      Proof arg = renamed_apart(pick());
      const Type& a = arg.conclusion.succedent;
      if (a->mode != y->type->mode || !ctx_geq(arg.conclusion.antecedents, a->mode)) return std::nullopt;
      const std::string x = fresh();
      Context all = arg.conclusion.antecedents;
      for (const auto& b : without(ctx, y->chan)) all.push_back(b);
      all.push_back({x, make_lolli(a, y->type)});
      Proof p = node(Rule::kLolliL, std::move(all), c, {std::move(arg), pi});
      p.principal = x;
      p.vars = {y->chan};
      return p;
    }
    case 11: {
      std::vector<std::string> ms;
      for (const auto& m : mode_names(theory_)) {
        if (theory_.geq(m, c->mode) && ctx_geq(ctx, m)) ms.push_back(m);
      }
      if (ms.empty()) return std::nullopt;
      return node(Rule::kUpR, ctx, make_up(choose(rng_, ms), c), {pi});
    }
    case 12: {
      const Binding* y = some_antecedent();
      if (!y) return std::nullopt;
      const auto ms = modes_between(random_mode(rng_, theory_), y->type->mode);
      if (ms.empty()) return std::nullopt;
      const std::string x = fresh();
      Proof p = node(Rule::kUpL, with(without(ctx, y->chan), {x, make_up(choose(rng_, ms), y->type)}), c, {pi});
      p.principal = x;
      p.vars = {y->chan};
      return p;
    }
    case 13: {
      const auto ms = modes_between(c->mode, random_mode(rng_, theory_));
      if (ms.empty()) return std::nullopt;
      return node(Rule::kDownR, ctx, make_down(choose(rng_, ms), c), {pi});
    }
    case 14: {
      const Binding* y = some_antecedent();
      if (!y) return std::nullopt;
      const auto ms = modes_between(y->type->mode, c->mode);
      const std::string x = fresh();
      Proof p = node(Rule::kDownL, with(without(ctx, y->chan), {x, make_down(choose(rng_, ms), y->type)}), c, {pi});
      p.principal = x;
      p.vars = {y->chan};
      return p;
    }
    case 15: {
      std::vector<std::string> ms;
      for (const auto& m : mode_names(theory_)) {
        if (theory_.sigma(m).weakening && theory_.geq(m, c->mode)) ms.push_back(m);
      }
      if (ms.empty()) return std::nullopt;
      const std::string x = fresh();
      Proof p = node(Rule::kWeaken, with(ctx, {x, random_type(rng_, theory_, choose(rng_, ms), small)}), c, {pi});
      p.principal = x;
      return p;
    }
    case 16: {
      for (const auto& y : ctx) {
        for (const auto& z : ctx) {
          if (y.chan < z.chan && type_equal(y.type, z.type) && theory_.sigma(y.type->mode).contraction) {
            const std::string x = fresh();
            Proof p = node(Rule::kContract, with(without(without(ctx, y.chan), z.chan), {x, y.type}), c, {pi});
            p.principal = x;
            p.vars = {y.chan, z.chan};
            return p;
          }
        }
      }
      return std::nullopt;
    }
    default: {
      // Cut: the picked proof provides; look for a client with matching antecedents.
      const std::vector<Proof> done = closed();
      Proof left = renamed_apart(coin(rng_) && !done.empty() ? choose(rng_, done) : pi);
      const Type& a = left.conclusion.succedent;
      const std::string& m = a->mode;
      std::vector<const Proof*> clients;
      for (const auto& q : pool_) {
        if (!theory_.geq(m, q.conclusion.succedent->mode)) continue;
        const bool matches = std::any_of(q.conclusion.antecedents.begin(), q.conclusion.antecedents.end(),
                                         [&](const Binding& b) { return type_equal(b.type, a); });
        if (matches || theory_.sigma(m).weakening) clients.push_back(&q);
      }
      if (clients.empty()) return std::nullopt;
      const Proof& right = *choose(rng_, clients);
      std::vector<std::string> copies;
      for (const auto& b : right.conclusion.antecedents) {
        if (type_equal(b.type, a) && (copies.empty() || coin(rng_, 0.3))) copies.push_back(b.chan);
      }
      if (!copies.empty() && coin(rng_, 0.15)) copies.clear();
      if (!theory_.multiplicity_ok(copies.size(), m)) {
        if (copies.size() > 1) copies.resize(1);
        if (!theory_.multiplicity_ok(copies.size(), m)) return std::nullopt;
      }
      Context all = left.conclusion.antecedents;
      for (const auto& b : right.conclusion.antecedents) {
        if (std::find(copies.begin(), copies.end(), b.chan) == copies.end()) all.push_back(b);
      }
      Proof p = node(Rule::kCut, std::move(all), right.conclusion.succedent, {left, right});
      p.vars = std::move(copies);
      p.cut_type = a;
      return p;
    }
  }
}

std::optional<Proof> random_proof(Rng& rng, const ModeTheory& theory, const ProofOptions& options) {
  ProofPool pool(rng, theory, options);
  pool.grow();
  const auto& all = pool.proofs();
  std::vector<const Proof*> big;
  for (const auto& p : all) {
    if (proof_size(p) >= 3) big.push_back(&p);
  }
  if (big.empty()) return std::nullopt;
  return *choose(rng, big);
}

namespace {

std::string next_name(std::uint64_t& counter) { return "h" + std::to_string(counter++); }

std::optional<Proof> inhabit_at(Rng& rng, const ModeTheory& theory, const Type& t, std::uint64_t& counter) {
  if (as<OneType>(t)) return node(Rule::kOneR, {}, t);
  if (const auto* s = as<PlusType>(t)) {
    std::vector<std::size_t> order(s->choices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      if (auto q = inhabit_at(rng, theory, s->choices[i].type, counter)) {
        Proof p = node(Rule::kPlusR, {}, t, {std::move(*q)});
        p.label = s->choices[i].label;
        return p;
      }
    }
    return std::nullopt;
  }
  if (const auto* w = as<WithType>(t)) {
    Proof p = node(Rule::kWithR, {}, t);
    for (const auto& ch : w->choices) {
      auto q = inhabit_at(rng, theory, ch.type, counter);
      if (!q) return std::nullopt;
      p.premises.push_back(std::move(*q));
    }
    return p;
  }
  if (const auto* x = as<TensorType>(t)) {
    auto l = inhabit_at(rng, theory, x->left, counter);
    auto r = inhabit_at(rng, theory, x->right, counter);
    if (!l || !r) return std::nullopt;
    return node(Rule::kTensorR, {}, t, {std::move(*l), std::move(*r)});
  }
  if (const auto* l = as<LolliType>(t)) {
    const std::string y = next_name(counter);
    Proof body;
    if (type_equal(l->arg, l->result)) {
      body = node(Rule::kId, {{y, l->arg}}, l->result);
    } else if (theory.sigma(l->arg->mode).weakening) {
      auto q = inhabit_at(rng, theory, l->result, counter);
      if (!q) return std::nullopt;
      body = node(Rule::kWeaken, {{y, l->arg}}, l->result, {std::move(*q)});
      body.principal = y;
    } else {
      return std::nullopt;
    }
    Proof p = node(Rule::kLolliR, {}, t, {std::move(body)});
    p.vars = {y};
    return p;
  }
  if (const auto* u = as<UpType>(t)) {
    auto q = inhabit_at(rng, theory, u->body, counter);
    if (!q) return std::nullopt;
    return node(Rule::kUpR, {}, t, {std::move(*q)});
  }
  if (const auto* d = as<DownType>(t)) {
    auto q = inhabit_at(rng, theory, d->body, counter);
    if (!q) return std::nullopt;
    return node(Rule::kDownR, {}, t, {std::move(*q)});
  }
  return std::nullopt;
}

}  // namespace

std::optional<Proof> inhabit(Rng& rng, const ModeTheory& theory, const Type& type) {
  std::uint64_t counter = 0;
  return inhabit_at(rng, theory, type, counter);
}

std::optional<Proof> close_proof(Rng& rng, const ModeTheory& theory, const Proof& proof) {
  std::set<std::string> taken;
  collect_names(proof, taken);
  std::uint64_t counter = 0;
  auto fresh = [&]() {
    std::string n;
    do {
      n = "k" + std::to_string(counter++);
    } while (taken.count(n));
    taken.insert(n);
    return n;
  };
  Proof out = proof;
  while (!out.conclusion.antecedents.empty()) {
    const Binding x = out.conclusion.antecedents.front();
    auto provider = inhabit(rng, theory, x.type);
    if (!provider) return std::nullopt;
    std::map<std::string, std::string> map;
    Proof left = rename_proof(*provider, [&](const std::string& n) {
      auto it = map.find(n);
      if (it == map.end()) it = map.emplace(n, fresh()).first;
      return it->second;
    });
    Context rest = without(out.conclusion.antecedents, x.chan);
    Type c = out.conclusion.succedent;
    Proof cut = node(Rule::kCut, std::move(rest), std::move(c), {std::move(left), std::move(out)});
    cut.vars = {x.chan};
    cut.cut_type = x.type;
    out = std::move(cut);
  }
  return out;
}

namespace {

class Extractor {
 public:
  explicit Extractor(NameSupply& names) : names_(names) {}

  Proc run(const Proof& p, const std::string& x) {
    const Context& ctx = p.conclusion.antecedents;
    const Type& c = p.conclusion.succedent;
    auto sub = [&](std::size_t i, const std::string& offer) { return run(p.premises[i], offer); };
    switch (p.rule) {
      case Rule::kId: return make_proc(Fwd{x, ctx[0].chan});
      case Rule::kCut: {
        const std::string z = fresh("z");
        return make_proc(Spawn{p.vars, z, p.cut_type, sub(0, z), sub(1, x)});
      }
      case Rule::kWeaken:
      case Rule::kContract: {
        const std::string u = fresh("u");
        return make_proc(Spawn{p.vars, u, nullptr, make_proc(Fwd{u, p.principal}), sub(0, x)});
      }
      case Rule::kPlusR: {
        const std::string w = fresh("w");
        const std::string y = fresh("y");
        const Type& t = find_choice(as<PlusType>(c)->choices, p.label)->type;
        return make_proc(Spawn{{y}, w, t, sub(0, w), make_proc(SendLabel{x, p.label, y})});
      }
      case Rule::kPlusL: {
        const auto* s = as<PlusType>(find_binding(ctx, p.principal)->type);
        CaseLabel out{p.principal, {}};
        for (std::size_t i = 0; i < s->choices.size(); ++i) {
          out.branches.push_back({s->choices[i].label, p.vars[i], sub(i, x)});
        }
        return make_proc(std::move(out));
      }
      case Rule::kWithR: {
        const auto* w = as<WithType>(c);
        CaseLabel out{x, {}};
        for (std::size_t i = 0; i < w->choices.size(); ++i) {
          const std::string v = fresh("w");
          out.branches.push_back({w->choices[i].label, v, sub(i, v)});
        }
        return make_proc(std::move(out));
      }
      case Rule::kWithL: {
        const std::string w = fresh("w");
        const auto* t = as<WithType>(find_binding(ctx, p.principal)->type);
        return make_proc(Spawn{{p.vars[0]}, w, find_choice(t->choices, p.label)->type,
                               make_proc(SendLabel{p.principal, p.label, w}), sub(0, x)});
      }
      case Rule::kTensorR: {
        const auto* t = as<TensorType>(c);
        const std::string a = fresh("a");
        const std::string a1 = fresh("a");
        const std::string b = fresh("b");
        const std::string b1 = fresh("b");
        Proc inner = make_proc(Spawn{{b}, b1, t->right, sub(1, b1), make_proc(SendPair{x, a, b})});
        return make_proc(Spawn{{a}, a1, t->left, sub(0, a1), std::move(inner)});
      }
      case Rule::kTensorL: return make_proc(CasePair{p.principal, p.vars[0], p.vars[1], sub(0, x)});
      case Rule::kOneR: return make_proc(SendUnit{x});
      case Rule::kOneL: return make_proc(CaseUnit{p.principal, sub(0, x)});
      case Rule::kLolliR: {
        const std::string w = fresh("w");
        return make_proc(CasePair{x, p.vars[0], w, sub(0, w)});
      }
      case Rule::kLolliL: {
        const auto* l = as<LolliType>(find_binding(ctx, p.principal)->type);
        const std::string a = fresh("a");
        const std::string a1 = fresh("a");
        const std::string w = fresh("w");
        Proc inner = make_proc(Spawn{{p.vars[0]}, w, l->result, make_proc(SendPair{p.principal, a, w}), sub(1, x)});
        return make_proc(Spawn{{a}, a1, l->arg, sub(0, a1), std::move(inner)});
      }
      case Rule::kUpR: {
        const std::string w = fresh("w");
        return make_proc(CaseShift{x, w, sub(0, w)});
      }
      case Rule::kUpL: {
        const auto* u = as<UpType>(find_binding(ctx, p.principal)->type);
        const std::string w = fresh("w");
        return make_proc(Spawn{{p.vars[0]}, w, u->body, make_proc(SendShift{p.principal, w}), sub(0, x)});
      }
      case Rule::kDownR: {
        const auto* d = as<DownType>(c);
        const std::string a = fresh("a");
        const std::string a1 = fresh("a");
        return make_proc(Spawn{{a}, a1, d->body, sub(0, a1), make_proc(SendShift{x, a})});
      }
      case Rule::kDownL: return make_proc(CaseShift{p.principal, p.vars[0], sub(0, x)});
      default: throw std::invalid_argument("extract_process expects a standard-calculus proof");
    }
  }

 private:
  std::string fresh(const std::string& base) { return names_.fresh(base); }

  NameSupply& names_;
};

}  // namespace

Proc extract_process(const Proof& proof, const std::string& offer, NameSupply& names) {
  std::set<std::string> taken;
  collect_names(proof, taken);
  names.reserve_all(taken);
  names.reserve(offer);
  return Extractor(names).run(proof, offer);
}

Configuration configuration_from_proof(const Proof& proof) {
  Configuration config;
  std::set<std::string> taken;
  collect_names(proof, taken);
  config.names.reserve_all(taken);
  const std::string c0 = config.names.fresh("c0");
  const std::string x = config.names.fresh("c");
  Proc body = extract_process(proof, x, config.names);
  config.inputs = proof.conclusion.antecedents;
  config.objects.push_back(config.make_object({c0}, x, std::move(body), proof.conclusion.succedent));
  config.reserve_names();
  return config;
}

Sequent random_single_mode_sequent(Rng& rng, const ModeTheory& theory, const std::string& mode,
                                   std::size_t max_size) {
  const TypeOptions opts{2, true, false, false};
  for (;;) {
    Sequent s;
    const int n = below(rng, 3);
    std::size_t size = 0;
    for (int i = 0; i < n; ++i) {
      Type t = random_type(rng, theory, mode, opts);
      size += static_cast<std::size_t>(type_size(t));
      s.antecedents.push_back({"x" + std::to_string(i), std::move(t)});
    }
    s.succedent = random_type(rng, theory, mode, opts);
    size += static_cast<std::size_t>(type_size(s.succedent));
    if (size <= max_size) return s;
  }
}

std::vector<ConfigSample> reachable_configurations(Rng& rng, const Program& program, const Configuration& start,
                                                   std::size_t max_objects, std::size_t max_steps) {
  std::vector<ConfigSample> out;
  const Context outputs = output_interface(start);
  Configuration config = start;
  for (std::size_t i = 0; i <= max_steps && config.objects.size() <= max_objects; ++i) {
    out.push_back({config, outputs});
    const auto all = applicable_rules(program, config);
    if (all.empty()) break;
    config = step(program, config, choose(rng, all));
  }
  return out;
}

std::vector<ConfigSample> mutants(Rng& rng, const Program& program, const ConfigSample& sample) {
  std::vector<ConfigSample> out;
  const Configuration& base = sample.config;
  if (base.objects.empty()) return out;
  auto pick_index = [&]() { return std::uniform_int_distribution<std::size_t>(0, base.objects.size() - 1)(rng); };
  const TypeOptions small{1, true, true, false};

  {  // retype an object
    ConfigSample m = sample;
    auto& o = m.config.objects[pick_index()];
    o.type = random_type(rng, program.theory, coin(rng) ? o.type->mode : random_mode(rng, program.theory), small);
    for (auto& b : m.outputs) {
      if (std::binary_search(o.aliases.begin(), o.aliases.end(), b.chan)) b.type = o.type;
    }
    out.push_back(std::move(m));
  }
  {  // drop an object
    ConfigSample m = sample;
    m.config.objects.erase(m.config.objects.begin() + static_cast<std::ptrdiff_t>(pick_index()));
    out.push_back(std::move(m));
  }
  {  // extra alias, exposed at the interface
    ConfigSample m = sample;
    auto& o = m.config.objects[pick_index()];
    const std::string a = m.config.names.fresh("extra");
    o.aliases.push_back(a);
    std::sort(o.aliases.begin(), o.aliases.end());
    m.outputs.push_back({a, o.type});
    out.push_back(std::move(m));
  }
  {  // lose an alias
    ConfigSample m = sample;
    auto& o = m.config.objects[pick_index()];
    if (!o.aliases.empty()) {
      const std::string a = o.aliases.back();
      o.aliases.pop_back();
      m.outputs = without(m.outputs, a);
      out.push_back(std::move(m));
    }
  }
  if (!sample.outputs.empty()) {  // forget an output
    ConfigSample m = sample;
    m.outputs.erase(m.outputs.begin() + below(rng, static_cast<int>(m.outputs.size())));
    out.push_back(std::move(m));
  }
  {  // rename a used channel
    ConfigSample m = sample;
    const std::size_t i = pick_index();
    const ProcObject& o = m.config.objects[i];
    if (!o.uses.empty()) {
      const std::string from = choose(rng, o.uses);
      const std::string to = m.config.names.fresh(from);
      Proc body = substitute(o.body, {{from, to}}, m.config.names);
      ProcObject fresh = m.config.make_object(o.aliases, o.internal, body, o.type);
      m.config.objects[i] = std::move(fresh);
      out.push_back(std::move(m));
    }
  }
  if (sample.outputs.size() >= 2) {  // swap two output types
    ConfigSample m = sample;
    std::swap(m.outputs[0].type, m.outputs[1].type);
    out.push_back(std::move(m));
  }
  {  // duplicate an object under a new id
    ConfigSample m = sample;
    ProcObject copy = m.config.objects[pick_index()];
    copy.id = m.config.next_id++;
    m.config.objects.push_back(std::move(copy));
    out.push_back(std::move(m));
  }
  {  // add a clientless unit message
    ConfigSample m = sample;
    const std::string x = m.config.names.fresh("g");
    m.config.objects.push_back(
        m.config.make_object({}, x, make_proc(SendUnit{x}), make_one(random_mode(rng, program.theory))));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace adj::testing
