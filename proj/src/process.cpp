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

#include "adjoint/process.hpp"

#include <algorithm>

namespace adj {
namespace {

void collect_free(const Proc& p, std::set<std::string>& out);

// Free names of `p` minus `bound`, added to `out`.
void collect_free_under(const Proc& p, const std::vector<std::string>& bound,
                        std::set<std::string>& out) {
  std::set<std::string> inner;
  collect_free(p, inner);
  for (const auto& b : bound) inner.erase(b);
  out.insert(inner.begin(), inner.end());
}

void collect_free(const Proc& p, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Fwd>) {
          out.insert(n.dst);
          out.insert(n.src);
        } else if constexpr (std::is_same_v<T, Spawn>) {
          collect_free_under(n.body, {n.internal}, out);
          collect_free_under(n.cont, n.aliases, out);
        } else if constexpr (std::is_same_v<T, SendLabel>) {
          out.insert(n.chan);
          out.insert(n.cont);
        } else if constexpr (std::is_same_v<T, CaseLabel>) {
          out.insert(n.chan);
          for (const auto& b : n.branches) collect_free_under(b.body, {b.var}, out);
        } else if constexpr (std::is_same_v<T, SendPair>) {
          out.insert(n.chan);
          out.insert(n.first);
          out.insert(n.second);
        } else if constexpr (std::is_same_v<T, CasePair>) {
          out.insert(n.chan);
          collect_free_under(n.body, {n.first, n.second}, out);
        } else if constexpr (std::is_same_v<T, SendUnit>) {
          out.insert(n.chan);
        } else if constexpr (std::is_same_v<T, CaseUnit>) {
          out.insert(n.chan);
          collect_free(n.body, out);
        } else if constexpr (std::is_same_v<T, SendShift>) {
          out.insert(n.chan);
          out.insert(n.cont);
        } else if constexpr (std::is_same_v<T, CaseShift>) {
          out.insert(n.chan);
          collect_free_under(n.body, {n.var}, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          out.insert(n.args.begin(), n.args.end());
          out.insert(n.result);
        }
      },
      p->node);
}

void collect_all(const Proc& p, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Fwd>) {
          out.insert({n.dst, n.src});
        } else if constexpr (std::is_same_v<T, Spawn>) {
          out.insert(n.aliases.begin(), n.aliases.end());
          out.insert(n.internal);
          collect_all(n.body, out);
          collect_all(n.cont, out);
        } else if constexpr (std::is_same_v<T, SendLabel>) {
          out.insert({n.chan, n.cont});
        } else if constexpr (std::is_same_v<T, CaseLabel>) {
          out.insert(n.chan);
          for (const auto& b : n.branches) {
            out.insert(b.var);
            collect_all(b.body, out);
          }
        } else if constexpr (std::is_same_v<T, SendPair>) {
          out.insert({n.chan, n.first, n.second});
        } else if constexpr (std::is_same_v<T, CasePair>) {
          out.insert({n.chan, n.first, n.second});
          collect_all(n.body, out);
        } else if constexpr (std::is_same_v<T, SendUnit>) {
          out.insert(n.chan);
        } else if constexpr (std::is_same_v<T, CaseUnit>) {
          out.insert(n.chan);
          collect_all(n.body, out);
        } else if constexpr (std::is_same_v<T, SendShift>) {
          out.insert({n.chan, n.cont});
        } else if constexpr (std::is_same_v<T, CaseShift>) {
          out.insert({n.chan, n.var});
          collect_all(n.body, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          out.insert(n.args.begin(), n.args.end());
          out.insert(n.result);
        }
      },
      p->node);
}

using Env = std::map<std::string, std::string>;

class Renamer {
 public:
  Renamer(NameSupply& names, bool fresh_all) : names_(names), fresh_all_(fresh_all) {}

  Proc run(const Proc& p, const Env& env) {
    return std::visit([&](const auto& n) { return make_proc(go(n, env), p->span); }, p->node);
  }

 private:
  static std::string look(const Env& env, const std::string& name) {
    auto it = env.find(name);
    return it == env.end() ? name : it->second;
  }

  bool captures(const Env& env, const std::string& binder) const {
    return std::any_of(env.begin(), env.end(),
                       [&](const auto& kv) { return kv.second == binder && kv.first != binder; });
  }

  // Chooses the new name for `binder` and records it in `env`.
  std::string bind(Env& env, const std::string& binder) {
    std::string target = binder;
    if (fresh_all_ || captures(env, binder)) target = names_.fresh(binder);
    if (target == binder) {
      env.erase(binder);
    } else {
      env[binder] = target;
    }
    return target;
  }

  Fwd go(const Fwd& n, const Env& env) { return {look(env, n.dst), look(env, n.src)}; }

  Spawn go(const Spawn& n, const Env& env) {
    Spawn out;
    out.annotation = n.annotation;
    Env body_env = env;
    out.internal = bind(body_env, n.internal);
    out.body = run(n.body, body_env);
    Env cont_env = env;
    for (const auto& a : n.aliases) out.aliases.push_back(bind(cont_env, a));
    out.cont = run(n.cont, cont_env);
    return out;
  }

  SendLabel go(const SendLabel& n, const Env& env) {
    return {look(env, n.chan), n.label, look(env, n.cont)};
  }

  CaseLabel go(const CaseLabel& n, const Env& env) {
    CaseLabel out{look(env, n.chan), {}};
    for (const auto& b : n.branches) {
      Env inner = env;
      std::string var = bind(inner, b.var);
      out.branches.push_back({b.label, var, run(b.body, inner)});
    }
    return out;
  }

  SendPair go(const SendPair& n, const Env& env) {
    return {look(env, n.chan), look(env, n.first), look(env, n.second)};
  }

  CasePair go(const CasePair& n, const Env& env) {
    Env inner = env;
    std::string first = bind(inner, n.first);
    std::string second = bind(inner, n.second);
    return {look(env, n.chan), first, second, run(n.body, inner)};
  }

  SendUnit go(const SendUnit& n, const Env& env) { return {look(env, n.chan)}; }

  CaseUnit go(const CaseUnit& n, const Env& env) { return {look(env, n.chan), run(n.body, env)}; }

  SendShift go(const SendShift& n, const Env& env) { return {look(env, n.chan), look(env, n.cont)}; }

  CaseShift go(const CaseShift& n, const Env& env) {
    Env inner = env;
    std::string var = bind(inner, n.var);
    return {look(env, n.chan), var, run(n.body, inner)};
  }

  Call go(const Call& n, const Env& env) {
    Call out{n.name, {}, look(env, n.result)};
    for (const auto& a : n.args) out.args.push_back(look(env, a));
    return out;
  }

  NameSupply& names_;
  bool fresh_all_;
};

struct AlphaEq {
  std::map<std::string, int> left;
  std::map<std::string, int> right;
  int depth = 0;

  bool same(const std::string& a, const std::string& b) const {
    auto ia = left.find(a);
    auto ib = right.find(b);
    if (ia == left.end() || ib == right.end()) return ia == left.end() && ib == right.end() && a == b;
    return ia->second == ib->second;
  }

  // Binds a pair of binders for the duration of `f`.
  template <typename F>
  bool under(const std::vector<std::pair<std::string, std::string>>& binders, F f) {
    AlphaEq saved = *this;
    for (const auto& [a, b] : binders) {
      ++depth;
      left[a] = depth;
      right[b] = depth;
    }
    bool r = f();
    *this = saved;
    return r;
  }

  bool eq(const Proc& a, const Proc& b) {
    if (a->node.index() != b->node.index()) return false;
    if (const auto* x = as<Fwd>(a)) {
      const auto* y = as<Fwd>(b);
      return same(x->dst, y->dst) && same(x->src, y->src);
    }
    if (const auto* x = as<Spawn>(a)) {
      const auto* y = as<Spawn>(b);
      if (x->aliases.size() != y->aliases.size()) return false;
      if (!type_equal(x->annotation, y->annotation)) return false;
      if (!under({{x->internal, y->internal}}, [&] { return eq(x->body, y->body); })) return false;
      std::vector<std::pair<std::string, std::string>> pairs;
      for (std::size_t i = 0; i < x->aliases.size(); ++i) pairs.emplace_back(x->aliases[i], y->aliases[i]);
      return under(pairs, [&] { return eq(x->cont, y->cont); });
    }
    if (const auto* x = as<SendLabel>(a)) {
      const auto* y = as<SendLabel>(b);
      return x->label == y->label && same(x->chan, y->chan) && same(x->cont, y->cont);
    }
    if (const auto* x = as<CaseLabel>(a)) {
      const auto* y = as<CaseLabel>(b);
      if (!same(x->chan, y->chan) || x->branches.size() != y->branches.size()) return false;
      for (std::size_t i = 0; i < x->branches.size(); ++i) {
        const auto& bx = x->branches[i];
        const auto& by = y->branches[i];
        if (bx.label != by.label) return false;
        if (!under({{bx.var, by.var}}, [&] { return eq(bx.body, by.body); })) return false;
      }
      return true;
    }
    if (const auto* x = as<SendPair>(a)) {
      const auto* y = as<SendPair>(b);
      return same(x->chan, y->chan) && same(x->first, y->first) && same(x->second, y->second);
    }
    if (const auto* x = as<CasePair>(a)) {
      const auto* y = as<CasePair>(b);
      return same(x->chan, y->chan) &&
             under({{x->first, y->first}, {x->second, y->second}}, [&] { return eq(x->body, y->body); });
    }
    if (const auto* x = as<SendUnit>(a)) return same(x->chan, as<SendUnit>(b)->chan);
    if (const auto* x = as<CaseUnit>(a)) {
      const auto* y = as<CaseUnit>(b);
      return same(x->chan, y->chan) && eq(x->body, y->body);
    }
    if (const auto* x = as<SendShift>(a)) {
      const auto* y = as<SendShift>(b);
      return same(x->chan, y->chan) && same(x->cont, y->cont);
    }
    if (const auto* x = as<CaseShift>(a)) {
      const auto* y = as<CaseShift>(b);
      return same(x->chan, y->chan) && under({{x->var, y->var}}, [&] { return eq(x->body, y->body); });
    }
    const auto* x = as<Call>(a);
    const auto* y = as<Call>(b);
    if (x->name != y->name || x->args.size() != y->args.size() || !same(x->result, y->result)) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i) {
      if (!same(x->args[i], y->args[i])) return false;
    }
    return true;
  }
};

}  // namespace

std::set<std::string> free_channels(const Proc& p) {
  std::set<std::string> out;
  collect_free(p, out);
  return out;
}

std::set<std::string> all_names(const Proc& p) {
  std::set<std::string> out;
  collect_all(p, out);
  return out;
}

std::optional<std::string> head_channel(const Proc& p) {
  if (const auto* n = as<SendLabel>(p)) return n->chan;
  if (const auto* n = as<CaseLabel>(p)) return n->chan;
  if (const auto* n = as<SendPair>(p)) return n->chan;
  if (const auto* n = as<CasePair>(p)) return n->chan;
  if (const auto* n = as<SendUnit>(p)) return n->chan;
  if (const auto* n = as<CaseUnit>(p)) return n->chan;
  if (const auto* n = as<SendShift>(p)) return n->chan;
  if (const auto* n = as<CaseShift>(p)) return n->chan;
  return std::nullopt;
}

Proc substitute(const Proc& p, const std::map<std::string, std::string>& renaming,
                NameSupply& names) {
  for (const auto& [from, to] : renaming) names.reserve(to);
  names.reserve_all(all_names(p));
  return Renamer(names, false).run(p, renaming);
}

Proc freshen(const Proc& p, NameSupply& names) {
  names.reserve_all(all_names(p));
  return Renamer(names, true).run(p, {});
}

bool alpha_equivalent(const Proc& a, const Proc& b) { return AlphaEq{}.eq(a, b); }

}  // namespace adj
