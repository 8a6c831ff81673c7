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

#include "adjoint/types.hpp"

#include <algorithm>

namespace adj {
namespace {

Type make(std::string mode, decltype(TypeNode::node) node) {
  return std::make_shared<const TypeNode>(TypeNode{std::move(mode), std::move(node)});
}

bool choices_equal(const std::vector<Choice>& a, const std::vector<Choice>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].label != b[i].label || !type_equal(a[i].type, b[i].type)) return false;
  }
  return true;
}

// Precedence: 0 = lolli, 1 = tensor, 2 = prefix or primary.
int precedence(const Type& t) {
  if (as<LolliType>(t)) return 0;
  if (as<TensorType>(t)) return 1;
  return 2;
}

std::string print(const Type& t, int min_prec) {
  std::string out;
  if (const auto* a = as<AtomType>(t)) {
    out = a->name + "[" + t->mode + "]";
  } else if (const auto* l = as<LolliType>(t)) {
    out = print(l->arg, 1) + " -o " + print(l->result, 0);
  } else if (const auto* p = as<TensorType>(t)) {
    out = print(p->left, 2) + " * " + print(p->right, 2);
  } else if (as<OneType>(t)) {
    out = "1[" + t->mode + "]";
  } else if (const auto* s = as<PlusType>(t); s || as<WithType>(t)) {
    const auto& choices = s ? s->choices : as<WithType>(t)->choices;
    out = s ? "+{" : "&{";
    for (std::size_t i = 0; i < choices.size(); ++i) {
      if (i) out += ", ";
      out += choices[i].label + " : " + print(choices[i].type, 0);
    }
    out += "}";
  } else if (const auto* u = as<UpType>(t)) {
    out = "up[" + t->mode + "] " + print(u->body, 2);
  } else if (const auto* d = as<DownType>(t)) {
    out = "down[" + t->mode + "] " + print(d->body, 2);
  } else if (const auto* n = as<NamedType>(t)) {
    out = n->name;
  }
  if (precedence(t) < min_prec) return "(" + out + ")";
  return out;
}

}  // namespace

Type make_atom(std::string name, std::string mode) {
  return make(std::move(mode), AtomType{std::move(name)});
}
Type make_lolli(Type arg, Type result) {
  std::string mode = arg->mode;
  return make(std::move(mode), LolliType{std::move(arg), std::move(result)});
}
Type make_tensor(Type left, Type right) {
  std::string mode = left->mode;
  return make(std::move(mode), TensorType{std::move(left), std::move(right)});
}
Type make_one(std::string mode) { return make(std::move(mode), OneType{}); }
Type make_plus(std::vector<Choice> choices, std::string mode) {
  return make(std::move(mode), PlusType{std::move(choices)});
}
Type make_with(std::vector<Choice> choices, std::string mode) {
  return make(std::move(mode), WithType{std::move(choices)});
}
Type make_up(std::string outer_mode, Type body) {
  return make(std::move(outer_mode), UpType{std::move(body)});
}
Type make_down(std::string outer_mode, Type body) {
  return make(std::move(outer_mode), DownType{std::move(body)});
}
Type make_named(std::string name, std::string mode) {
  return make(std::move(mode), NamedType{std::move(name)});
}
Type make_binary_plus(Type left, Type right) {
  std::string mode = left->mode;
  return make_plus({{"pi1", std::move(left)}, {"pi2", std::move(right)}}, std::move(mode));
}
Type make_binary_with(Type left, Type right) {
  std::string mode = left->mode;
  return make_with({{"pi1", std::move(left)}, {"pi2", std::move(right)}}, std::move(mode));
}

bool type_equal(const Type& a, const Type& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->mode != b->mode || a->node.index() != b->node.index()) return false;
  if (const auto* x = as<AtomType>(a)) return x->name == as<AtomType>(b)->name;
  if (const auto* x = as<LolliType>(a)) {
    const auto* y = as<LolliType>(b);
    return type_equal(x->arg, y->arg) && type_equal(x->result, y->result);
  }
  if (const auto* x = as<TensorType>(a)) {
    const auto* y = as<TensorType>(b);
    return type_equal(x->left, y->left) && type_equal(x->right, y->right);
  }
  if (as<OneType>(a)) return true;
  if (const auto* x = as<PlusType>(a)) return choices_equal(x->choices, as<PlusType>(b)->choices);
  if (const auto* x = as<WithType>(a)) return choices_equal(x->choices, as<WithType>(b)->choices);
  if (const auto* x = as<UpType>(a)) return type_equal(x->body, as<UpType>(b)->body);
  if (const auto* x = as<DownType>(a)) return type_equal(x->body, as<DownType>(b)->body);
  return as<NamedType>(a)->name == as<NamedType>(b)->name;
}

std::string to_string(const Type& type) {
  if (!type) return "<none>";
  return print(type, 0);
}

const Choice* find_choice(const std::vector<Choice>& choices, const std::string& label) {
  for (const auto& c : choices) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

int type_size(const Type& t) {
  if (const auto* l = as<LolliType>(t)) return 1 + type_size(l->arg) + type_size(l->result);
  if (const auto* p = as<TensorType>(t)) return 1 + type_size(p->left) + type_size(p->right);
  if (const auto* s = as<PlusType>(t); s || as<WithType>(t)) {
    int n = 1;
    for (const auto& c : s ? s->choices : as<WithType>(t)->choices) n += type_size(c.type);
    return n;
  }
  if (const auto* u = as<UpType>(t)) return 1 + type_size(u->body);
  if (const auto* d = as<DownType>(t)) return 1 + type_size(d->body);
  return 1;
}

const Binding* find_binding(const Context& ctx, const std::string& chan) {
  for (const auto& b : ctx) {
    if (b.chan == chan) return &b;
  }
  return nullptr;
}

Context without(const Context& ctx, const std::string& chan) {
  Context out;
  out.reserve(ctx.size());
  for (const auto& b : ctx) {
    if (b.chan != chan) out.push_back(b);
  }
  return out;
}

std::string to_string(const Context& ctx) {
  if (ctx.empty()) return "(.)";
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].chan + " : " + to_string(ctx[i].type);
  }
  return out;
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedents.size(); ++i) {
    if (i) out += ", ";
    out += s.antecedents[i].chan + " : " + to_string(s.antecedents[i].type);
  }
  return out + (out.empty() ? "|- " : " |- ") + to_string(s.succedent);
}

bool context_equal(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const Binding& x) {
    const Binding* y = find_binding(b, x.chan);
    return y && type_equal(x.type, y->type);
  });
}

}  // namespace adj
