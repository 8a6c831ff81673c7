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

#include "adjoint/program.hpp"

#include <set>

namespace adj {

const TypeDef* Program::find_type(const std::string& name) const {
  for (const auto& t : types) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const ProcDef* Program::find_proc(const std::string& name) const {
  for (const auto& p : procs) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Type unfold(const Program& program, const Type& named) {
  const auto* ref = as<NamedType>(named);
  if (!ref) return named;
  const TypeDef* def = program.find_type(ref->name);
  if (!def) throw UnboundName("unbound type name '" + ref->name + "'");
  return def->body;
}

Type expose(const Program& program, const Type& type) {
  Type t = type;
  std::set<std::string> seen;
  while (const auto* ref = as<NamedType>(t)) {
    if (!seen.insert(ref->name).second) {
      throw UnboundName("type '" + ref->name + "' is not contractive");
    }
    t = unfold(program, t);
  }
  return t;
}

namespace {

std::optional<std::string> check_choices(const Program& program, const std::vector<Choice>& choices,
                                         const std::string& mode) {
  if (choices.empty()) return "empty label set";
  std::set<std::string> labels;
  for (const auto& c : choices) {
    if (!labels.insert(c.label).second) return "duplicate label '" + c.label + "'";
    if (!c.type) return "missing type for label '" + c.label + "'";
    if (c.type->mode != mode) {
      return "label '" + c.label + "' has mode " + c.type->mode + " inside a choice at mode " + mode;
    }
    if (auto e = type_wellformed(program, c.type)) return e;
  }
  return std::nullopt;
}

bool positive(const Program& program, const Type& t, std::set<std::string>& visiting) {
  if (const auto* ref = as<NamedType>(t)) {
    if (!visiting.insert(ref->name).second) return true;
    const TypeDef* def = program.find_type(ref->name);
    return def && positive(program, def->body, visiting);
  }
  if (as<OneType>(t)) return true;
  if (const auto* p = as<TensorType>(t)) {
    return positive(program, p->left, visiting) && positive(program, p->right, visiting);
  }
  if (const auto* s = as<PlusType>(t)) {
    for (const auto& c : s->choices) {
      if (!positive(program, c.type, visiting)) return false;
    }
    return true;
  }
  if (const auto* d = as<DownType>(t)) return positive(program, d->body, visiting);
  return false;
}

}  // namespace

std::optional<std::string> type_wellformed(const Program& program, const Type& t) {
  if (!t) return "missing type";
  const ModeTheory& theory = program.theory;
  if (!theory.has_mode(t->mode)) return "undeclared mode '" + t->mode + "'";
  const std::string& m = t->mode;
  auto same_mode = [&](const Type& child, const char* what) -> std::optional<std::string> {
    if (!child) return std::string("missing ") + what;
    if (child->mode != m) {
      return std::string(what) + " has mode " + child->mode + " but the connective is at mode " + m;
    }
    return type_wellformed(program, child);
  };
  if (as<AtomType>(t) || as<OneType>(t)) return std::nullopt;
  if (const auto* l = as<LolliType>(t)) {
    if (auto e = same_mode(l->arg, "argument")) return e;
    return same_mode(l->result, "result");
  }
  if (const auto* p = as<TensorType>(t)) {
    if (auto e = same_mode(p->left, "left operand")) return e;
    return same_mode(p->right, "right operand");
  }
  if (const auto* s = as<PlusType>(t)) return check_choices(program, s->choices, m);
  if (const auto* w = as<WithType>(t)) return check_choices(program, w->choices, m);
  if (const auto* u = as<UpType>(t)) {
    if (!u->body) return "missing shift body";
    if (!theory.has_mode(u->body->mode)) return "undeclared mode '" + u->body->mode + "'";
    if (!theory.geq(m, u->body->mode)) {
      return "up shift from " + u->body->mode + " to " + m + " requires " + m + " >= " +
             u->body->mode;
    }
    return type_wellformed(program, u->body);
  }
  if (const auto* d = as<DownType>(t)) {
    if (!d->body) return "missing shift body";
    if (!theory.has_mode(d->body->mode)) return "undeclared mode '" + d->body->mode + "'";
    if (!theory.geq(d->body->mode, m)) {
      return "down shift from " + d->body->mode + " to " + m + " requires " + d->body->mode +
             " >= " + m;
    }
    return type_wellformed(program, d->body);
  }
  const auto* ref = as<NamedType>(t);
  const TypeDef* def = program.find_type(ref->name);
  if (!def) return "unbound type name '" + ref->name + "'";
  if (def->mode != m) {
    return "type '" + ref->name + "' is defined at mode " + def->mode + ", used at mode " + m;
  }
  try {
    expose(program, t);
  } catch (const UnboundName& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

bool purely_positive(const Program& program, const Type& type) {
  std::set<std::string> visiting;
  return positive(program, type, visiting);
}

bool context_geq(const ModeTheory& theory, const Context& ctx, const std::string& k) {
  return all_geq(theory, ctx, k, [](const Binding& b) -> const std::string& { return b.type->mode; });
}

std::vector<Diagnostic> check_declarations(const Program& program) {
  std::vector<Diagnostic> diags;
  for (const auto& v : program.theory.validate()) {
    diags.push_back(error("mode theory is not monotone: " + v.message));
  }
  std::set<std::string> names;
  for (const auto& def : program.types) {
    if (!names.insert(def.name).second) {
      diags.push_back(error("duplicate type definition '" + def.name + "'", def.span));
    }
    if (!program.theory.has_mode(def.mode)) {
      diags.push_back(error("type '" + def.name + "' uses undeclared mode '" + def.mode + "'", def.span));
      continue;
    }
    if (auto e = type_wellformed(program, def.body)) {
      diags.push_back(error("in type '" + def.name + "': " + *e, def.span));
      continue;
    }
    if (def.body->mode != def.mode) {
      diags.push_back(error("type '" + def.name + "' is declared at mode " + def.mode +
                                " but its body is at mode " + def.body->mode,
                            def.span));
    }
    try {
      expose(program, def.body);
    } catch (const UnboundName& e) {
      diags.push_back(error(std::string("in type '") + def.name + "': " + e.what(), def.span));
    }
  }
  names.clear();
  for (const auto& def : program.procs) {
    if (!names.insert(def.name).second) {
      diags.push_back(error("duplicate process definition '" + def.name + "'", def.span));
    }
    std::set<std::string> chans;
    bool ok = true;
    for (const auto& b : def.params) {
      if (!chans.insert(b.chan).second) {
        diags.push_back(error("duplicate parameter '" + b.chan + "' in '" + def.name + "'", def.span));
        ok = false;
      }
      if (auto e = type_wellformed(program, b.type)) {
        diags.push_back(error("parameter '" + b.chan + "' of '" + def.name + "': " + *e, def.span));
        ok = false;
      }
    }
    if (chans.count(def.result.chan)) {
      diags.push_back(error("result channel '" + def.result.chan + "' of '" + def.name +
                                "' is also a parameter",
                            def.span));
      ok = false;
    }
    if (auto e = type_wellformed(program, def.result.type)) {
      diags.push_back(error("result of '" + def.name + "': " + *e, def.span));
      ok = false;
    }
    if (!ok) continue;
    for (const auto& b : def.params) {
      if (!program.theory.geq(b.type->mode, def.result.type->mode)) {
        diags.push_back(error("declaration of independence violated in '" + def.name +
                                  "': parameter '" + b.chan + "' at mode " + b.type->mode +
                                  " is not >= result mode " + def.result.type->mode,
                              def.span));
      }
    }
  }
  return diags;
}

}  // namespace adj
