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

#include <sstream>

#include "adjoint/frontend.hpp"

namespace adj {
namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

std::string pad(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

std::string call_text(const Call& c) {
  std::string out = c.result + " <- " + c.name + " <-";
  if (!c.args.empty()) out += " " + join(c.args);
  return out;
}

std::string print(const Proc& p, int ind) {
  if (const auto* f = as<Fwd>(p)) return f->dst + " <- " + f->src;
  if (const auto* c = as<Call>(p)) return call_text(*c);
  if (const auto* s = as<Spawn>(p)) {
    std::string out = "{" + join(s->aliases) + "} <- ";
    const auto* call = as<Call>(s->body);
    if (call && call->result == s->internal) {
      out += call->name + " <-";
      if (!call->args.empty()) out += " " + join(call->args);
    } else {
      out += "(nu " + s->internal;
      if (s->annotation) out += " : " + to_string(s->annotation);
      out += ") ";
      if (as<Spawn>(s->body)) {
        out += "(" + print(s->body, ind + 2) + ")";
      } else {
        out += print(s->body, ind + 2);
      }
    }
    return out + " ;\n" + pad(ind) + print(s->cont, ind);
  }
  if (const auto* s = as<SendLabel>(p)) return s->chan + "." + s->label + "(" + s->cont + ")";
  if (const auto* s = as<SendPair>(p)) return s->chan + ".<" + s->first + ", " + s->second + ">";
  if (const auto* s = as<SendUnit>(p)) return s->chan + ".<>";
  if (const auto* s = as<SendShift>(p)) return s->chan + ".shift(" + s->cont + ")";
  std::string head;
  std::vector<std::string> arms;
  if (const auto* c = as<CaseLabel>(p)) {
    head = c->chan;
    for (const auto& b : c->branches) {
      arms.push_back(b.label + "(" + b.var + ") =>\n" + pad(ind + 4) +
                     print(b.body, ind + 4));
    }
  } else if (const auto* c = as<CasePair>(p)) {
    head = c->chan;
    arms.push_back("<" + c->first + ", " + c->second + "> =>\n" + pad(ind + 4) + print(c->body, ind + 4));
  } else if (const auto* c = as<CaseUnit>(p)) {
    head = c->chan;
    arms.push_back("<> =>\n" + pad(ind + 4) + print(c->body, ind + 4));
  } else if (const auto* c = as<CaseShift>(p)) {
    head = c->chan;
    arms.push_back("shift(" + c->var + ") =>\n" + pad(ind + 4) + print(c->body, ind + 4));
  }
  std::string out = "case " + head + " {\n";
  for (std::size_t i = 0; i < arms.size(); ++i) {
    out += pad(ind) + (i ? "| " : "  ") + arms[i] + "\n";
  }
  return out + pad(ind) + "}";
}

std::string props_text(const StructuralProps& p) {
  std::vector<std::string> xs;
  if (p.weakening) xs.push_back("W");
  if (p.contraction) xs.push_back("C");
  return xs.empty() ? "" : " with " + join(xs);
}

}  // namespace

std::string print_process(const Proc& p, int indent) { return print(p, indent); }

std::string print_program(const Program& program) {
  std::ostringstream out;
  for (const auto& m : program.theory.modes()) {
    out << "mode " << m.name << props_text(m.props) << " ;\n";
  }
  for (const auto& o : program.theory.declared_order()) {
    out << "order " << o.higher << " > " << o.lower << " ;\n";
  }
  if (!program.types.empty()) out << "\n";
  for (const auto& t : program.types) {
    out << "type " << t.name << "[" << t.mode << "] = " << to_string(t.body) << " ;\n";
  }
  for (const auto& d : program.procs) {
    out << "\nproc " << d.name << " (";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (i) out << ", ";
      out << d.params[i].chan << " : " << to_string(d.params[i].type);
    }
    out << ") |- (" << d.result.chan << " : " << to_string(d.result.type) << ") =\n  "
        << print(d.body, 2) << "\n";
  }
  return out.str();
}

std::string print_config(const Configuration& config) {
  std::ostringstream out;
  for (const auto& b : config.inputs) out << "input " << b.chan << " : " << to_string(b.type) << " ;\n";
  for (const auto& o : config.objects) {
    out << "proc {" << join(o.aliases) << "} [" << join(o.uses) << "] " << o.internal << " : "
        << to_string(o.type) << " {\n  " << print(o.body, 2) << "\n}\n";
  }
  return out.str();
}

}  // namespace adj
