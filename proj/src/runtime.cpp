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
#include <map>
#include <set>

#include "adjoint/runtime.hpp"

namespace adj {
namespace {

bool is_identity(const ProcObject& o) { return as<Fwd>(o.body) != nullptr; }

bool contains(const std::vector<std::string>& sorted, const std::string& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

// The object using `chan`, if any.
const ProcObject* client_of(const Configuration& config, const std::string& chan) {
  for (const auto& o : config.objects) {
    if (contains(o.uses, chan)) return &o;
  }
  return nullptr;
}

// Message objects whose body sends on a used channel and continues on the
// internal one: b.l(z), b.<d, z>, b.shift(z).
std::optional<std::string> negative_target(const ProcObject& o) {
  if (const auto* s = as<SendLabel>(o.body); s && s->chan != o.internal && s->cont == o.internal) {
    return s->chan;
  }
  if (const auto* s = as<SendPair>(o.body); s && s->chan != o.internal && s->second == o.internal) {
    return s->chan;
  }
  if (const auto* s = as<SendShift>(o.body); s && s->chan != o.internal && s->cont == o.internal) {
    return s->chan;
  }
  return std::nullopt;
}

// Positive message on the internal channel, matched with a receiver's case.
std::optional<StepRule> positive_rule(const ProcObject& msg, const Proc& receiver, const std::string& b) {
  const std::string& x = msg.internal;
  if (const auto* s = as<SendLabel>(msg.body); s && s->chan == x) {
    const auto* c = as<CaseLabel>(receiver);
    if (c && c->chan == b) return StepRule::kPlusC;
  } else if (const auto* s = as<SendPair>(msg.body); s && s->chan == x) {
    const auto* c = as<CasePair>(receiver);
    if (c && c->chan == b) return StepRule::kTensorC;
  } else if (const auto* s = as<SendUnit>(msg.body); s && s->chan == x) {
    const auto* c = as<CaseUnit>(receiver);
    if (c && c->chan == b) return StepRule::kOneC;
  } else if (const auto* s = as<SendShift>(msg.body); s && s->chan == x) {
    const auto* c = as<CaseShift>(receiver);
    if (c && c->chan == b) return StepRule::kDownC;
  }
  return std::nullopt;
}

std::optional<StepRule> negative_rule(const ProcObject& provider, const ProcObject& msg) {
  const std::string& x = provider.internal;
  if (as<SendLabel>(msg.body)) {
    const auto* c = as<CaseLabel>(provider.body);
    if (c && c->chan == x) return StepRule::kWithC;
  } else if (as<SendPair>(msg.body)) {
    const auto* c = as<CasePair>(provider.body);
    if (c && c->chan == x) return StepRule::kLolliC;
  } else if (as<SendShift>(msg.body)) {
    const auto* c = as<CaseShift>(provider.body);
    if (c && c->chan == x) return StepRule::kUpC;
  }
  return std::nullopt;
}

// Nonempty proper subsets of `aliases` that contain aliases[0].
std::vector<std::vector<std::string>> copy_splits(const std::vector<std::string>& aliases) {
  std::vector<std::vector<std::string>> out;
  const std::size_t n = aliases.size();
  if (n < 2 || n > 20) return out;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); mask += 2) {
    std::vector<std::string> part;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) part.push_back(aliases[i]);
    }
    out.push_back(std::move(part));
  }
  return out;
}

// Type of a spawned channel: annotation, call signature, or forwarded channel.
Type spawn_type(const Program& program, const Configuration& config, const Spawn& s) {
  if (s.annotation) return s.annotation;
  if (const auto* call = as<Call>(s.body)) {
    if (const ProcDef* def = program.find_proc(call->name)) return def->result.type;
  }
  if (const auto* fwd = as<Fwd>(s.body); fwd && fwd->dst == s.internal) {
    return config.channel_type(fwd->src);
  }
  return nullptr;
}

class Stepper {
 public:
  Stepper(const Program& program, const Configuration& config, const Instance& inst)
      : program_(program), next_(config), inst_(inst) {}

  Configuration run(TraceEvent* event) {
    for (auto id : inst_.objects) {
      if (!next_.find(id)) fail("object " + std::to_string(id) + " is not in the configuration");
    }
    switch (inst_.rule) {
      case StepRule::kId: identity(); break;
      case StepRule::kCut: cut(); break;
      case StepRule::kDrop: drop(); break;
      case StepRule::kCopy: copy(); break;
      case StepRule::kCall: call(); break;
      case StepRule::kPlusC:
      case StepRule::kTensorC:
      case StepRule::kOneC:
      case StepRule::kDownC: positive(); break;
      case StepRule::kWithC:
      case StepRule::kLolliC:
      case StepRule::kUpC: negative(); break;
    }
    if (event) {
      event->rule = inst_.rule;
      event->consumed = inst_.objects;
      event->produced = produced_;
      event->channels = channels_;
    }
    return std::move(next_);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw StepError("stale or invalid " + rule_name(inst_.rule) + " instance: " + why);
  }

  const ProcObject& object(std::size_t i) const {
    if (i >= inst_.objects.size()) fail("missing participant");
    return *next_.find(inst_.objects[i]);
  }

  void expect_arity(std::size_t n) const {
    if (inst_.objects.size() != n) fail("wrong number of participants");
  }

  void remove(std::uint64_t id) {
    auto& objs = next_.objects;
    objs.erase(std::remove_if(objs.begin(), objs.end(), [&](const ProcObject& o) { return o.id == id; }),
               objs.end());
  }

  // Replaces the consumed objects by the produced ones at the position of the
  // first consumed object.
  void replace(std::vector<ProcObject> produced) {
    auto& objs = next_.objects;
    std::size_t pos = objs.size();
    for (std::size_t i = 0; i < objs.size(); ++i) {
      if (objs[i].id == inst_.objects.front()) pos = i;
    }
    for (auto& o : produced) produced_.push_back(o.id);
    objs.insert(objs.begin() + static_cast<std::ptrdiff_t>(pos), std::make_move_iterator(produced.begin()),
                std::make_move_iterator(produced.end()));
    for (auto id : inst_.objects) remove(id);
  }

  ProcObject forwarder(std::vector<std::string> aliases, const std::string& src) {
    const std::string y = next_.names.fresh("y");
    Type t = next_.channel_type(src);
    return next_.make_object(std::move(aliases), y, make_proc(Fwd{y, src}), std::move(t));
  }

  // Renames the object's internal name when it collides with `incoming`.
  std::pair<std::string, Proc> internal_apart(const ProcObject& o, const std::set<std::string>& incoming) {
    if (!incoming.count(o.internal)) return {o.internal, o.body};
    const std::string fresh = next_.names.fresh(o.internal);
    return {fresh, substitute(o.body, {{o.internal, fresh}}, next_.names)};
  }

  void identity() {
    expect_arity(2);
    const ProcObject provider = object(0);
    const ProcObject fwd = object(1);
    const auto* f = as<Fwd>(fwd.body);
    if (!f || f->dst != fwd.internal || f->src != inst_.channel) fail("second object is not a forwarder");
    if (!contains(provider.aliases, inst_.channel) || provider.id == fwd.id) fail("provider mismatch");
    std::vector<std::string> aliases;
    for (const auto& a : provider.aliases) {
      if (a != inst_.channel) aliases.push_back(a);
    }
    aliases.insert(aliases.end(), fwd.aliases.begin(), fwd.aliases.end());
    channels_ = {inst_.channel};
    replace({next_.make_object(std::move(aliases), provider.internal, provider.body, provider.type)});
  }

  void cut() {
    expect_arity(1);
    const ProcObject o = object(0);
    const auto* s = as<Spawn>(o.body);
    if (!s) fail("head is not a spawn");
    Type t = spawn_type(program_, next_, *s);
    if (!t) fail("spawned channel has no known type");
    std::map<std::string, std::string> renaming;
    std::vector<std::string> fresh;
    for (const auto& a : s->aliases) {
      fresh.push_back(next_.names.fresh(a));
      renaming[a] = fresh.back();
    }
    channels_ = fresh;
    ProcObject child = next_.make_object(fresh, s->internal, s->body, t);
    Proc rest = substitute(s->cont, renaming, next_.names);
    ProcObject parent = next_.make_object(o.aliases, o.internal, rest, o.type);
    replace({std::move(child), std::move(parent)});
  }

  void drop() {
    expect_arity(1);
    const ProcObject o = object(0);
    if (!o.aliases.empty() || is_identity(o)) fail("object has clients or is a forwarder");
    channels_ = o.uses;
    std::vector<ProcObject> out;
    for (const auto& b : o.uses) out.push_back(forwarder({}, b));
    replace(std::move(out));
  }

  void copy() {
    expect_arity(1);
    const ProcObject o = object(0);
    if (is_identity(o)) fail("forwarders are not copied");
    std::vector<std::string> first;
    std::vector<std::string> second;
    for (const auto& a : o.aliases) {
      (std::find(inst_.split.begin(), inst_.split.end(), a) != inst_.split.end() ? first : second).push_back(a);
    }
    if (first.size() != inst_.split.size() || first.empty() || second.empty()) fail("split is not proper");
    channels_ = first;
    std::vector<ProcObject> out;
    std::map<std::string, std::string> left;
    std::map<std::string, std::string> right;
    for (const auto& b : o.uses) {
      left[b] = next_.names.fresh(b);
      right[b] = next_.names.fresh(b);
      out.push_back(forwarder({left[b], right[b]}, b));
    }
    out.push_back(next_.make_object(first, o.internal, freshen(substitute(o.body, left, next_.names), next_.names),
                                    o.type));
    out.push_back(next_.make_object(second, o.internal,
                                    freshen(substitute(o.body, right, next_.names), next_.names), o.type));
    replace(std::move(out));
  }

  void call() {
    expect_arity(1);
    const ProcObject o = object(0);
    const auto* c = as<Call>(o.body);
    if (!c) fail("head is not a call");
    const ProcDef* def = program_.find_proc(c->name);
    if (!def || def->params.size() != c->args.size()) fail("call to undefined process '" + c->name + "'");
    std::map<std::string, std::string> renaming;
    for (std::size_t i = 0; i < def->params.size(); ++i) renaming[def->params[i].chan] = c->args[i];
    renaming[def->result.chan] = c->result;
    channels_ = {c->result};
    Proc body = freshen(substitute(def->body, renaming, next_.names), next_.names);
    replace({next_.make_object(o.aliases, o.internal, std::move(body), o.type)});
  }

  // objects: message provider of `channel`, receiver.
  void positive() {
    expect_arity(2);
    const ProcObject msg = object(0);
    const ProcObject recv = object(1);
    const std::string& b = inst_.channel;
    if (msg.aliases != std::vector<std::string>{b} || !contains(recv.uses, b)) fail("channel mismatch");
    if (positive_rule(msg, recv.body, b) != inst_.rule) fail("bodies do not match the rule");
    channels_ = {b};
    std::set<std::string> incoming(msg.uses.begin(), msg.uses.end());
    auto [internal, body] = internal_apart(recv, incoming);
    Proc next;
    if (const auto* s = as<SendLabel>(msg.body)) {
      const auto* c = as<CaseLabel>(body);
      const Branch* br = nullptr;
      for (const auto& x : c->branches) {
        if (x.label == s->label) br = &x;
      }
      if (!br) fail("receiver has no branch '" + s->label + "'");
      next = substitute(br->body, {{br->var, s->cont}}, next_.names);
    } else if (const auto* s = as<SendPair>(msg.body)) {
      const auto* c = as<CasePair>(body);
      next = substitute(c->body, {{c->first, s->first}, {c->second, s->second}}, next_.names);
    } else if (as<SendUnit>(msg.body)) {
      next = as<CaseUnit>(body)->body;
    } else if (const auto* s = as<SendShift>(msg.body)) {
      const auto* c = as<CaseShift>(body);
      next = substitute(c->body, {{c->var, s->cont}}, next_.names);
    }
    replace({next_.make_object(recv.aliases, internal, std::move(next), recv.type)});
  }

  // objects: case provider of `channel`, message client.
  void negative() {
    expect_arity(2);
    const ProcObject prov = object(0);
    const ProcObject msg = object(1);
    const std::string& b = inst_.channel;
    if (prov.aliases != std::vector<std::string>{b} || negative_target(msg) != b) fail("channel mismatch");
    if (msg.aliases.size() != 1) fail("message object must have a single client");
    if (negative_rule(prov, msg) != inst_.rule) fail("bodies do not match the rule");
    channels_ = {b};
    std::string internal;
    Proc next;
    if (const auto* s = as<SendLabel>(msg.body)) {
      const auto* c = as<CaseLabel>(prov.body);
      const Branch* br = nullptr;
      for (const auto& x : c->branches) {
        if (x.label == s->label) br = &x;
      }
      if (!br) fail("provider has no branch '" + s->label + "'");
      internal = br->var;
      next = br->body;
    } else if (const auto* s = as<SendPair>(msg.body)) {
      const auto* c = as<CasePair>(prov.body);
      internal = c->second == s->first ? next_.names.fresh(c->second) : c->second;
      next = substitute(c->body, {{c->first, s->first}, {c->second, internal}}, next_.names);
    } else {
      const auto* c = as<CaseShift>(prov.body);
      internal = c->var;
      next = c->body;
    }
    replace({next_.make_object(msg.aliases, internal, std::move(next), msg.type)});
  }

  const Program& program_;
  Configuration next_;
  const Instance& inst_;
  std::vector<std::uint64_t> produced_;
  std::vector<std::string> channels_;
};

}  // namespace

std::string rule_name(StepRule rule) {
  switch (rule) {
    case StepRule::kId: return "id";
    case StepRule::kCut: return "cut";
    case StepRule::kDrop: return "drop";
    case StepRule::kCopy: return "copy";
    case StepRule::kPlusC: return "⊕C";
    case StepRule::kWithC: return "&C";
    case StepRule::kTensorC: return "⊗C";
    case StepRule::kLolliC: return "⊸C";
    case StepRule::kOneC: return "1C";
    case StepRule::kDownC: return "↓C";
    case StepRule::kUpC: return "↑C";
    case StepRule::kCall: return "call";
  }
  return "?";
}

bool instance_less(const Instance& a, const Instance& b) {
  return std::tie(a.objects, a.rule, a.channel, a.split) < std::tie(b.objects, b.rule, b.channel, b.split);
}

bool poised(const ProcObject& object) {
  const std::optional<std::string> head = head_channel(object.body);
  return head && *head == object.internal && !as<Fwd>(object.body) && !as<Spawn>(object.body) &&
         !as<Call>(object.body);
}

std::vector<Instance> applicable_rules(const Program& program, const Configuration& config) {
  std::vector<Instance> out;
  for (const auto& o : config.objects) {
    if (const auto* f = as<Fwd>(o.body); f && f->dst == o.internal) {
      if (const ProcObject* p = config.provider_of(f->src); p && p->id != o.id) {
        out.push_back({StepRule::kId, {p->id, o.id}, f->src, {}});
      }
    }
    if (const auto* s = as<Spawn>(o.body); s && spawn_type(program, config, *s)) {
      out.push_back({StepRule::kCut, {o.id}, {}, {}});
    }
    if (const auto* c = as<Call>(o.body); c && program.find_proc(c->name)) {
      out.push_back({StepRule::kCall, {o.id}, {}, {}});
    }
    if (!is_identity(o)) {
      if (o.aliases.empty()) out.push_back({StepRule::kDrop, {o.id}, {}, {}});
      for (auto& split : copy_splits(o.aliases)) out.push_back({StepRule::kCopy, {o.id}, {}, std::move(split)});
    }
    if (o.aliases.size() == 1) {
      const std::string& b = o.aliases[0];
      if (const ProcObject* client = client_of(config, b)) {
        if (auto rule = positive_rule(o, client->body, b)) out.push_back({*rule, {o.id, client->id}, b, {}});
        if (client->aliases.size() == 1 && negative_target(*client) == b) {
          if (auto rule = negative_rule(o, *client)) out.push_back({*rule, {o.id, client->id}, b, {}});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), instance_less);
  return out;
}

Configuration step(const Program& program, const Configuration& config, const Instance& instance,
                   TraceEvent* event) {
  return Stepper(program, config, instance).run(event);
}

Configuration initial_configuration(const Program& program, const std::string& main, std::string* error) {
  Configuration config;
  const ProcDef* def = program.find_proc(main);
  if (!def) {
    if (error) *error = "no process named '" + main + "'";
    return config;
  }
  if (!def->params.empty()) {
    if (error) *error = "'" + main + "' must not take arguments";
    return config;
  }
  config.names.reserve("c0");
  config.names.reserve("c");
  config.objects.push_back(
      config.make_object({"c0"}, "c", make_proc(Call{main, {}, "c"}), def->result.type));
  return config;
}

}  // namespace adj
