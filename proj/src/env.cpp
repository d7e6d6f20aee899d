#include "lqi/env.hpp"

#include <algorithm>

namespace lqi {

Env Env::extended(std::string name, Scheme scheme) const {
  std::size_t depth = size() + 1;
  return Env(std::make_shared<const Node>(Node{std::move(name), std::move(scheme), head_, depth}));
}

const Scheme* Env::lookup(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get()) {
    if (n->name == name) return &n->scheme;
  }
  return nullptr;
}

std::optional<BaseType> Env::base_type_of(const std::string& name) const {
  const Scheme* s = lookup(name);
  if (!s || !s->is_mono()) return std::nullopt;
  const auto& shape = *s->body.shape();
  if (shape.kind != SimpleType::Kind::Base) return std::nullopt;
  return shape.base;
}

std::vector<std::pair<std::string, Scheme>> Env::bindings() const {
  std::vector<std::pair<std::string, Scheme>> out;
  for (const Node* n = head_.get(); n; n = n->next.get()) out.emplace_back(n->name, n->scheme);
  std::reverse(out.begin(), out.end());
  return out;
}

std::set<std::string> Env::names() const {
  std::set<std::string> out;
  for (const Node* n = head_.get(); n; n = n->next.get()) out.insert(n->name);
  return out;
}

std::string to_string(const Env& env) {
  std::string out;
  for (const auto& [name, scheme] : env.bindings()) {
    if (!out.empty()) out += "; ";
    out += name + " : " + to_string(scheme);
  }
  return out.empty() ? "." : out;
}

Arm enter_binder(const Env& env, const Arm& arm) {
  if (arm.kind != Arm::Kind::Fun || !env.contains(arm.name)) return arm;
  std::set<std::string> avoid = env.names();
  auto fv = free_vars(arm);
  avoid.insert(fv.begin(), fv.end());
  auto cfv = free_vars(*arm.cod);
  avoid.insert(cfv.begin(), cfv.end());
  std::string binder = fresh_name(arm.name, avoid);
  return Arm::fun(binder, *arm.dom, codomain_at(arm, binder));
}

}  // namespace lqi
