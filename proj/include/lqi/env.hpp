#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lqi/types.hpp"

namespace lqi {

/// Ordered typing environment. Extension is persistent: it shares the
/// prefix and never reorders bindings.
class Env {
 public:
  Env() = default;

  Env extended(std::string name, Scheme scheme) const;
  Env extended(std::string name, LiquidType type) const {
    return extended(std::move(name), Scheme::mono(std::move(type)));
  }

  // Latest binding of `name`.
  const Scheme* lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup(name) != nullptr; }
  // Base type of a monomorphic base-shaped binding.
  std::optional<BaseType> base_type_of(const std::string& name) const;

  std::vector<std::pair<std::string, Scheme>> bindings() const;
  std::set<std::string> names() const;
  bool empty() const { return head_ == nullptr; }
  std::size_t size() const { return head_ ? head_->depth : 0; }

 private:
  struct Node {
    std::string name;
    Scheme scheme;
    std::shared_ptr<const Node> next;
    std::size_t depth;
  };
  explicit Env(std::shared_ptr<const Node> head) : head_(std::move(head)) {}
  std::shared_ptr<const Node> head_;
};

std::string to_string(const Env& env);

// Fun arm with its binder renamed away from every name bound in `env`.
Arm enter_binder(const Env& env, const Arm& arm);

}  // namespace lqi
