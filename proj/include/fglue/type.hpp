/* Copyright 2026 The fglue Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cassert>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fglue {

using NameSet = std::set<std::string>;

/// Returns `base` primed as often as needed to avoid every name in `avoid`.
inline std::string fresh_name(const std::string& base, const NameSet& avoid) {
  std::string name = base + "'";
  while (avoid.count(name)) name += "'";
  return name;
}

/// Second-order propositional type: base sort, type variable, arrow or Pi.
///
/// Types are immutable and share structure; copying is a refcount bump.
/// Sorts and type variables are distinct node kinds, so a sort named `p`
/// is never confused with a variable named `p`.
class Type {
 public:
  enum class Kind { Sort, Var, Arrow, Pi };

  static Type sort(std::string name) {
    return Type(std::make_shared<Node>(Node{Kind::Sort, std::move(name), {}, {}}));
  }
  static Type var(std::string name) {
    return Type(std::make_shared<Node>(Node{Kind::Var, std::move(name), {}, {}}));
  }
  static Type arrow(Type domain, Type codomain) {
    return Type(std::make_shared<Node>(
        Node{Kind::Arrow, {}, std::move(domain.node_), std::move(codomain.node_)}));
  }
  static Type pi(std::string var, Type body) {
    return Type(std::make_shared<Node>(
        Node{Kind::Pi, std::move(var), std::move(body.node_), {}}));
  }

  Kind kind() const { return node_->kind; }
  bool is_sort() const { return kind() == Kind::Sort; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_pi() const { return kind() == Kind::Pi; }

  /// Sort name, variable name, or Pi binder.
  const std::string& name() const { return node_->name; }

  Type domain() const {
    assert(is_arrow());
    return Type(node_->left);
  }
  Type codomain() const {
    assert(is_arrow());
    return Type(node_->right);
  }
  Type body() const {
    assert(is_pi());
    return Type(node_->left);
  }

  bool same_node(const Type& other) const { return node_ == other.node_; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

namespace detail {

inline void collect_free_type_vars(const Type& type, NameSet& bound,
                                   NameSet& out) {
  switch (type.kind()) {
    case Type::Kind::Sort:
      return;
    case Type::Kind::Var:
      if (!bound.count(type.name())) out.insert(type.name());
      return;
    case Type::Kind::Arrow:
      collect_free_type_vars(type.domain(), bound, out);
      collect_free_type_vars(type.codomain(), bound, out);
      return;
    case Type::Kind::Pi: {
      bool inserted = bound.insert(type.name()).second;
      collect_free_type_vars(type.body(), bound, out);
      if (inserted) bound.erase(type.name());
      return;
    }
  }
}

inline void collect_sorts(const Type& type, NameSet& out) {
  switch (type.kind()) {
    case Type::Kind::Sort: out.insert(type.name()); return;
    case Type::Kind::Var: return;
    case Type::Kind::Arrow:
      collect_sorts(type.domain(), out);
      collect_sorts(type.codomain(), out);
      return;
    case Type::Kind::Pi: collect_sorts(type.body(), out); return;
  }
}

// Names bound to the same depth on both sides compare equal; free names
// compare by spelling.
using BinderStack = std::vector<std::string>;

inline int lookup_binder(const BinderStack& stack, const std::string& name) {
  for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i) {
    if (stack[i] == name) return i;
  }
  return -1;
}

inline bool alpha_eq_types(const Type& a, const Type& b, BinderStack& left,
                           BinderStack& right) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Sort:
      return a.name() == b.name();
    case Type::Kind::Var: {
      int i = lookup_binder(left, a.name());
      int j = lookup_binder(right, b.name());
      if (i < 0 && j < 0) return a.name() == b.name();
      return i == j;
    }
    case Type::Kind::Arrow:
      return alpha_eq_types(a.domain(), b.domain(), left, right) &&
             alpha_eq_types(a.codomain(), b.codomain(), left, right);
    case Type::Kind::Pi: {
      left.push_back(a.name());
      right.push_back(b.name());
      bool eq = alpha_eq_types(a.body(), b.body(), left, right);
      left.pop_back();
      right.pop_back();
      return eq;
    }
  }
  return false;
}

}  // namespace detail

inline NameSet free_type_vars(const Type& type) {
  NameSet bound, out;
  detail::collect_free_type_vars(type, bound, out);
  return out;
}

inline NameSet sorts_of(const Type& type) {
  NameSet out;
  detail::collect_sorts(type, out);
  return out;
}

inline bool is_closed(const Type& type) { return free_type_vars(type).empty(); }

inline bool contains_pi(const Type& type) {
  switch (type.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::Var: return false;
    case Type::Kind::Arrow:
      return contains_pi(type.domain()) || contains_pi(type.codomain());
    case Type::Kind::Pi: return true;
  }
  return false;
}

/// Equality up to renaming of Pi binders.
inline bool alpha_eq(const Type& a, const Type& b) {
  if (a.same_node(b)) return true;
  detail::BinderStack left, right;
  return detail::alpha_eq_types(a, b, left, right);
}

inline bool operator==(const Type& a, const Type& b) { return alpha_eq(a, b); }

/// Capture-avoiding `body[var := replacement]`.
inline Type subst_type(const Type& body, const std::string& var,
                       const Type& replacement) {
  switch (body.kind()) {
    case Type::Kind::Sort:
      return body;
    case Type::Kind::Var:
      return body.name() == var ? replacement : body;
    case Type::Kind::Arrow: {
      Type dom = subst_type(body.domain(), var, replacement);
      Type cod = subst_type(body.codomain(), var, replacement);
      if (dom.same_node(body.domain()) && cod.same_node(body.codomain())) {
        return body;
      }
      return Type::arrow(dom, cod);
    }
    case Type::Kind::Pi: {
      if (body.name() == var) return body;
      NameSet inner = free_type_vars(body.body());
      if (!inner.count(var)) return body;
      NameSet repl = free_type_vars(replacement);
      std::string binder = body.name();
      Type inner_body = body.body();
      if (repl.count(binder)) {
        NameSet avoid = repl;
        avoid.insert(inner.begin(), inner.end());
        avoid.insert(var);
        std::string renamed = fresh_name(binder, avoid);
        inner_body = subst_type(inner_body, binder, Type::var(renamed));
        binder = renamed;
      }
      return Type::pi(binder, subst_type(inner_body, var, replacement));
    }
  }
  return body;
}

namespace detail {

inline void print_type(const Type& type, std::string& out) {
  switch (type.kind()) {
    case Type::Kind::Sort:
    case Type::Kind::Var:
      out += type.name();
      return;
    case Type::Kind::Arrow: {
      Type dom = type.domain();
      if (dom.is_arrow() || dom.is_pi()) {
        out += '(';
        print_type(dom, out);
        out += ')';
      } else {
        print_type(dom, out);
      }
      out += " -> ";
      print_type(type.codomain(), out);
      return;
    }
    case Type::Kind::Pi:
      out += "Pi ";
      out += type.name();
      out += ". ";
      print_type(type.body(), out);
      return;
  }
}

}  // namespace detail

/// Prints in the concrete grammar: `Pi p. (p -> p) -> p -> p`.
inline std::string to_string(const Type& type) {
  std::string out;
  detail::print_type(type, out);
  return out;
}

}  // namespace fglue
