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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fglue/error.hpp"
#include "fglue/type.hpp"

namespace fglue {

/// Role of a constant in the logical language being glued.
enum class ConstFlag { Predicate, Connective, Quantifier, Choice, Function };

inline std::optional<ConstFlag> parse_flag(const std::string& text) {
  if (text == "predicate") return ConstFlag::Predicate;
  if (text == "connective") return ConstFlag::Connective;
  if (text == "quantifier") return ConstFlag::Quantifier;
  if (text == "choice") return ConstFlag::Choice;
  if (text == "function") return ConstFlag::Function;
  return std::nullopt;
}

inline std::string flag_name(ConstFlag flag) {
  switch (flag) {
    case ConstFlag::Predicate: return "predicate";
    case ConstFlag::Connective: return "connective";
    case ConstFlag::Quantifier: return "quantifier";
    case ConstFlag::Choice: return "choice";
    case ConstFlag::Function: return "function";
  }
  return "?";
}

struct ConstantDecl {
  Type type;
  /// Unflagged constants are non-logical: they may appear in lexicon
  /// terms but must be reduced away before readback.
  std::optional<ConstFlag> flag;
};

/// Declared base sorts and typed constants. The loader in glue.hpp
/// validates the shape of logical constants; the struct itself only keeps
/// declarations in order.
struct Signature {
  std::set<std::string> sorts;
  std::map<std::string, ConstantDecl> constants;
  std::vector<std::string> constant_order;

  bool has_sort(const std::string& name) const { return sorts.count(name) > 0; }

  const ConstantDecl* find(const std::string& name) const {
    auto it = constants.find(name);
    return it == constants.end() ? nullptr : &it->second;
  }

  void declare_sort(const std::string& name) {
    if (sorts.count(name) || constants.count(name)) {
      throw Error(ErrorKind::DuplicateName, "'" + name + "' declared twice");
    }
    sorts.insert(name);
  }

  void declare_constant(const std::string& name, Type type,
                        std::optional<ConstFlag> flag = std::nullopt) {
    if (sorts.count(name) || constants.count(name)) {
      throw Error(ErrorKind::DuplicateName, "'" + name + "' declared twice");
    }
    constants.emplace(name, ConstantDecl{std::move(type), flag});
    constant_order.push_back(name);
  }

  /// Sorts `e` and `t` with no constants.
  static Signature minimal() {
    Signature sig;
    sig.sorts = {"e", "t"};
    return sig;
  }
};

}  // namespace fglue
