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

#include <stdexcept>
#include <string>
#include <string_view>

namespace fglue {

/// 1-based source position. line == 0 means the node was built in code.
struct SourcePos {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorKind {
  Syntax,
  UnboundVariable,
  UndeclaredConstant,
  UndeclaredSort,
  TypeMismatch,
  NotAFunction,
  NotAPiType,
  SideConditionViolation,
  DuplicateName,
  FuelExhausted,
  NotNormal,
  NotTypeT,
  NonLogicalConstant,
  IllFormedHead,
  PiNotOrderable,
  NoMatch,
  Ambiguous,
  MissingSortT,
  MalformedFlag,
  UnknownWord,
  UnknownCoercion,
  MissingInstantiation,
  BadCoercion,
  Io,
};

inline std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::UndeclaredConstant: return "UndeclaredConstant";
    case ErrorKind::UndeclaredSort: return "UndeclaredSort";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::NotAPiType: return "NotAPiType";
    case ErrorKind::SideConditionViolation: return "SideConditionViolation";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotTypeT: return "NotTypeT";
    case ErrorKind::NonLogicalConstant: return "NonLogicalConstant";
    case ErrorKind::IllFormedHead: return "IllFormedHead";
    case ErrorKind::PiNotOrderable: return "PiNotOrderable";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::MissingSortT: return "MissingSortT";
    case ErrorKind::MalformedFlag: return "MalformedFlag";
    case ErrorKind::UnknownWord: return "UnknownWord";
    case ErrorKind::UnknownCoercion: return "UnknownCoercion";
    case ErrorKind::MissingInstantiation: return "MissingInstantiation";
    case ErrorKind::BadCoercion: return "BadCoercion";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourcePos pos = {})
      : std::runtime_error(format(kind, message, pos)),
        kind_(kind),
        detail_(message),
        pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }
  SourcePos pos() const { return pos_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            SourcePos pos) {
    std::string out(kind_name(kind));
    if (pos.known()) {
      out += " at " + std::to_string(pos.line) + ":" +
             std::to_string(pos.column);
    }
    out += ": " + message;
    return out;
  }

  ErrorKind kind_;
  std::string detail_;
  SourcePos pos_;
};

}  // namespace fglue
