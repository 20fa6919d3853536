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

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fglue/encodings.hpp"
#include "fglue/error.hpp"
#include "fglue/formula.hpp"
#include "fglue/glue.hpp"
#include "fglue/parser.hpp"
#include "fglue/readback.hpp"
#include "fglue/reduce.hpp"
#include "fglue/typecheck.hpp"

// Batch command-line surface. Exit codes: 0 success, 1 semantic or type
// failure, 2 IO or parse failure.
namespace fglue::cli {

enum class OutputFormat { Formula, Term, Trace };

struct RunConfig {
  std::string sig_path;
  std::string lex_path;
  std::optional<std::uint64_t> fuel;
  std::optional<OutputFormat> format;
  std::string tree_path;
  std::string expr;
  bool has_expr = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitInput = 2;

inline int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::Syntax || e.kind() == ErrorKind::Io
             ? kExitInput
             : kExitSemantic;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace detail {

inline Signature load_sig(const RunConfig& cfg, bool required) {
  if (cfg.sig_path.empty()) {
    if (required) throw Error(ErrorKind::Io, "--sig is required");
    return Signature::minimal();
  }
  return load_signature(read_file(cfg.sig_path));
}

inline std::string input_text(const RunConfig& cfg) {
  if (cfg.has_expr) return cfg.expr;
  if (cfg.tree_path.empty()) {
    throw Error(ErrorKind::Io, "one of --tree or --expr is required");
  }
  return read_file(cfg.tree_path);
}

inline Context context_for(const Signature& sig, const RunConfig& cfg) {
  return Context(sig, cfg.fuel.value_or(kDefaultFuel));
}

inline StepObserver tracer(std::ostream& out) {
  return [&out](std::uint64_t k, const Reduction& r) {
    out << "step " << k << " [" << rule_name(r.rule)
        << "]: " << to_string(r.term) << "\n";
  };
}

inline bool is_t(const Type& type) {
  return type.is_sort() && type.name() == "t";
}

}  // namespace detail

/// Typechecks every lexicon entry and lists each with its type or error.
inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
  Signature sig = detail::load_sig(cfg, true);
  if (cfg.lex_path.empty()) throw Error(ErrorKind::Io, "--lex is required");
  LexiconCheck check = check_lexicon(sig, read_file(cfg.lex_path));
  for (const auto& d : check.items) {
    if (d.is_coercion) out << "coercion ";
    out << d.name << " : ";
    if (d.type) {
      out << to_string(*d.type) << "\n";
    } else {
      out << "error: " << d.error << "\n";
    }
  }
  return check.ok() ? kExitOk : kExitSemantic;
}

/// Normalizes a term given inline or in a file. `church:NAME` refers to the
/// encodings catalog.
inline int cmd_normalize(const RunConfig& cfg, std::ostream& out) {
  Signature sig = detail::load_sig(cfg, false);
  ParseScope scope = ParseScope::for_signature(sig);
  scope.catalog = church::lookup;
  Term term = parse_term(detail::input_text(cfg), scope);
  Context ctx = detail::context_for(sig, cfg);
  typecheck(ctx, term);
  OutputFormat format = cfg.format.value_or(OutputFormat::Term);
  if (format == OutputFormat::Trace) {
    NormalForm nf = normalize(ctx, term, detail::tracer(out));
    out << "steps: " << nf.steps << "\n" << to_string(nf.term) << "\n";
    return kExitOk;
  }
  NormalForm nf = normalize(ctx, term);
  if (format == OutputFormat::Formula) {
    out << print_formula(readback_formula(sig, nf.term)) << "\n";
  } else {
    out << to_string(nf.term) << "\n";
  }
  return kExitOk;
}

namespace detail {

struct Pipeline {
  Lexicon lexicon;
  Term composed;
  Type type;
};

inline Pipeline compose_input(const RunConfig& cfg) {
  Signature sig = load_sig(cfg, true);
  if (cfg.lex_path.empty()) throw Error(ErrorKind::Io, "--lex is required");
  Lexicon lex = load_lexicon(sig, read_file(cfg.lex_path));
  SentenceTree tree = parse_tree(sig, input_text(cfg));
  Term term = compose(lex, tree);
  Type type = typecheck(sig, term);
  return {std::move(lex), term, type};
}

}  // namespace detail

/// compose → normalize → print. Without --format, sentences of type t are
/// printed as formulas and anything else as a term.
inline int cmd_compose(const RunConfig& cfg, std::ostream& out) {
  detail::Pipeline p = detail::compose_input(cfg);
  const Signature& sig = p.lexicon.signature;
  Context ctx = detail::context_for(sig, cfg);
  OutputFormat format = cfg.format.value_or(
      detail::is_t(p.type) ? OutputFormat::Formula : OutputFormat::Term);
  NormalForm nf = format == OutputFormat::Trace
                      ? normalize(ctx, p.composed, detail::tracer(out))
                      : normalize(ctx, p.composed);
  if (format == OutputFormat::Trace) out << "steps: " << nf.steps << "\n";
  if (format == OutputFormat::Term ||
      (format == OutputFormat::Trace && !detail::is_t(p.type))) {
    out << to_string(nf.term) << "\n";
  } else {
    out << print_formula(readback_formula(sig, nf.term)) << "\n";
  }
  return kExitOk;
}

/// Prints the order of the sentence's formula and the sorts it binds over.
inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  detail::Pipeline p = detail::compose_input(cfg);
  const Signature& sig = p.lexicon.signature;
  NormalForm nf = normalize(detail::context_for(sig, cfg), p.composed);
  OrderReport report = classify_order(readback_formula(sig, nf.term));
  out << "order: " << report.label() << "\n";
  for (const auto& [sort, order] : report.witnesses) {
    out << "witness: " << to_string(sort) << " " << order << "\n";
  }
  return kExitOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"System F glue: typecheck, normalize and read back meanings"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format_text;

  auto add_common = [&](CLI::App* sub, bool with_lex, bool with_input) {
    sub->add_option("--sig", cfg.sig_path, "signature file");
    if (with_lex) sub->add_option("--lex", cfg.lex_path, "lexicon file");
    sub->add_option("--fuel", cfg.fuel, "reduction step budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", format_text, "formula | term | trace")
        ->check(CLI::IsMember({"formula", "term", "trace"}));
    if (with_input) {
      auto* tree = sub->add_option("--tree", cfg.tree_path, "input file");
      auto* expr = sub->add_option("--expr", cfg.expr, "inline input");
      tree->excludes(expr);
    }
  };
  CLI::App* check = app.add_subcommand("check", "typecheck a lexicon");
  add_common(check, true, false);
  CLI::App* norm = app.add_subcommand("normalize", "normalize a term");
  add_common(norm, false, true);
  CLI::App* comp = app.add_subcommand("compose", "compose a sentence tree");
  add_common(comp, true, true);
  CLI::App* cls = app.add_subcommand("classify", "order of a sentence formula");
  add_common(cls, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  for (CLI::App* sub : {norm, comp, cls}) {
    if (sub->parsed() && sub->count("--expr") > 0) cfg.has_expr = true;
  }
  if (format_text == "formula") cfg.format = OutputFormat::Formula;
  if (format_text == "term") cfg.format = OutputFormat::Term;
  if (format_text == "trace") cfg.format = OutputFormat::Trace;

  std::ostringstream buffer;
  try {
    int code = kExitOk;
    if (check->parsed()) code = cmd_check(cfg, buffer);
    if (norm->parsed()) code = cmd_normalize(cfg, buffer);
    if (comp->parsed()) code = cmd_compose(cfg, buffer);
    if (cls->parsed()) code = cmd_classify(cfg, buffer);
    out << buffer.str();
    return code;
  } catch (const Error& e) {
    out << buffer.str();
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace fglue::cli
