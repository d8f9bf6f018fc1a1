#pragma once

#include <string>
#include <vector>

namespace cdp {

/// One node of an s-expression tree. Atoms keep their source spelling;
/// strings are stored unescaped with quoted=true.
struct SExpr {
  enum Kind { Atom, List };
  Kind kind = Atom;
  std::string text;   // atom spelling / string contents
  bool quoted = false;
  std::vector<SExpr> items;
  int line = 0, col = 0;

  static SExpr atom(std::string t);
  static SExpr list(std::vector<SExpr> xs);

  bool is_atom(const std::string& t) const { return kind == Atom && !quoted && text == t; }
  /// Head symbol of a list, or "" when not a list starting with an atom.
  std::string head() const;
  double as_number() const;
  bool is_number() const;
};

/// Parses every top-level form in the text. '#' starts a line comment.
std::vector<SExpr> read_sexprs(const std::string& text, const std::string& origin = "");

/// Single-line rendering with minimal quoting; numbers keep shortest
/// round-trip spelling as produced by the writer that made them.
std::string write_sexpr(const SExpr& e);

/// Multi-line canonical rendering: nested lists after the first line break
/// indent by two spaces. Top-level forms are separated by blank lines.
std::string write_sexpr_pretty(const SExpr& e, int indent = 0);

/// Shortest round-trip decimal spelling of a double.
std::string format_number(double v);

} // namespace cdp
