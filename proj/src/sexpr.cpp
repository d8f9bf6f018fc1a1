#include "cdplus/sexpr.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "cdplus/errors.hpp"

namespace cdp {

SExpr SExpr::atom(std::string t) {
  SExpr e;
  e.kind = Atom;
  e.text = std::move(t);
  return e;
}

SExpr SExpr::list(std::vector<SExpr> xs) {
  SExpr e;
  e.kind = List;
  e.items = std::move(xs);
  return e;
}

std::string SExpr::head() const {
  if (kind != List || items.empty() || items[0].kind != Atom || items[0].quoted) return "";
  return items[0].text;
}

bool SExpr::is_number() const {
  if (kind != Atom || quoted || text.empty()) return false;
  char* end = nullptr;
  std::strtod(text.c_str(), &end);
  return end && *end == '\0';
}

double SExpr::as_number() const {
  if (!is_number()) throw ParseError("expected a number, got '" + text + "'", line, col);
  return std::strtod(text.c_str(), nullptr);
}

namespace {

struct Reader {
  const std::string& src;
  const std::string& origin;
  size_t i = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& m) const {
    throw ParseError(origin.empty() ? m : origin + ": " + m, line, col);
  }

  char peek() const { return i < src.size() ? src[i] : '\0'; }

  char take() {
    char c = src[i++];
    if (c == '\n') { line++; col = 1; } else { col++; }
    return c;
  }

  void skip_ws() {
    while (i < src.size()) {
      char c = peek();
      if (c == '#') {
        while (i < src.size() && peek() != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  SExpr read_one() {
    skip_ws();
    if (i >= src.size()) fail("unexpected end of input");
    int l = line, c = col;
    if (peek() == '(') {
      take();
      SExpr e = SExpr::list({});
      e.line = l; e.col = c;
      for (;;) {
        skip_ws();
        if (i >= src.size()) fail("missing ')'");
        if (peek() == ')') { take(); break; }
        e.items.push_back(read_one());
      }
      return e;
    }
    if (peek() == ')') fail("unmatched ')'");
    if (peek() == '"') return read_string(l, c);
    return read_atom(l, c);
  }

  SExpr read_string(int l, int c) {
    take(); // opening quote
    std::string out;
    for (;;) {
      if (i >= src.size()) fail("unterminated string");
      char ch = take();
      if (ch == '"') break;
      if (ch == '\\') {
        if (i >= src.size()) fail("unterminated escape");
        char esc = take();
        switch (esc) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: fail(std::string("bad escape '\\") + esc + "'");
        }
      } else {
        out.push_back(ch);
      }
    }
    SExpr e = SExpr::atom(std::move(out));
    e.quoted = true;
    e.line = l; e.col = c;
    return e;
  }

  SExpr read_atom(int l, int c) {
    std::string out;
    while (i < src.size()) {
      char ch = peek();
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' ||
          ch == '"' || ch == '#')
        break;
      out.push_back(take());
    }
    if (out.empty()) fail("empty atom");
    SExpr e = SExpr::atom(std::move(out));
    e.line = l; e.col = c;
    return e;
  }
};

bool needs_quoting(const std::string& t) {
  if (t.empty()) return true;
  for (char c : t)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' ||
        c == '#' || c == '\\')
      return true;
  return false;
}

void write_atom(std::ostringstream& os, const SExpr& e) {
  if (e.quoted || needs_quoting(e.text)) {
    os << '"';
    for (char c : e.text) {
      switch (c) {
        case '\n': os << "\\n"; break;
        case '\t': os << "\\t"; break;
        case '"': os << "\\\""; break;
        case '\\': os << "\\\\"; break;
        default: os << c;
      }
    }
    os << '"';
  } else {
    os << e.text;
  }
}

void write_flat(std::ostringstream& os, const SExpr& e) {
  if (e.kind == SExpr::Atom) {
    write_atom(os, e);
    return;
  }
  os << '(';
  for (size_t k = 0; k < e.items.size(); k++) {
    if (k) os << ' ';
    write_flat(os, e.items[k]);
  }
  os << ')';
}

size_t flat_width(const SExpr& e) {
  std::ostringstream os;
  write_flat(os, e);
  return os.str().size();
}

// Keyword atoms stay glued to the value that follows them when wrapping.
bool is_keyword(const SExpr& e) {
  return e.kind == SExpr::Atom && !e.quoted && !e.text.empty() && e.text[0] == ':';
}

void write_pretty(std::ostringstream& os, const SExpr& e, int indent) {
  if (e.kind == SExpr::Atom || flat_width(e) + static_cast<size_t>(indent) <= 100) {
    write_flat(os, e);
    return;
  }
  os << '(';
  size_t k = 0;
  // head plus any immediate atoms stay on the opening line
  while (k < e.items.size() && e.items[k].kind == SExpr::Atom &&
         !(k + 1 < e.items.size() && is_keyword(e.items[k]))) {
    if (k) os << ' ';
    write_atom(os, e.items[k]);
    k++;
  }
  std::string pad(static_cast<size_t>(indent) + 2, ' ');
  while (k < e.items.size()) {
    os << '\n' << pad;
    if (is_keyword(e.items[k]) && k + 1 < e.items.size()) {
      write_atom(os, e.items[k]);
      os << ' ';
      write_pretty(os, e.items[k + 1], indent + 2 + static_cast<int>(e.items[k].text.size()) + 1);
      k += 2;
    } else {
      write_pretty(os, e.items[k], indent + 2);
      k++;
    }
  }
  os << ')';
}

} // namespace

std::vector<SExpr> read_sexprs(const std::string& text, const std::string& origin) {
  Reader r{text, origin};
  std::vector<SExpr> out;
  for (;;) {
    r.skip_ws();
    if (r.i >= text.size()) break;
    out.push_back(r.read_one());
  }
  return out;
}

std::string write_sexpr(const SExpr& e) {
  std::ostringstream os;
  write_flat(os, e);
  return os.str();
}

std::string write_sexpr_pretty(const SExpr& e, int indent) {
  std::ostringstream os;
  write_pretty(os, e, indent);
  return os.str();
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace cdp
