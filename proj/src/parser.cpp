#include "pltl/parser.hpp"

#include <cctype>

namespace pltl {

namespace {

struct Parser {
  const std::string &text;
  const StateSpace &space;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool accept(const char *s) {
    skip_ws();
    size_t n = std::char_traits<char>::length(s);
    if (text.compare(pos, n, s) == 0) {
      pos += n;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      throw parse_error(std::string("expected '") + c + "'", pos);
  }

  [[noreturn]] void fail(const std::string &msg) { throw parse_error(msg, pos); }

  bool ident_ahead() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  int integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (text[start] == '-' && pos == start + 1))
      fail("expected integer");
    return std::stoi(text.substr(start, pos - start));
  }

  // '[' already consumed by caller? No: caller checks peek() == '['.
  Interval interval() {
    size_t where = pos;
    expect('[');
    if (accept("<=")) {
      int i = integer();
      expect(']');
      return Interval::at_most(i);
    }
    if (accept(">=")) {
      int i1 = integer();
      if (accept(',')) {
        if (!accept("<=")) fail("expected '<=' after ','");
        int i2 = integer();
        expect(']');
        if (i1 >= i2) throw parse_error("interval requires i1 < i2", where);
        return Interval::between(i1, i2);
      }
      expect(']');
      return Interval::at_least(i1);
    }
    fail("expected '<=' or '>=' in interval");
  }

  Formula atom(const std::string &name, size_t where) {
    Rel rel;
    if (accept(">="))
      rel = Rel::Ge;
    else if (accept("<="))
      rel = Rel::Le;
    else if (accept('='))
      rel = Rel::Eq;
    else
      fail("expected '>=', '<=' or '=' after variable");
    try {
      if (rel == Rel::Eq) {
        return Formula::atom(AtomicPredicate::categorical(space, name, ident()));
      }
      return Formula::atom(AtomicPredicate::numeric(space, name, rel, integer()));
    } catch (const config_error &e) {
      throw parse_error(e.what(), where);
    }
  }

  Formula primary() {
    if (accept('(')) {
      Formula f = formula();
      expect(')');
      return f;
    }
    if (!ident_ahead()) fail("expected formula");
    size_t where = pos;
    std::string name = ident();
    if (name == "true") return Formula::make_true();
    if (name == "false") return Formula::make_false();
    if (name == "X" || name == "F" || name == "G" || name == "U" || name == "R")
      throw parse_error("operator '" + name + "' needs an operand", where);
    return atom(name, where);
  }

  Formula unary() {
    if (accept('!')) return Formula::negation(unary());
    skip_ws();
    if (pos < text.size() && (text[pos] == 'X' || text[pos] == 'F' || text[pos] == 'G')) {
      // single-letter operator, not the prefix of an identifier
      bool is_op = pos + 1 >= text.size() ||
                   (!std::isalnum(static_cast<unsigned char>(text[pos + 1])) &&
                    text[pos + 1] != '_');
      if (is_op) {
        char op = text[pos++];
        Interval itv =
            (op != 'X' && peek() == '[') ? interval() : Interval::unbounded();
        Formula f = unary();
        if (op == 'X') return Formula::next(f);
        if (op == 'F') return Formula::eventually(itv, f);
        return Formula::always(itv, f);
      }
    }
    return primary();
  }

  Formula temp() {
    Formula lhs = unary();
    skip_ws();
    if (pos < text.size() && (text[pos] == 'U' || text[pos] == 'R')) {
      bool is_op = pos + 1 >= text.size() ||
                   (!std::isalnum(static_cast<unsigned char>(text[pos + 1])) &&
                    text[pos + 1] != '_');
      if (is_op) {
        char op = text[pos++];
        Interval itv = peek() == '[' ? interval() : Interval::unbounded();
        Formula rhs = temp();
        return op == 'U' ? Formula::until(lhs, rhs, itv) : Formula::release(lhs, rhs, itv);
      }
    }
    return lhs;
  }

  Formula conj() {
    Formula f = temp();
    while (peek() == '&') {
      accept('&');
      f = Formula::conjunction(f, temp());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (true) {
      skip_ws();
      // '|' but not '->'-like two-char ops; there is no '||'
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        f = Formula::disjunction(f, conj());
      } else {
        break;
      }
    }
    return f;
  }

  Formula formula() {
    Formula f = disj();
    if (accept("->")) return Formula::implication(f, formula());
    return f;
  }
};

} // namespace

Formula parse(const std::string &text, const StateSpace &space) {
  Parser p{text, space};
  Formula f = p.formula();
  if (!p.eof()) throw parse_error("unexpected trailing input", p.pos);
  return f;
}

} // namespace pltl
