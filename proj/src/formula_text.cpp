#include <cctype>
#include <string>

#include "hflab/error.hpp"
#include "hflab/formula.hpp"

namespace hflab {

std::string render_term(const Term& t) {
  if (const auto* v = std::get_if<Var>(&t)) return v->name;
  if (const auto* c = std::get_if<ConstC>(&t)) {
    return "C" + std::to_string(c->index);
  }
  return std::get<HfSet>(t).str();
}

namespace {

// Binding strength; quantifiers extend as far right as possible, so they get
// the weakest level.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kIff:
      return 1;
    case FormulaKind::kImplies:
      return 2;
    case FormulaKind::kOr:
      return 3;
    case FormulaKind::kAnd:
      return 4;
    case FormulaKind::kNot:
      return 5;
    case FormulaKind::kMember:
    case FormulaKind::kEqual:
      return 6;
    default:
      return 0;
  }
}

const char* op_text(FormulaKind k) {
  switch (k) {
    case FormulaKind::kAnd:
      return " & ";
    case FormulaKind::kOr:
      return " | ";
    case FormulaKind::kImplies:
      return " -> ";
    default:
      return " <-> ";
  }
}

void render_into(const Formula& f, std::string& out);

void render_operand(const Formula& f, int min_prec, std::string& out) {
  if (f.is_quantifier() || precedence(f) < min_prec) {
    out.push_back('(');
    render_into(f, out);
    out.push_back(')');
  } else {
    render_into(f, out);
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::kMember:
      out += render_term(f.lhs()) + " in " + render_term(f.rhs());
      return;
    case FormulaKind::kEqual:
      out += render_term(f.lhs()) + " = " + render_term(f.rhs());
      return;
    case FormulaKind::kNot:
      out.push_back('!');
      if (f.child(0).kind() == FormulaKind::kNot) {
        render_into(f.child(0), out);
      } else {
        out.push_back('(');
        render_into(f.child(0), out);
        out.push_back(')');
      }
      return;
    case FormulaKind::kForAll:
    case FormulaKind::kExists:
    case FormulaKind::kForAllIn:
    case FormulaKind::kExistsIn: {
      const bool univ = f.kind() == FormulaKind::kForAll ||
                        f.kind() == FormulaKind::kForAllIn;
      out += univ ? "forall " : "exists ";
      out += f.bound_var();
      if (f.is_bounded_quantifier()) out += " in " + render_term(f.bound_term());
      out += ". ";
      render_into(f.child(0), out);
      return;
    }
    default: {
      const int p = precedence(f);
      // & | <-> associate left, -> associates right.
      const bool right_assoc = f.kind() == FormulaKind::kImplies;
      render_operand(f.child(0), right_assoc ? p + 1 : p, out);
      out += op_text(f.kind());
      render_operand(f.child(1), right_assoc ? p : p + 1, out);
      return;
    }
  }
}

enum class Tok {
  kEnd,
  kIdent,
  kConst,
  kLiteral,
  kForall,
  kExists,
  kIn,
  kDot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kNot,
  kNotEq,
  kEq,
  kLParen,
  kRParen,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::size_t pos = 0;
  std::string text;
  std::size_t index = 0;
  HfSet literal;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Formula parse_all() {
    Formula f = formula();
    if (tok_.kind != Tok::kEnd) fail("unexpected '" + tok_.text + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    if (tok_.kind == Tok::kEnd) throw ParseError(msg + " (end of input)", tok_.pos);
    throw ParseError(msg, tok_.pos);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  void advance() {
    skip_ws();
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::kEnd;
      return;
    }
    const char c = text_[pos_];
    auto take = [&](Tok k, std::size_t len) {
      tok_.kind = k;
      tok_.text = std::string(text_.substr(pos_, len));
      pos_ += len;
    };
    if (c == '{' || c == '#') {
      const std::size_t start = pos_;
      tok_.literal = parse_hfset_prefix(text_, pos_);
      tok_.kind = Tok::kLiteral;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (text_.substr(pos_, 3) == "<->") return take(Tok::kIff, 3);
    if (text_.substr(pos_, 2) == "->") return take(Tok::kImplies, 2);
    if (text_.substr(pos_, 2) == "!=") return take(Tok::kNotEq, 2);
    switch (c) {
      case '.':
        return take(Tok::kDot, 1);
      case '&':
        return take(Tok::kAnd, 1);
      case '|':
        return take(Tok::kOr, 1);
      case '!':
        return take(Tok::kNot, 1);
      case '=':
        return take(Tok::kEq, 1);
      case '(':
        return take(Tok::kLParen, 1);
      case ')':
        return take(Tok::kRParen, 1);
      default:
        break;
    }
    if (ident_start(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && ident_char(text_[end])) ++end;
      std::string word(text_.substr(pos_, end - pos_));
      tok_.text = word;
      pos_ = end;
      if (word == "forall") {
        tok_.kind = Tok::kForall;
      } else if (word == "exists") {
        tok_.kind = Tok::kExists;
      } else if (word == "in") {
        tok_.kind = Tok::kIn;
      } else if (word.size() > 1 && word[0] == 'C' &&
                 word.find_first_not_of("0123456789", 1) == std::string::npos) {
        tok_.kind = Tok::kConst;
        if (word.size() > 4 || std::stoul(word.substr(1)) > kMaxConstIndex) {
          throw ParseError("unknown constant " + word, tok_.pos);
        }
        tok_.index = std::stoul(word.substr(1));
      } else {
        tok_.kind = Tok::kIdent;
      }
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Formula formula() {
    if (tok_.kind == Tok::kForall || tok_.kind == Tok::kExists) {
      return quantified();
    }
    return iff_level();
  }

  Formula quantified() {
    const bool univ = tok_.kind == Tok::kForall;
    advance();
    if (tok_.kind != Tok::kIdent) fail("expected variable after quantifier");
    std::string v = tok_.text;
    advance();
    std::optional<Term> bound;
    if (tok_.kind == Tok::kIn) {
      advance();
      bound = term();
    }
    if (tok_.kind != Tok::kDot) fail("expected '.'");
    advance();
    Formula body = formula();
    if (bound) {
      return univ ? Formula::forall_in(v, *bound, body)
                  : Formula::exists_in(v, *bound, body);
    }
    return univ ? Formula::forall(v, body) : Formula::exists(v, body);
  }

  Formula iff_level() {
    Formula f = implies_level();
    while (tok_.kind == Tok::kIff) {
      advance();
      f = Formula::iff(f, implies_level());
    }
    return f;
  }

  Formula implies_level() {
    Formula f = or_level();
    if (tok_.kind == Tok::kImplies) {
      advance();
      return Formula::implies(f, implies_level());
    }
    return f;
  }

  Formula or_level() {
    Formula f = and_level();
    while (tok_.kind == Tok::kOr) {
      advance();
      f = Formula::disj(f, and_level());
    }
    return f;
  }

  Formula and_level() {
    Formula f = unary();
    while (tok_.kind == Tok::kAnd) {
      advance();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    switch (tok_.kind) {
      case Tok::kNot:
        advance();
        return Formula::negation(unary());
      case Tok::kLParen: {
        advance();
        Formula f = formula();
        if (tok_.kind != Tok::kRParen) fail("expected ')'");
        advance();
        return f;
      }
      case Tok::kForall:
      case Tok::kExists:
        return quantified();
      default:
        return atom();
    }
  }

  Formula atom() {
    Term a = term();
    switch (tok_.kind) {
      case Tok::kIn:
        advance();
        return Formula::member(a, term());
      case Tok::kEq:
        advance();
        return Formula::equal(a, term());
      case Tok::kNotEq:
        advance();
        return Formula::negation(Formula::equal(a, term()));
      default:
        fail("expected 'in' or '='");
    }
  }

  Term term() {
    Term t;
    switch (tok_.kind) {
      case Tok::kIdent:
        t = Var{tok_.text};
        break;
      case Tok::kConst:
        t = ConstC{tok_.index};
        break;
      case Tok::kLiteral:
        t = tok_.literal;
        break;
      default:
        fail("expected a term");
    }
    advance();
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
};

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

Formula parse_formula(std::string_view text) {
  return freshen(Parser(text).parse_all());
}

}  // namespace hflab
