#include "dsl.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qs {

std::string ParseError::to_string() const {
  std::ostringstream os;
  os << "parse error at line " << line << ", column " << column << ": " << message;
  return os.str();
}

namespace {

struct Token {
  enum class Type { Word, Number, Punct, End };
  Type type = Type::End;
  std::string text;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.type = Token::Type::Word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        t.text += advance();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      t.type = Token::Type::Number;
      t.text += advance();
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          t.text += advance();
        } else if ((d == '.' || d == '/') && pos_ + 1 < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          t.text += advance();
        } else {
          break;
        }
      }
      return t;
    }
    t.type = Token::Type::Punct;
    t.text = std::string(1, advance());
    return t;
  }

 private:
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

struct ParseFail {
  ParseError err;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

  ProblemFile parse() {
    ProblemFile p;
    bool have_query = false;
    while (cur_.type != Token::Type::End) {
      std::string head = expect_word("statement keyword (object/constraint/ground/query)");
      if (head == "object") {
        parse_object(p);
      } else if (head == "constraint") {
        p.graph.formulas.push_back(parse_formula());
        expect_punct(".");
      } else if (head == "ground") {
        std::string var = expect_word("variable name");
        expect_punct("=");
        Token t = cur_;
        if (t.type != Token::Type::Number) fail(t, "expected rational literal");
        auto q = parse_rational(t.text);
        if (!q) fail(t, "invalid rational literal '" + t.text + "'");
        if (p.graph.groundings.count(var)) fail(t, "duplicate grounding for " + var);
        p.graph.groundings[var] = *q;
        cur_ = lex_.next();
        expect_punct(".");
      } else if (head == "query") {
        if (have_query) fail(cur_, "more than one query statement");
        have_query = true;
        std::string w = expect_word("'consistent' or 'entails'");
        if (w == "consistent") {
          p.query.kind = QueryKind::Consistency;
        } else if (w == "entails") {
          expect_punct(":");
          p.query.kind = QueryKind::Sufficiency;
          p.query.conclusion = parse_formula();
        } else {
          fail(cur_, "expected 'consistent' or 'entails', got '" + w + "'");
        }
        expect_punct(".");
      } else {
        fail(cur_, "unknown statement '" + head + "' (expected object/constraint/ground/query)");
      }
    }
    if (!have_query) {
      Token t = cur_;
      fail(t, "missing query statement");
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseFail{ParseError{t.line, t.col, msg}};
  }

  std::string expect_word(const std::string& what) {
    if (cur_.type != Token::Type::Word) fail(cur_, "expected " + what);
    std::string s = cur_.text;
    cur_ = lex_.next();
    return s;
  }

  void expect_punct(const std::string& p) {
    if (cur_.type != Token::Type::Punct || cur_.text != p)
      fail(cur_, "expected '" + p + "'" +
                     (cur_.type == Token::Type::End ? " before end of input"
                                                    : ", got '" + cur_.text + "'"));
    cur_ = lex_.next();
  }

  void parse_object(ProblemFile& p) {
    Token kt = cur_;
    std::string kindw = expect_word("object kind");
    SpatialObject o;
    if (kindw == "point") o.kind = Kind::Point2;
    else if (kindw == "segment") o.kind = Kind::Segment2;
    else if (kindw == "rectangle") o.kind = Kind::Rectangle2;
    else if (kindw == "square") { o.kind = Kind::Rectangle2; o.square = true; }
    else if (kindw == "circle") o.kind = Kind::Circle2;
    else if (kindw == "point3") o.kind = Kind::Point3;
    else if (kindw == "sphere") o.kind = Kind::Sphere3;
    else if (kindw == "box") o.kind = Kind::Box3;
    else if (kindw == "cube") { o.kind = Kind::Box3; o.cube = true; }
    else fail(kt, "unknown object kind '" + kindw + "'");
    Token it = cur_;
    o.id = expect_word("object id");
    if (p.graph.find_object(o.id)) fail(it, "duplicate object id '" + o.id + "'");
    p.graph.objects.push_back(std::move(o));
    expect_punct(".");
  }

  EdgeFormula parse_formula() {
    Token ht = cur_;
    std::string head = expect_word("formula");
    if (head == "and" || head == "or") {
      expect_punct("(");
      std::vector<EdgeFormula> kids;
      kids.push_back(parse_formula());
      while (cur_.type == Token::Type::Punct && cur_.text == ",") {
        cur_ = lex_.next();
        kids.push_back(parse_formula());
      }
      expect_punct(")");
      return head == "and" ? EdgeFormula::mk_and(std::move(kids))
                           : EdgeFormula::mk_or(std::move(kids));
    }
    if (head == "not") {
      expect_punct("(");
      EdgeFormula k = parse_formula();
      expect_punct(")");
      return EdgeFormula::mk_not(std::move(k));
    }
    if (!relation_table().count(head)) fail(ht, "unknown relation name '" + head + "'");
    RelationAtom a;
    a.name = head;
    expect_punct("(");
    a.args.push_back(expect_word("object id"));
    while (cur_.type == Token::Type::Punct && cur_.text == ",") {
      cur_ = lex_.next();
      a.args.push_back(expect_word("object id"));
    }
    expect_punct(")");
    return EdgeFormula::mk_atom(std::move(a));
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

ParseResult parse_problem(const std::string& text) {
  try {
    return Parser(text).parse();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

std::string format_formula(const EdgeFormula& f) {
  switch (f.kind) {
    case EdgeFormula::Kind::Atom: {
      std::string s = f.atom.name + "(";
      for (std::size_t i = 0; i < f.atom.args.size(); ++i) {
        if (i) s += ", ";
        s += f.atom.args[i];
      }
      return s + ")";
    }
    case EdgeFormula::Kind::Not:
      return "not(" + format_formula(f.kids[0]) + ")";
    case EdgeFormula::Kind::And:
    case EdgeFormula::Kind::Or: {
      std::string s = f.kind == EdgeFormula::Kind::And ? "and(" : "or(";
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) s += ", ";
        s += format_formula(f.kids[i]);
      }
      return s + ")";
    }
  }
  throw std::logic_error("bad edge formula");
}

std::string format_problem(const ProblemFile& p) {
  std::ostringstream os;
  for (const auto& o : p.graph.objects) {
    const char* kw = kind_name(o.kind);
    if (o.kind == Kind::Rectangle2 && o.square) kw = "square";
    if (o.kind == Kind::Box3 && o.cube) kw = "cube";
    os << "object " << kw << " " << o.id << ".\n";
  }
  for (const auto& f : p.graph.formulas) os << "constraint " << format_formula(f) << ".\n";
  for (const auto& [v, q] : p.graph.groundings)
    os << "ground " << v << " = " << rat_to_string(q) << ".\n";
  if (p.query.kind == QueryKind::Consistency) {
    os << "query consistent.\n";
  } else {
    os << "query entails: " << format_formula(*p.query.conclusion) << ".\n";
  }
  return os.str();
}

}  // namespace qs
