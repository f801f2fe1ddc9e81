#include "wmdelay/formula.hh"

#include <algorithm>
#include <cctype>

#include "wmdelay/error.hh"

namespace wmdelay {

Formula Formula::tt() {
  static const auto n = std::make_shared<const Node>(Node{Kind::True, {}, nullptr, nullptr});
  return Formula(n);
}

Formula Formula::ff() {
  static const auto n = std::make_shared<const Node>(Node{Kind::False, {}, nullptr, nullptr});
  return Formula(n);
}

Formula Formula::var(std::string name) {
  if (name.empty()) throw ValidationError("formula variable name must be non-empty");
  return Formula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), nullptr, nullptr}));
}

Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, f.node_, nullptr}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, a.node_, b.node_}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, a.node_, b.node_}));
}

Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, {}, a.node_, b.node_}));
}

Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Iff, {}, a.node_, b.node_}));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return tt();
  Formula acc = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return ff();
  Formula acc = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

size_t Formula::size() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Var:
      return 1;
    case Kind::Not:
      return 1 + lhs().size();
    default:
      return 1 + lhs().size() + rhs().size();
  }
}

void Formula::collect_vars(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Var:
      out.insert(var_name());
      return;
    case Kind::Not:
      lhs().collect_vars(out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      lhs().collect_vars(out);
      rhs().collect_vars(out);
      return;
    default:
      return;
  }
}

std::set<std::string> Formula::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

bool Formula::evaluate(const std::function<bool(const std::string&)>& truth) const {
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Var:
      return truth(var_name());
    case Kind::Not:
      return !lhs().evaluate(truth);
    case Kind::And:
      return lhs().evaluate(truth) && rhs().evaluate(truth);
    case Kind::Or:
      return lhs().evaluate(truth) || rhs().evaluate(truth);
    case Kind::Implies:
      return !lhs().evaluate(truth) || rhs().evaluate(truth);
    case Kind::Iff:
      return lhs().evaluate(truth) == rhs().evaluate(truth);
  }
  return false;
}

bool Formula::equal(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Var:
      return a.var_name() == b.var_name();
    case Kind::Not:
      return equal(a.lhs(), b.lhs());
    default:
      return equal(a.lhs(), b.lhs()) && equal(a.rhs(), b.rhs());
  }
}

Formula Formula::substitute(const std::function<Formula(const std::string&)>& repl) const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Var:
      return repl(var_name());
    case Kind::Not:
      return negate(lhs().substitute(repl));
    case Kind::And:
      return conj(lhs().substitute(repl), rhs().substitute(repl));
    case Kind::Or:
      return disj(lhs().substitute(repl), rhs().substitute(repl));
    case Kind::Implies:
      return implies(lhs().substitute(repl), rhs().substitute(repl));
    case Kind::Iff:
      return iff(lhs().substitute(repl), rhs().substitute(repl));
  }
  return *this;
}

// ---------------------------------------------------------------------------
// Concrete syntax.

namespace {

bool bare_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' || c == '<' ||
         c == '>' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

struct Lexer {
  std::string_view in;
  size_t pos = 0;

  struct Token {
    enum class Type { Ident, Not, And, Or, Implies, Iff, LParen, RParen, End } type;
    std::string text;
    size_t at;
  };

  Token next() {
    while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
    size_t at = pos;
    if (pos >= in.size()) return {Token::Type::End, "", at};
    char c = in[pos];
    if (c == '(') return ++pos, Token{Token::Type::LParen, "(", at};
    if (c == ')') return ++pos, Token{Token::Type::RParen, ")", at};
    if (c == '!') return ++pos, Token{Token::Type::Not, "!", at};
    if (c == '&') return ++pos, Token{Token::Type::And, "&", at};
    if (c == '|') return ++pos, Token{Token::Type::Or, "|", at};
    if (in.substr(pos, 3) == "<->") return pos += 3, Token{Token::Type::Iff, "<->", at};
    if (in.substr(pos, 2) == "->") return pos += 2, Token{Token::Type::Implies, "->", at};
    if (c == '"') {
      size_t end = in.find('"', pos + 1);
      if (end == std::string_view::npos)
        throw ParseError("formula: unterminated quoted identifier at offset " +
                         std::to_string(pos));
      std::string text(in.substr(pos + 1, end - pos - 1));
      if (text.empty())
        throw ParseError("formula: empty quoted identifier at offset " + std::to_string(pos));
      pos = end + 1;
      return {Token::Type::Ident, std::move(text), at};
    }
    if (bare_ident_char(c)) {
      size_t start = pos;
      while (pos < in.size() && bare_ident_char(in[pos])) {
        // An identifier never swallows an operator spelling.
        if (in.substr(pos, 3) == "<->" || in.substr(pos, 2) == "->") break;
        ++pos;
      }
      if (pos == start)
        throw ParseError("formula: stray operator at offset " + std::to_string(pos));
      return {Token::Type::Ident, std::string(in.substr(start, pos - start)), at};
    }
    throw ParseError(std::string("formula: unexpected character '") + c + "' at offset " +
                     std::to_string(pos));
  }
};

struct Parser {
  Lexer lex;
  Lexer::Token tok;

  explicit Parser(std::string_view s) : lex{s} { tok = lex.next(); }

  void advance() { tok = lex.next(); }

  Formula parse_iff() {
    Formula left = parse_implies();
    if (tok.type == Lexer::Token::Type::Iff) {
      advance();
      return Formula::iff(left, parse_iff());  // right-assoc
    }
    return left;
  }

  Formula parse_implies() {
    Formula left = parse_or();
    if (tok.type == Lexer::Token::Type::Implies) {
      advance();
      return Formula::implies(left, parse_implies());  // right-assoc
    }
    return left;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (tok.type == Lexer::Token::Type::Or) {
      advance();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (tok.type == Lexer::Token::Type::And) {
      advance();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    if (tok.type == Lexer::Token::Type::Not) {
      advance();
      return Formula::negate(parse_unary());
    }
    if (tok.type == Lexer::Token::Type::LParen) {
      advance();
      Formula f = parse_iff();
      expect(Lexer::Token::Type::RParen, ")");
      advance();
      return f;
    }
    if (tok.type == Lexer::Token::Type::Ident) {
      std::string name = tok.text;
      advance();
      if (name == "true") return Formula::tt();
      if (name == "false") return Formula::ff();
      return Formula::var(std::move(name));
    }
    throw ParseError("formula: expected operand at offset " + std::to_string(tok.at));
  }

  void expect(Lexer::Token::Type t, const char* what) {
    if (tok.type != t)
      throw ParseError(std::string("formula: expected '") + what + "' at offset " +
                       std::to_string(tok.at));
  }
};

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff:
      return 1;
    case Formula::Kind::Implies:
      return 2;
    case Formula::Kind::Or:
      return 3;
    case Formula::Kind::And:
      return 4;
    case Formula::Kind::Not:
      return 5;
    default:
      return 6;  // atoms
  }
}

bool needs_quotes(const std::string& name) {
  if (name == "true" || name == "false") return true;
  for (size_t i = 0; i < name.size(); ++i) {
    if (!bare_ident_char(name[i])) return true;
    if (name.compare(i, 3, "<->") == 0 || name.compare(i, 2, "->") == 0) return true;
  }
  return false;
}

void print(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  if (prec < min_prec) {
    out += '(';
    print(f, 0, out);
    out += ')';
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      return;
    case Formula::Kind::False:
      out += "false";
      return;
    case Formula::Kind::Var:
      if (needs_quotes(f.var_name()))
        out += '"' + f.var_name() + '"';
      else
        out += f.var_name();
      return;
    case Formula::Kind::Not:
      out += '!';
      print(f.lhs(), prec, out);
      return;
    default: {
      const char* op = f.kind() == Formula::Kind::And       ? " & "
                       : f.kind() == Formula::Kind::Or      ? " | "
                       : f.kind() == Formula::Kind::Implies ? " -> "
                                                            : " <-> ";
      bool assoc_right = f.kind() == Formula::Kind::Implies || f.kind() == Formula::Kind::Iff;
      print(f.lhs(), assoc_right ? prec + 1 : prec, out);
      out += op;
      print(f.rhs(), assoc_right ? prec : prec + 1, out);
      return;
    }
  }
}

}  // namespace

Formula Formula::parse(std::string_view text) {
  Parser p(text);
  Formula f = p.parse_iff();
  if (p.tok.type != Lexer::Token::Type::End)
    throw ParseError("formula: trailing input at offset " + std::to_string(p.tok.at));
  return f;
}

std::string Formula::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

bool eval_formula(const Formula& f, const std::set<std::string>& assignment,
                  const std::set<std::string>* universe) {
  return f.evaluate([&](const std::string& name) {
    if (universe && !universe->count(name))
      throw ValidationError("unknown variable in formula: " + name);
    return assignment.count(name) > 0;
  });
}

CompiledFormula::CompiledFormula(const Formula& f,
                                 const std::map<std::string, uint32_t>& index) {
  // Postfix emission by structural recursion. Left-leaning chains (the shape
  // every generator emits) evaluate with stack depth 2.
  std::function<void(const Formula&)> emit = [&](const Formula& g) {
    switch (g.kind()) {
      case Formula::Kind::True:
        prog_.push_back({Op::PushTrue});
        return;
      case Formula::Kind::False:
        prog_.push_back({Op::PushFalse});
        return;
      case Formula::Kind::Var: {
        auto it = index.find(g.var_name());
        if (it == index.end())
          throw ValidationError("unknown variable in formula: " + g.var_name());
        prog_.push_back({Op::PushVar, it->second});
        return;
      }
      case Formula::Kind::Not:
        emit(g.lhs());
        prog_.push_back({Op::Not});
        return;
      case Formula::Kind::And:
        emit(g.lhs());
        emit(g.rhs());
        prog_.push_back({Op::And});
        return;
      case Formula::Kind::Or:
        emit(g.lhs());
        emit(g.rhs());
        prog_.push_back({Op::Or});
        return;
      case Formula::Kind::Implies:
        emit(g.lhs());
        emit(g.rhs());
        prog_.push_back({Op::Implies});
        return;
      case Formula::Kind::Iff:
        emit(g.lhs());
        emit(g.rhs());
        prog_.push_back({Op::Iff});
        return;
    }
  };
  emit(f);

  // Verify the evaluation stack bound once, instead of branching in eval().
  size_t depth = 0, max_depth = 0;
  for (const Instr& ins : prog_) {
    if (ins.op == Op::PushVar || ins.op == Op::PushTrue || ins.op == Op::PushFalse)
      ++depth;
    else if (ins.op != Op::Not)
      --depth;
    max_depth = std::max(max_depth, depth);
  }
  if (max_depth > 256)
    throw ValidationError("formula too deeply right-nested to compile");
}

bool CompiledFormula::eval(const StateSet& occ) const {
  bool stack[256];
  size_t sp = 0;
  for (const Instr& ins : prog_) {
    switch (ins.op) {
      case Op::PushVar:
        stack[sp++] = occ.test(ins.var);
        break;
      case Op::PushTrue:
        stack[sp++] = true;
        break;
      case Op::PushFalse:
        stack[sp++] = false;
        break;
      case Op::Not:
        stack[sp - 1] = !stack[sp - 1];
        break;
      case Op::And:
        --sp;
        stack[sp - 1] = stack[sp - 1] && stack[sp];
        break;
      case Op::Or:
        --sp;
        stack[sp - 1] = stack[sp - 1] || stack[sp];
        break;
      case Op::Implies:
        --sp;
        stack[sp - 1] = !stack[sp - 1] || stack[sp];
        break;
      case Op::Iff:
        --sp;
        stack[sp - 1] = stack[sp - 1] == stack[sp];
        break;
    }
  }
  return stack[0];
}

}  // namespace wmdelay
