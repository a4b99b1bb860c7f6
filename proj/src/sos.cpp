#include "lnc/sos.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

namespace lnc {

Term Term::mk_var(MetaVar v) {
  Term t;
  t.kind = Kind::Var;
  t.var = std::move(v);
  return t;
}

Term Term::mk_app(std::string op, std::vector<Term> args) {
  Term t;
  t.kind = Kind::App;
  t.op = std::move(op);
  t.args = std::move(args);
  return t;
}

Formula Formula::pos(Term source, Term label, Term target) {
  Formula f;
  f.kind = Kind::Pos;
  f.args = {std::move(source), std::move(label), std::move(target)};
  return f;
}

Formula Formula::neg(Term source, Term label) {
  Formula f;
  f.kind = Kind::Neg;
  f.args = {std::move(source), std::move(label)};
  return f;
}

Formula Formula::mk_pred(std::string name, std::vector<Term> args) {
  Formula f;
  f.kind = Kind::Pred;
  f.pred = std::move(name);
  f.args = std::move(args);
  return f;
}

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ")"),
      line(line),
      col(col) {}

namespace {

enum class Tok {
  Ident, LParen, RParen, Pipe, Grammar /* ::= */, Dot, Entail /* <== */,
  And /* /\ */, ArrowOpen /* --( */, ArrowClose /* )--> */,
  NegOpen /* -/-( */, Eof,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
// Operator names may also be short symbolic tokens such as ";".
bool symbolic_char(char c) {
  return c == ';' || c == '+' || c == '*' || c == '!' || c == '?' ||
         c == '&' || c == '~' || c == '#';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> lex() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      int line = line_, col = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::Eof, "", line, col});
        return out;
      }
      char c = text_[pos_];
      if (ident_start(c)) {
        size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
        out.push_back({Tok::Ident, std::string(text_.substr(start, pos_ - start)),
                       line, col});
      } else if (symbolic_char(c)) {
        size_t start = pos_;
        while (pos_ < text_.size() && symbolic_char(text_[pos_])) advance();
        out.push_back({Tok::Ident, std::string(text_.substr(start, pos_ - start)),
                       line, col});
      } else if (c == '(') {
        advance();
        out.push_back({Tok::LParen, "(", line, col});
      } else if (c == ')') {
        advance();
        // ")--" ... ">" closes a transition arrow; a lone ")" closes a term
        size_t dashes = 0;
        while (pos_ + dashes < text_.size() && text_[pos_ + dashes] == '-')
          ++dashes;
        if (dashes >= 2 && pos_ + dashes < text_.size() &&
            text_[pos_ + dashes] == '>') {
          for (size_t i = 0; i <= dashes; ++i) advance();
          out.push_back({Tok::ArrowClose, ")-->", line, col});
        } else {
          out.push_back({Tok::RParen, ")", line, col});
        }
      } else if (c == '|') {
        advance();
        out.push_back({Tok::Pipe, "|", line, col});
      } else if (c == '.') {
        advance();
        out.push_back({Tok::Dot, ".", line, col});
      } else if (c == ':') {
        expect(":"); expect(":"); expect("=");
        out.push_back({Tok::Grammar, "::=", line, col});
      } else if (c == '<') {
        expect("<"); expect("="); expect("=");
        out.push_back({Tok::Entail, "<==", line, col});
      } else if (c == '/') {
        expect("/"); expect("\\");
        out.push_back({Tok::And, "/\\", line, col});
      } else if (c == '-') {
        size_t dashes = 0;
        while (pos_ + dashes < text_.size() && text_[pos_ + dashes] == '-')
          ++dashes;
        size_t after = pos_ + dashes;
        if (after < text_.size() && text_[after] == '/') {
          // -/-( with any number of dashes on each side
          size_t j = after + 1;
          size_t dashes2 = 0;
          while (j + dashes2 < text_.size() && text_[j + dashes2] == '-')
            ++dashes2;
          if (dashes2 >= 1 && j + dashes2 < text_.size() &&
              text_[j + dashes2] == '(') {
            size_t total = (j + dashes2 + 1) - pos_;
            for (size_t i = 0; i < total; ++i) advance();
            out.push_back({Tok::NegOpen, "-/-(", line, col});
            continue;
          }
          throw ParseError("malformed negative transition arrow", line, col);
        }
        if (dashes >= 2 && after < text_.size() && text_[after] == '(') {
          for (size_t i = 0; i <= dashes; ++i) advance();
          out.push_back({Tok::ArrowOpen, "--(", line, col});
        } else {
          throw ParseError("malformed transition arrow", line, col);
        }
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line, col);
      }
    }
  }

 private:
  void skip_ws() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        advance();
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
          text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void expect(std::string_view s) {
    if (pos_ >= text_.size() || text_.substr(pos_, s.size()) != s)
      throw ParseError("unexpected character", line_, col_);
    for (size_t i = 0; i < s.size(); ++i) advance();
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class LangParser {
 public:
  explicit LangParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  LanguageDef parse() {
    collect_roots();
    LanguageDef lang;
    while (at_decl()) lang.grammars.push_back(parse_decl());
    if (lang.grammars.empty())
      throw ParseError("no grammar declarations", cur().line, cur().col);
    while (cur().kind != Tok::Eof) lang.rules.push_back(parse_rule());
    return lang;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& peek(size_t k) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  Token take() { return toks_[i_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }

  Token expect(Tok k, const std::string& what) {
    if (cur().kind != k) fail("expected " + what);
    return take();
  }

  void collect_roots() {
    for (size_t j = 0; j + 2 < toks_.size(); ++j) {
      if (toks_[j].kind == Tok::Ident && toks_[j + 1].kind == Tok::Ident &&
          toks_[j + 2].kind == Tok::Grammar) {
        const std::string& root = toks_[j + 1].text;
        for (const auto& r : roots_)
          if (r == root)
            throw ParseError("duplicate metavariable root '" + root + "'",
                             toks_[j + 1].line, toks_[j + 1].col);
        roots_.push_back(root);
      }
    }
  }

  bool at_decl() const {
    return cur().kind == Tok::Ident && peek(1).kind == Tok::Ident &&
           peek(2).kind == Tok::Grammar;
  }

  // A token names a metavariable iff it is a declared root followed only by
  // digits and primes. Longest declared root wins.
  std::optional<MetaVar> classify(const std::string& tok) const {
    std::optional<MetaVar> best;
    for (const auto& root : roots_) {
      if (tok.size() < root.size() || tok.compare(0, root.size(), root) != 0)
        continue;
      bool ok = true;
      for (size_t j = root.size(); j < tok.size(); ++j) {
        char c = tok[j];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '\'')) {
          ok = false;
          break;
        }
      }
      if (ok && (!best || root.size() > best->root.size()))
        best = MetaVar{root, tok.substr(root.size())};
    }
    return best;
  }

  GrammarDecl parse_decl() {
    GrammarDecl d;
    d.category = take().text;
    d.metavar_root = take().text;
    expect(Tok::Grammar, "'::='");
    d.productions.push_back(parse_term());
    while (cur().kind == Tok::Pipe) {
      take();
      d.productions.push_back(parse_term());
    }
    return d;
  }

  Term parse_term() {
    if (cur().kind == Tok::Ident) {
      Token t = take();
      auto mv = classify(t.text);
      if (!mv)
        throw ParseError("'" + t.text +
                             "' is not a declared metavariable; operator "
                             "applications must be parenthesized",
                         t.line, t.col);
      return Term::mk_var(*mv);
    }
    if (cur().kind == Tok::LParen) {
      take();
      if (cur().kind != Tok::Ident) fail("expected an operator name");
      std::string op = take().text;
      std::vector<Term> args;
      while (cur().kind != Tok::RParen) {
        if (cur().kind == Tok::Eof) fail("unbalanced parentheses");
        args.push_back(parse_term());
      }
      take();
      return Term::mk_app(std::move(op), std::move(args));
    }
    fail("expected a term");
  }

  // Label between --( and )-->: a lone identifier is a metavariable when it
  // has metavariable shape, otherwise the constant (name).
  Term parse_label() {
    if (cur().kind == Tok::Ident) {
      Token t = take();
      std::vector<Term> args;
      while (cur().kind != Tok::ArrowClose) {
        if (cur().kind == Tok::Eof) fail("unterminated transition label");
        args.push_back(parse_term());
      }
      if (args.empty()) {
        if (auto mv = classify(t.text)) return Term::mk_var(*mv);
        return Term::mk_app(t.text);
      }
      return Term::mk_app(t.text, std::move(args));
    }
    return parse_term();
  }

  Formula parse_formula() {
    Token start = cur();
    Term t = parse_term();
    if (cur().kind == Tok::ArrowOpen) {
      take();
      Term label = parse_label();
      expect(Tok::ArrowClose, "')-->'");
      Term target = parse_term();
      return Formula::pos(std::move(t), std::move(label), std::move(target));
    }
    if (cur().kind == Tok::NegOpen) {
      take();
      Term label = parse_label();
      expect(Tok::ArrowClose, "')-->'");
      return Formula::neg(std::move(t), std::move(label));
    }
    if (t.kind != Term::Kind::App || t.args.empty())
      throw ParseError("expected a transition or predicate formula",
                       start.line, start.col);
    return Formula::mk_pred(std::move(t.op), std::move(t.args));
  }

  Rule parse_rule() {
    Token start = cur();
    Rule r;
    r.conclusion = parse_formula();
    if (r.conclusion.kind == Formula::Kind::Neg)
      throw ParseError("a negative transition cannot be a conclusion",
                       start.line, start.col);
    if (cur().kind == Tok::Entail) {
      take();
      r.premises.push_back(parse_formula());
      while (cur().kind == Tok::And) {
        take();
        r.premises.push_back(parse_formula());
      }
    }
    expect(Tok::Dot, "'.' at the end of the rule");
    return r;
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  std::vector<std::string> roots_;
};

std::string label_text(const Term& t) {
  if (t.kind == Term::Kind::Var) return t.var.name();
  if (t.args.empty()) return t.op;
  return print_term(t);
}

}  // namespace

LanguageDef parse_language(std::string_view text) {
  return LangParser(Lexer(text).lex()).parse();
}

std::string print_term(const Term& t) {
  if (t.kind == Term::Kind::Var) return t.var.name();
  std::string out = "(" + t.op;
  for (const auto& a : t.args) out += " " + print_term(a);
  return out + ")";
}

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Pos:
      return print_term(f.source()) + " --(" + label_text(f.label()) +
             ")--> " + print_term(f.target());
    case Formula::Kind::Neg:
      return print_term(f.source()) + " -/-(" + label_text(f.label()) + ")-->";
    case Formula::Kind::Pred: {
      std::string out = "(" + f.pred;
      for (const auto& a : f.args) out += " " + print_term(a);
      return out + ")";
    }
  }
  return {};
}

std::string print_rule(const Rule& r) {
  std::string out = print_formula(r.conclusion);
  for (size_t i = 0; i < r.premises.size(); ++i)
    out += (i == 0 ? " <== " : " /\\ ") + print_formula(r.premises[i]);
  return out + ".";
}

std::string print_language(const LanguageDef& lang) {
  std::ostringstream out;
  for (const auto& g : lang.grammars) {
    out << g.category << " " << g.metavar_root << " ::= ";
    for (size_t i = 0; i < g.productions.size(); ++i) {
      if (i) out << " | ";
      out << print_term(g.productions[i]);
    }
    out << "\n";
  }
  if (!lang.rules.empty()) out << "\n";
  for (const auto& r : lang.rules) out << print_rule(r) << "\n";
  return out.str();
}

namespace {
void collect_vars(const Term& t, std::vector<MetaVar>& out) {
  if (t.kind == Term::Kind::Var) {
    out.push_back(t.var);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}
}  // namespace

std::vector<MetaVar> term_vars(const Term& t) {
  std::vector<MetaVar> out;
  collect_vars(t, out);
  return out;
}

}  // namespace lnc
