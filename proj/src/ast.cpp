#include "lnc/ast.hpp"

#include <cctype>
#include <utility>

namespace lnc {

namespace {

template <typename... F>
ExprPtr mk(Expr::Kind k, F&&... init) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  (init(*e), ...);
  return e;
}

PatternPtr mkpat(Pattern::Kind k, std::string name,
                 std::vector<PatternPtr> args) {
  auto p = std::make_shared<Pattern>();
  p->kind = k;
  p->name = std::move(name);
  p->args = std::move(args);
  return p;
}

}  // namespace

PatternPtr pat_var(std::string name) {
  return mkpat(Pattern::Kind::Var, std::move(name), {});
}
PatternPtr pat_list(std::vector<PatternPtr> elems) {
  return mkpat(Pattern::Kind::List, "", std::move(elems));
}
PatternPtr pat_op(std::string name, std::vector<PatternPtr> args) {
  return mkpat(Pattern::Kind::Op, std::move(name), std::move(args));
}
PatternPtr pat_any_head(std::string head, std::vector<PatternPtr> args) {
  return mkpat(Pattern::Kind::AnyHead, std::move(head), std::move(args));
}
PatternPtr pat_pos(PatternPtr src, PatternPtr lbl, PatternPtr tgt) {
  return mkpat(Pattern::Kind::Pos, "",
               {std::move(src), std::move(lbl), std::move(tgt)});
}
PatternPtr pat_neg(PatternPtr src, PatternPtr lbl) {
  return mkpat(Pattern::Kind::Neg, "", {std::move(src), std::move(lbl)});
}

ExprPtr ex_patvar(std::string name) {
  return mk(Expr::Kind::PatVar, [&](Expr& e) { e.str = std::move(name); });
}
ExprPtr ex_str(std::string s) {
  return mk(Expr::Kind::StrLit, [&](Expr& e) { e.str = std::move(s); });
}
ExprPtr ex_termlit(Term t) {
  return mk(Expr::Kind::TermLit, [&](Expr& e) { e.term = std::move(t); });
}
ExprPtr ex_predlit(std::string name, ExprPtr args) {
  return mk(Expr::Kind::PredLit, [&](Expr& e) {
    e.str = std::move(name);
    e.a = std::move(args);
  });
}
ExprPtr ex_list(std::vector<ExprPtr> items) {
  return mk(Expr::Kind::ListLit, [&](Expr& e) { e.items = std::move(items); });
}
ExprPtr ex_head(ExprPtr x) {
  return mk(Expr::Kind::Head, [&](Expr& e) { e.a = std::move(x); });
}
ExprPtr ex_tail(ExprPtr x) {
  return mk(Expr::Kind::Tail, [&](Expr& e) { e.a = std::move(x); });
}
ExprPtr ex_append(ExprPtr a, ExprPtr b) {
  return mk(Expr::Kind::Append, [&](Expr& e) {
    e.a = std::move(a);
    e.b = std::move(b);
  });
}
ExprPtr ex_diff(ExprPtr a, ExprPtr b) {
  return mk(Expr::Kind::Diff, [&](Expr& e) {
    e.a = std::move(a);
    e.b = std::move(b);
  });
}
ExprPtr ex_maplit(ExprPtr keys, ExprPtr values) {
  return mk(Expr::Kind::MapLit, [&](Expr& e) {
    e.a = std::move(keys);
    e.b = std::move(values);
  });
}
ExprPtr ex_mapget(ExprPtr m, ExprPtr k) {
  return mk(Expr::Kind::MapGet, [&](Expr& e) {
    e.a = std::move(m);
    e.b = std::move(k);
  });
}
ExprPtr ex_rules() { return mk(Expr::Kind::Rules); }
ExprPtr ex_premises() { return mk(Expr::Kind::Premises); }
ExprPtr ex_conclusion() { return mk(Expr::Kind::Conclusion); }
ExprPtr ex_self() { return mk(Expr::Kind::Self); }
ExprPtr ex_select(ExprPtr source, PatternPtr p, ExprPtr body) {
  return mk(Expr::Kind::Select, [&](Expr& e) {
    e.a = std::move(source);
    e.pat = std::move(p);
    e.b = std::move(body);
  });
}
ExprPtr ex_uniquefy(ExprPtr input, std::string hint, std::string new_var,
                    std::string map_var, ExprPtr body) {
  return mk(Expr::Kind::Uniquefy, [&](Expr& e) {
    e.a = std::move(input);
    e.str = std::move(hint);
    e.name1 = std::move(new_var);
    e.name2 = std::move(map_var);
    e.b = std::move(body);
  });
}
ExprPtr ex_getvars(ExprPtr x) {
  return mk(Expr::Kind::GetVars, [&](Expr& e) { e.a = std::move(x); });
}
ExprPtr ex_if(BoolExprPtr cond, ExprPtr then_e, ExprPtr else_e) {
  return mk(Expr::Kind::If, [&](Expr& e) {
    e.cond = std::move(cond);
    e.b = std::move(then_e);
    e.c = std::move(else_e);
  });
}
ExprPtr ex_skip() { return mk(Expr::Kind::Skip); }
ExprPtr ex_error(std::string msg) {
  return mk(Expr::Kind::Error, [&](Expr& e) { e.str = std::move(msg); });
}

namespace {
BoolExprPtr mkb(BoolExpr::Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr,
                BoolExprPtr x = nullptr, BoolExprPtr y = nullptr) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  e->x = std::move(x);
  e->y = std::move(y);
  return e;
}
}  // namespace

BoolExprPtr bx_eq(ExprPtr a, ExprPtr b) {
  return mkb(BoolExpr::Kind::Eq, std::move(a), std::move(b));
}
BoolExprPtr bx_isvar(ExprPtr a) {
  return mkb(BoolExpr::Kind::IsVar, std::move(a));
}
BoolExprPtr bx_and(BoolExprPtr x, BoolExprPtr y) {
  return mkb(BoolExpr::Kind::And, nullptr, nullptr, std::move(x), std::move(y));
}
BoolExprPtr bx_or(BoolExprPtr x, BoolExprPtr y) {
  return mkb(BoolExpr::Kind::Or, nullptr, nullptr, std::move(x), std::move(y));
}
BoolExprPtr bx_not(BoolExprPtr x) {
  return mkb(BoolExpr::Kind::Not, nullptr, nullptr, std::move(x));
}

// ---------------------------------------------------------------------------
// Macro expansion

namespace {

ExprPtr surface_sublist_of(ExprPtr a, ExprPtr b);  // fwd (bool macro)

// Hygienic pattern-variable names: '%' is not an identifier character in the
// surface syntax, so these cannot clash with user variables.
const char* kSrc = "%src";
const char* kLbl = "%lbl";
const char* kTgt = "%tgt";

PatternPtr pos_pat() {
  return pat_pos(pat_var(kSrc), pat_var(kLbl), pat_var(kTgt));
}
PatternPtr neg_pat() { return pat_neg(pat_var(kSrc), pat_var(kLbl)); }
PatternPtr tpos_pat() {
  return pat_op("-->", {pat_var(kSrc), pat_var(kTgt)});
}
PatternPtr tneg_pat() {
  return pat_op("-/->", {pat_list({pat_var(kSrc)})});
}

ExprPtr expand_accessor(const std::string& name) {
  if (name == "premises.LTsources")
    return ex_append(ex_select(ex_premises(), pos_pat(), ex_patvar(kSrc)),
                     ex_select(ex_premises(), neg_pat(), ex_patvar(kSrc)));
  if (name == "premises.LTtargets")
    return ex_select(ex_premises(), pos_pat(), ex_patvar(kTgt));
  if (name == "conclusion.LTsource")
    return ex_head(ex_select(ex_list({ex_conclusion()}), pos_pat(),
                             ex_patvar(kSrc)));
  if (name == "conclusion.LTtarget")
    return ex_head(ex_select(ex_list({ex_conclusion()}), pos_pat(),
                             ex_patvar(kTgt)));
  if (name == "premises.Tsources")
    return ex_append(ex_select(ex_premises(), tpos_pat(), ex_patvar(kSrc)),
                     ex_select(ex_premises(), tneg_pat(), ex_patvar(kSrc)));
  if (name == "premises.Ttargets")
    return ex_select(ex_premises(), tpos_pat(), ex_patvar(kTgt));
  if (name == "conclusion.Tsource")
    return ex_head(ex_select(ex_list({ex_conclusion()}), tpos_pat(),
                             ex_patvar(kSrc)));
  if (name == "conclusion.Ttarget")
    return ex_head(ex_select(ex_list({ex_conclusion()}), tpos_pat(),
                             ex_patvar(kTgt)));
  throw std::runtime_error("unknown accessor: " + name);
}

}  // namespace

BoolExprPtr expand_macros(const BoolExprPtr& b) {
  if (!b) return b;
  switch (b->kind) {
    case BoolExpr::Kind::SublistOf:
      // e sublistOf e'  =>  (e - e') = []
      return bx_eq(ex_diff(expand_macros(b->a), expand_macros(b->b)),
                   ex_list({}));
    case BoolExpr::Kind::Eq:
      return bx_eq(expand_macros(b->a), expand_macros(b->b));
    case BoolExpr::Kind::IsVar:
      return bx_isvar(expand_macros(b->a));
    case BoolExpr::Kind::And:
      return bx_and(expand_macros(b->x), expand_macros(b->y));
    case BoolExpr::Kind::Or:
      return bx_or(expand_macros(b->x), expand_macros(b->y));
    case BoolExpr::Kind::Not:
      return bx_not(expand_macros(b->x));
  }
  return b;
}

ExprPtr expand_macros(const ExprPtr& e) {
  if (!e) return e;
  switch (e->kind) {
    case Expr::Kind::MustMatch: {
      // e must match p1|...|pn otherwise e'
      //   => if not((e - e[p1] - ... - e[pn]) = []) then e'
      ExprPtr src = expand_macros(e->a);
      ExprPtr d = src;
      for (const auto& p : e->pats)
        d = ex_diff(d, ex_select(src, p, ex_self()));
      return ex_if(bx_not(bx_eq(d, ex_list({}))), expand_macros(e->b),
                   ex_skip());
    }
    case Expr::Kind::MatchWith: {
      // match e with p -> e' otherwise e''
      //   => if [e][p] = [] then e'' else e'
      ExprPtr scrut = expand_macros(e->a);
      return ex_if(
          bx_eq(ex_select(ex_list({scrut}), e->pat, ex_self()), ex_list({})),
          expand_macros(e->c), expand_macros(e->b));
    }
    case Expr::Kind::DistinctVars: {
      // distinctVars(e) otherwise e'
      //   => uniquefy([(%distinct e)], "u", new, m):
      //        if not(m = ([] => [])) then e'
      ExprPtr vars = expand_macros(e->a);
      return ex_uniquefy(
          ex_list({ex_predlit("%distinct", vars)}), "u", "%new", "%m",
          ex_if(bx_not(bx_eq(ex_patvar("%m"),
                             ex_maplit(ex_list({}), ex_list({})))),
                expand_macros(e->b), ex_skip()));
    }
    case Expr::Kind::Accessor:
      return expand_accessor(e->str);
    // core nodes: expand children
    case Expr::Kind::PredLit:
      return ex_predlit(e->str, expand_macros(e->a));
    case Expr::Kind::ListLit: {
      std::vector<ExprPtr> items;
      items.reserve(e->items.size());
      for (const auto& x : e->items) items.push_back(expand_macros(x));
      return ex_list(std::move(items));
    }
    case Expr::Kind::Head:
      return ex_head(expand_macros(e->a));
    case Expr::Kind::Tail:
      return ex_tail(expand_macros(e->a));
    case Expr::Kind::Append:
      return ex_append(expand_macros(e->a), expand_macros(e->b));
    case Expr::Kind::Diff:
      return ex_diff(expand_macros(e->a), expand_macros(e->b));
    case Expr::Kind::MapLit:
      return ex_maplit(expand_macros(e->a), expand_macros(e->b));
    case Expr::Kind::MapGet:
      return ex_mapget(expand_macros(e->a), expand_macros(e->b));
    case Expr::Kind::Select:
      return ex_select(expand_macros(e->a), e->pat, expand_macros(e->b));
    case Expr::Kind::Uniquefy:
      return ex_uniquefy(expand_macros(e->a), e->str, e->name1, e->name2,
                         expand_macros(e->b));
    case Expr::Kind::GetVars:
      return ex_getvars(expand_macros(e->a));
    case Expr::Kind::If:
      return ex_if(expand_macros(e->cond), expand_macros(e->b),
                   expand_macros(e->c));
    case Expr::Kind::PatVar:
    case Expr::Kind::StrLit:
    case Expr::Kind::TermLit:
    case Expr::Kind::Rules:
    case Expr::Kind::Premises:
    case Expr::Kind::Conclusion:
    case Expr::Kind::Self:
    case Expr::Kind::Skip:
    case Expr::Kind::Error:
      return e;
  }
  return e;
}

namespace {
bool core_bool(const BoolExprPtr& b) {
  if (!b) return true;
  if (b->kind == BoolExpr::Kind::SublistOf) return false;
  return is_core(b->a) && is_core(b->b) && core_bool(b->x) && core_bool(b->y);
}
}  // namespace

bool is_core(const ExprPtr& e) {
  if (!e) return true;
  switch (e->kind) {
    case Expr::Kind::MustMatch:
    case Expr::Kind::MatchWith:
    case Expr::Kind::DistinctVars:
    case Expr::Kind::Accessor:
      return false;
    default:
      break;
  }
  for (const auto& x : e->items)
    if (!is_core(x)) return false;
  return is_core(e->a) && is_core(e->b) && is_core(e->c) && core_bool(e->cond);
}

// ---------------------------------------------------------------------------
// Structural equality

bool pattern_equal(const PatternPtr& a, const PatternPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name ||
      a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!pattern_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool bool_equal(const BoolExprPtr& a, const BoolExprPtr& b) {
  if (!a || !b) return a == b;
  return a->kind == b->kind && expr_equal(a->a, b->a) &&
         expr_equal(a->b, b->b) && bool_equal(a->x, b->x) &&
         bool_equal(a->y, b->y);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->str != b->str || !(a->term == b->term) ||
      a->name1 != b->name1 || a->name2 != b->name2 ||
      a->items.size() != b->items.size() || a->pats.size() != b->pats.size())
    return false;
  for (size_t i = 0; i < a->items.size(); ++i)
    if (!expr_equal(a->items[i], b->items[i])) return false;
  for (size_t i = 0; i < a->pats.size(); ++i)
    if (!pattern_equal(a->pats[i], b->pats[i])) return false;
  return expr_equal(a->a, b->a) && expr_equal(a->b, b->b) &&
         expr_equal(a->c, b->c) && bool_equal(a->cond, b->cond) &&
         pattern_equal(a->pat, b->pat);
}

// ---------------------------------------------------------------------------
// Surface-syntax parser

namespace {

enum class T {
  Ident, Str, LBracket, RBracket, LParen, RParen, Colon, SemiSemi, Pipe,
  ThinArrow /* -> */, FatArrow /* => */, FullArrow /* --> */, At, Minus, Eq,
  Comma, Question, Dot, ArrowOpen /* --( */, ArrowClose /* )--> */,
  NegOpen /* -/-( */, Eof,
};

struct Token {
  T kind;
  std::string text;
  int line;
  int col;
};

class DslLexer {
 public:
  explicit DslLexer(std::string_view text) : text_(text) {}

  std::vector<Token> lex() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      int line = line_, col = col_;
      if (pos_ >= text_.size()) {
        out.push_back({T::Eof, "", line, col});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_' || text_[pos_] == '\''))
          advance();
        out.push_back({T::Ident, std::string(text_.substr(start, pos_ - start)),
                       line, col});
      } else if (c == '"') {
        advance();
        std::string s;
        while (pos_ < text_.size() && text_[pos_] != '"') {
          if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
            advance();
            s += text_[pos_];
          } else {
            s += text_[pos_];
          }
          advance();
        }
        if (pos_ >= text_.size())
          throw ParseError("unterminated string literal", line, col);
        advance();
        out.push_back({T::Str, std::move(s), line, col});
      } else if (c == '-') {
        if (match("-/-(")) {
          out.push_back({T::NegOpen, "-/-(", line, col});
        } else if (match("-->")) {
          out.push_back({T::FullArrow, "-->", line, col});
        } else if (match("--(")) {
          out.push_back({T::ArrowOpen, "--(", line, col});
        } else if (match("->")) {
          out.push_back({T::ThinArrow, "->", line, col});
        } else {
          advance();
          out.push_back({T::Minus, "-", line, col});
        }
      } else if (c == ')') {
        if (match(")-->")) {
          out.push_back({T::ArrowClose, ")-->", line, col});
        } else {
          advance();
          out.push_back({T::RParen, ")", line, col});
        }
      } else if (c == '=') {
        if (match("=>")) {
          out.push_back({T::FatArrow, "=>", line, col});
        } else {
          advance();
          out.push_back({T::Eq, "=", line, col});
        }
      } else if (c == ';') {
        if (!match(";;"))
          throw ParseError("expected ';;' between checks", line, col);
        out.push_back({T::SemiSemi, ";;", line, col});
      } else {
        advance();
        switch (c) {
          case '[': out.push_back({T::LBracket, "[", line, col}); break;
          case ']': out.push_back({T::RBracket, "]", line, col}); break;
          case '(': out.push_back({T::LParen, "(", line, col}); break;
          case ':': out.push_back({T::Colon, ":", line, col}); break;
          case '|': out.push_back({T::Pipe, "|", line, col}); break;
          case '@': out.push_back({T::At, "@", line, col}); break;
          case ',': out.push_back({T::Comma, ",", line, col}); break;
          case '?': out.push_back({T::Question, "?", line, col}); break;
          case '.': out.push_back({T::Dot, ".", line, col}); break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'",
                             line, col);
        }
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
  bool match(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) return false;
    for (size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_keyword(const std::string& s) {
  static const char* kw[] = {
      "rules", "premises", "conclusion", "self",  "skip",     "error",
      "if",    "then",     "else",       "match", "with",     "must",
      "otherwise", "distinctVars", "uniquefy", "getVars", "head", "tail",
      "isVar", "not", "and", "or", "sublistOf"};
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

class DslParser {
 public:
  explicit DslParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse() {
    Program prog;
    prog.statements.push_back(parse_expr());
    while (cur().kind == T::SemiSemi) {
      take();
      prog.statements.push_back(parse_expr());
    }
    if (cur().kind != T::Eof) fail("expected ';;' or end of program");
    return prog;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& peek(size_t k) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  Token take() { return toks_[i_++]; }
  bool at_ident(const char* s) const {
    return cur().kind == T::Ident && cur().text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }
  Token expect(T k, const std::string& what) {
    if (cur().kind != k) fail("expected " + what);
    return take();
  }
  void expect_ident(const char* s) {
    if (!at_ident(s)) fail(std::string("expected '") + s + "'");
    take();
  }

  ExprPtr parse_expr() {
    if (at_ident("if")) {
      take();
      BoolExprPtr cond = parse_bool();
      expect_ident("then");
      ExprPtr then_e = parse_expr();
      ExprPtr else_e = ex_skip();
      if (at_ident("else")) {
        take();
        else_e = parse_expr();
      }
      return ex_if(std::move(cond), std::move(then_e), std::move(else_e));
    }
    if (at_ident("match")) {
      take();
      ExprPtr scrut = parse_expr_no_mustmatch();
      expect_ident("with");
      PatternPtr p = parse_pattern();
      ExprPtr then_e = ex_skip();
      if (cur().kind == T::ThinArrow) {
        take();
        then_e = parse_expr();
      }
      ExprPtr else_e = ex_skip();
      if (at_ident("otherwise")) {
        take();
        else_e = parse_expr();
      }
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::MatchWith;
      e->a = std::move(scrut);
      e->pat = std::move(p);
      e->b = std::move(then_e);
      e->c = std::move(else_e);
      return e;
    }
    if (at_ident("uniquefy")) {
      take();
      expect(T::LParen, "'('");
      ExprPtr input = parse_expr();
      expect(T::Comma, "','");
      std::string hint = expect(T::Str, "a string").text;
      expect(T::Comma, "','");
      std::string nv = expect(T::Ident, "an identifier").text;
      expect(T::Comma, "','");
      std::string mv = expect(T::Ident, "an identifier").text;
      expect(T::RParen, "')'");
      expect(T::Colon, "':'");
      ExprPtr body = parse_expr();
      return ex_uniquefy(std::move(input), std::move(hint), std::move(nv),
                         std::move(mv), std::move(body));
    }
    if (at_ident("distinctVars")) {
      take();
      expect(T::LParen, "'('");
      ExprPtr vars = parse_expr();
      expect(T::RParen, "')'");
      expect_ident("otherwise");
      ExprPtr else_e = parse_expr();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::DistinctVars;
      e->a = std::move(vars);
      e->b = std::move(else_e);
      return e;
    }
    if (at_ident("error")) {
      take();
      return ex_error(expect(T::Str, "an error message string").text);
    }
    return parse_mustmatch();
  }

  // Everything below `must match` level; used where a trailing macro
  // keyword belongs to an enclosing construct.
  ExprPtr parse_expr_no_mustmatch() { return parse_cat(); }

  ExprPtr parse_mustmatch() {
    ExprPtr e = parse_cat();
    if (at_ident("must")) {
      Token t = cur();
      take();
      expect_ident("match");
      std::vector<PatternPtr> pats;
      pats.push_back(parse_pattern());
      while (cur().kind == T::Pipe) {
        take();
        pats.push_back(parse_pattern());
      }
      if (pats.empty())
        throw ParseError("'must match' needs at least one pattern", t.line,
                         t.col);
      expect_ident("otherwise");
      ExprPtr else_e = parse_expr();
      auto m = std::make_shared<Expr>();
      m->kind = Expr::Kind::MustMatch;
      m->a = std::move(e);
      m->pats = std::move(pats);
      m->b = std::move(else_e);
      return m;
    }
    return e;
  }

  ExprPtr parse_cat() {
    ExprPtr e = parse_postfix();
    for (;;) {
      if (cur().kind == T::At) {
        take();
        e = ex_append(std::move(e), parse_postfix());
      } else if (cur().kind == T::Minus) {
        take();
        e = ex_diff(std::move(e), parse_postfix());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    for (;;) {
      if (cur().kind == T::LBracket) {
        take();
        PatternPtr p;
        if (cur().kind == T::FullArrow) {
          // rules[-->]: select by positive-transition conclusion
          take();
          p = pat_pos(pat_var("_"), pat_var("_"), pat_var("_"));
        } else {
          p = parse_pattern();
        }
        expect(T::RBracket, "']'");
        ExprPtr body;
        if (cur().kind == T::Colon) {
          take();
          ++select_depth_;
          body = parse_expr();
          --select_depth_;
        } else {
          body = ex_self();
        }
        e = ex_select(std::move(e), std::move(p), std::move(body));
      } else if (cur().kind == T::LParen) {
        take();
        ExprPtr k = parse_expr();
        expect(T::RParen, "')'");
        e = ex_mapget(std::move(e), std::move(k));
      } else {
        return e;
      }
    }
  }

  ExprPtr in_select(ExprPtr e) {
    if (select_depth_ == 0)
      fail("'" + std::string("premises/conclusion/self") +
           "' may only appear inside a selector body");
    return e;
  }

  ExprPtr parse_primary() {
    switch (cur().kind) {
      case T::Str:
        return ex_str(take().text);
      case T::LBracket: {
        take();
        std::vector<ExprPtr> items;
        if (cur().kind != T::RBracket) {
          items.push_back(parse_expr());
          while (cur().kind == T::Comma) {
            take();
            items.push_back(parse_expr());
          }
        }
        expect(T::RBracket, "']'");
        return ex_list(std::move(items));
      }
      case T::LParen:
        return parse_paren();
      case T::Ident:
        break;
      default:
        fail("expected an expression");
    }
    const std::string name = cur().text;
    if (name == "rules") {
      take();
      return ex_rules();
    }
    if (name == "skip") {
      take();
      return ex_skip();
    }
    if (name == "self") {
      take();
      return in_select(ex_self());
    }
    if (name == "premises" || name == "conclusion") {
      take();
      if (cur().kind == T::Dot) {
        take();
        std::string field = expect(T::Ident, "an accessor name").text;
        std::string full = name + "." + field;
        bool ok = field == "LTsources" || field == "LTtargets" ||
                  field == "Tsources" || field == "Ttargets" ||
                  field == "LTsource" || field == "LTtarget" ||
                  field == "Tsource" || field == "Ttarget";
        bool prem = name == "premises";
        bool plural = field.back() == 's';
        if (!ok || prem != plural) fail("unknown accessor '" + full + "'");
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Accessor;
        e->str = std::move(full);
        return in_select(e);
      }
      return in_select(name == "premises" ? ex_premises() : ex_conclusion());
    }
    if (name == "getVars") {
      take();
      expect(T::LParen, "'('");
      ExprPtr e = parse_expr();
      expect(T::RParen, "')'");
      return ex_getvars(std::move(e));
    }
    if (name == "head" || name == "tail") {
      take();
      ExprPtr e = parse_postfix();
      return name == "head" ? ex_head(std::move(e)) : ex_tail(std::move(e));
    }
    if (name == "error") {
      take();
      return ex_error(expect(T::Str, "an error message string").text);
    }
    if (is_keyword(name)) fail("unexpected keyword '" + name + "'");
    take();
    return ex_patvar(name);
  }

  // '(' ... ')': a term literal when it starts with a non-keyword
  // identifier (unless followed by '=>'), otherwise a map literal or a
  // parenthesized expression.
  ExprPtr parse_paren() {
    expect(T::LParen, "'('");
    if (cur().kind == T::Ident && !is_keyword(cur().text) &&
        peek(1).kind != T::FatArrow) {
      std::string op = take().text;
      std::vector<Term> args;
      while (cur().kind != T::RParen) args.push_back(parse_term());
      take();
      return ex_termlit(Term::mk_app(std::move(op), std::move(args)));
    }
    ExprPtr first = parse_expr();
    if (cur().kind == T::FatArrow) {
      take();
      ExprPtr second = parse_expr();
      expect(T::RParen, "')'");
      return ex_maplit(std::move(first), std::move(second));
    }
    expect(T::RParen, "')'");
    return first;
  }

  // Term literal internals: identifiers are DSL pattern variables.
  Term parse_term() {
    if (cur().kind == T::Ident) {
      Token t = take();
      return Term::mk_var(MetaVar{t.text, ""});
    }
    if (cur().kind == T::LParen) {
      take();
      if (cur().kind != T::Ident) fail("expected an operator name");
      std::string op = take().text;
      std::vector<Term> args;
      while (cur().kind != T::RParen) {
        if (cur().kind == T::Eof) fail("unbalanced parentheses");
        args.push_back(parse_term());
      }
      take();
      return Term::mk_app(std::move(op), std::move(args));
    }
    fail("expected a term");
  }

  BoolExprPtr parse_bool() {
    BoolExprPtr x = parse_bool_and();
    while (at_ident("or")) {
      take();
      x = bx_or(std::move(x), parse_bool_and());
    }
    return x;
  }

  BoolExprPtr parse_bool_and() {
    BoolExprPtr x = parse_bool_atom();
    while (at_ident("and")) {
      take();
      x = bx_and(std::move(x), parse_bool_atom());
    }
    return x;
  }

  BoolExprPtr parse_bool_atom() {
    if (at_ident("not")) {
      take();
      expect(T::LParen, "'('");
      BoolExprPtr x = parse_bool();
      expect(T::RParen, "')'");
      return bx_not(std::move(x));
    }
    if (at_ident("isVar")) {
      take();
      expect(T::LParen, "'('");
      ExprPtr e = parse_expr();
      expect(T::RParen, "')'");
      return bx_isvar(std::move(e));
    }
    ExprPtr lhs = parse_cat();
    if (cur().kind == T::Eq) {
      take();
      return bx_eq(std::move(lhs), parse_cat());
    }
    if (at_ident("sublistOf")) {
      take();
      auto b = std::make_shared<BoolExpr>();
      b->kind = BoolExpr::Kind::SublistOf;
      b->a = std::move(lhs);
      b->b = parse_cat();
      return b;
    }
    fail("expected '=' or 'sublistOf'");
  }

  PatternPtr parse_pattern() {
    PatternPtr p = parse_simple_pattern();
    if (cur().kind == T::ArrowOpen) {
      take();
      PatternPtr lbl = parse_simple_pattern();
      expect(T::ArrowClose, "')-->'");
      PatternPtr tgt = parse_simple_pattern();
      return pat_pos(std::move(p), std::move(lbl), std::move(tgt));
    }
    if (cur().kind == T::NegOpen) {
      take();
      PatternPtr lbl = parse_simple_pattern();
      expect(T::ArrowClose, "')-->'");
      return pat_neg(std::move(p), std::move(lbl));
    }
    return p;
  }

  PatternPtr parse_simple_pattern() {
    if (cur().kind == T::Ident) {
      if (is_keyword(cur().text)) fail("unexpected keyword in pattern");
      return pat_var(take().text);
    }
    if (cur().kind == T::LBracket) {
      take();
      std::vector<PatternPtr> elems;
      while (cur().kind != T::RBracket) {
        if (cur().kind == T::Comma) {
          take();
          continue;
        }
        elems.push_back(parse_simple_pattern());
      }
      take();
      return pat_list(std::move(elems));
    }
    if (cur().kind == T::LParen) {
      take();
      if (cur().kind == T::Question) {
        take();
        std::string head = expect(T::Ident, "a head variable").text;
        std::vector<PatternPtr> args;
        while (cur().kind != T::RParen) args.push_back(parse_simple_pattern());
        take();
        return pat_any_head(std::move(head), std::move(args));
      }
      std::string opname = expect(T::Ident, "an operator name").text;
      std::vector<PatternPtr> args;
      while (cur().kind != T::RParen) args.push_back(parse_simple_pattern());
      take();
      return pat_op(std::move(opname), std::move(args));
    }
    fail("expected a pattern");
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  int select_depth_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
  Program surface = DslParser(DslLexer(text).lex()).parse();
  Program out;
  out.statements.reserve(surface.statements.size());
  for (const auto& s : surface.statements)
    out.statements.push_back(expand_macros(s));
  return out;
}

}  // namespace lnc
