#include "lnc/eval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lnc {

Value Value::unit() { return Value{}; }
Value Value::of_term(Term t) {
  Value v;
  v.kind = Kind::Term;
  v.term = std::move(t);
  return v;
}
Value Value::of_str(std::string s) {
  Value v;
  v.kind = Kind::Str;
  v.str = std::move(s);
  return v;
}
Value Value::of_list(std::vector<Value> vs) {
  Value v;
  v.kind = Kind::List;
  v.list = std::move(vs);
  return v;
}
Value Value::of_map(std::vector<std::pair<Value, Value>> m) {
  Value v;
  v.kind = Kind::Map;
  v.map = std::move(m);
  return v;
}
Value Value::of_rule(Rule r) {
  Value v;
  v.kind = Kind::Rule;
  v.rule = std::move(r);
  return v;
}
Value Value::of_formula(Formula f) {
  Value v;
  v.kind = Kind::Formula;
  v.formula = std::move(f);
  return v;
}

std::string render_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Term:
      return print_term(v.term);
    case Value::Kind::Str:
      return "\"" + v.str + "\"";
    case Value::Kind::List: {
      std::string out = "[";
      for (size_t i = 0; i < v.list.size(); ++i) {
        if (i) out += ", ";
        out += render_value(v.list[i]);
      }
      return out + "]";
    }
    case Value::Kind::Map: {
      std::string keys = "[", vals = "[";
      for (size_t i = 0; i < v.map.size(); ++i) {
        if (i) {
          keys += ", ";
          vals += ", ";
        }
        keys += render_value(v.map[i].first);
        vals += render_value(v.map[i].second);
      }
      return "(" + keys + "] => " + vals + "])";
    }
    case Value::Kind::Rule:
      return print_rule(v.rule);
    case Value::Kind::Formula:
      return print_formula(v.formula);
    case Value::Kind::Unit:
      return "unit";
  }
  return {};
}

namespace {

[[noreturn]] void fault(const std::string& msg) {
  throw EvalError{EvalError::Kind::RuntimeFault, msg, {}, {}};
}

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Term: return "term";
    case Value::Kind::Str: return "string";
    case Value::Kind::List: return "list";
    case Value::Kind::Map: return "map";
    case Value::Kind::Rule: return "rule";
    case Value::Kind::Formula: return "formula";
    case Value::Kind::Unit: return "unit";
  }
  return "?";
}

}  // namespace

std::vector<Value> list_diff(const std::vector<Value>& a,
                             const std::vector<Value>& b) {
  std::vector<Value> out;
  for (const auto& x : a) {
    bool removed = std::any_of(b.begin(), b.end(),
                               [&](const Value& y) { return x == y; });
    if (!removed) out.push_back(x);
  }
  return out;
}

namespace {
void vars_of_value(const Value& v, std::vector<Value>& out) {
  switch (v.kind) {
    case Value::Kind::Term:
      for (auto& mv : term_vars(v.term))
        out.push_back(Value::of_term(Term::mk_var(std::move(mv))));
      return;
    case Value::Kind::Formula:
      for (const auto& t : v.formula.args)
        for (auto& mv : term_vars(t))
          out.push_back(Value::of_term(Term::mk_var(std::move(mv))));
      return;
    case Value::Kind::Rule: {
      for (const auto& p : v.rule.premises)
        vars_of_value(Value::of_formula(p), out);
      vars_of_value(Value::of_formula(v.rule.conclusion), out);
      return;
    }
    case Value::Kind::List:
      for (const auto& x : v.list) vars_of_value(x, out);
      return;
    default:
      fault(std::string("getVars applied to a ") + kind_name(v.kind));
  }
}
}  // namespace

std::vector<Value> get_vars(const Value& v) {
  std::vector<Value> out;
  vars_of_value(v, out);
  return out;
}

UniquefyResult uniquefy_formulas(const std::vector<Formula>& formulas,
                                 const std::string& /*hint*/) {
  // Occurrence counts, in first-occurrence order.
  std::vector<std::pair<MetaVar, int>> counts;
  auto visit_counts = [&](const Term& t, auto&& self) -> void {
    if (t.kind == Term::Kind::Var) {
      for (auto& c : counts)
        if (c.first == t.var) {
          ++c.second;
          return;
        }
      counts.emplace_back(t.var, 1);
      return;
    }
    for (const auto& a : t.args) self(a, self);
  };
  for (const auto& f : formulas)
    for (const auto& t : f.args) visit_counts(t, visit_counts);

  std::set<std::string> used;
  for (const auto& c : counts) used.insert(c.first.name());

  auto count_of = [&](const MetaVar& v) {
    for (const auto& c : counts)
      if (c.first == v) return c.second;
    return 0;
  };

  std::vector<std::pair<MetaVar, std::vector<MetaVar>>> changes;
  auto replacements_of = [&](const MetaVar& v) -> std::vector<MetaVar>& {
    for (auto& c : changes)
      if (c.first == v) return c.second;
    changes.emplace_back(v, std::vector<MetaVar>{});
    return changes.back().second;
  };

  UniquefyResult res;
  auto rewrite = [&](const Term& t, auto&& self) -> Term {
    if (t.kind == Term::Kind::Var) {
      if (count_of(t.var) < 2) return t;
      auto& repls = replacements_of(t.var);
      // k-th occurrence gets root+suffix+k; bump the index past collisions
      int j = static_cast<int>(repls.size()) + 1;
      MetaVar fresh;
      for (;; ++j) {
        fresh = MetaVar{t.var.root, t.var.suffix + std::to_string(j)};
        if (!used.count(fresh.name())) break;
      }
      used.insert(fresh.name());
      repls.push_back(fresh);
      return Term::mk_var(fresh);
    }
    Term out = t;
    for (auto& a : out.args) a = self(a, self);
    return out;
  };
  for (const auto& f : formulas) {
    Formula nf = f;
    for (auto& t : nf.args) t = rewrite(t, rewrite);
    res.formulas.push_back(std::move(nf));
  }
  for (auto& [orig, repls] : changes) {
    std::vector<Value> rs;
    for (auto& r : repls) rs.push_back(Value::of_term(Term::mk_var(r)));
    res.changes.emplace_back(Value::of_term(Term::mk_var(orig)),
                             Value::of_list(std::move(rs)));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Evaluator

void Evaluator::bind(const std::string& name, Value v) {
  env_[name] = std::move(v);
}

const Value* Evaluator::lookup(const std::string& name) const {
  auto it = env_.find(name);
  return it == env_.end() ? nullptr : &it->second;
}

void Evaluator::reset() {
  env_.clear();
  self_stack_.clear();
  rule_stack_.clear();
}

Value Evaluator::run(const Program& prog) {
  Value last = Value::unit();
  for (const auto& stmt : prog.statements) {
    reset();
    last = eval(stmt);
  }
  return last;
}

bool Evaluator::match_into(const PatternPtr& p, const Value& v,
                           std::map<std::string, Value>& out) {
  switch (p->kind) {
    case Pattern::Kind::Var: {
      if (p->name == "_") return true;
      auto it = out.find(p->name);
      if (it != out.end()) return it->second == v;  // nonlinear: must agree
      out.emplace(p->name, v);
      return true;
    }
    case Pattern::Kind::List: {
      if (v.kind != Value::Kind::List || v.list.size() != p->args.size())
        return false;
      for (size_t i = 0; i < p->args.size(); ++i)
        if (!match_into(p->args[i], v.list[i], out)) return false;
      return true;
    }
    case Pattern::Kind::Op: {
      if (v.kind == Value::Kind::Term && v.term.kind == Term::Kind::App &&
          v.term.op == p->name)
        return match_args(p->args, v.term.args, out);
      if (v.kind == Value::Kind::Formula &&
          v.formula.kind == Formula::Kind::Pred && v.formula.pred == p->name)
        return match_args(p->args, v.formula.args, out);
      if (v.kind == Value::Kind::Rule)
        return match_into(p, Value::of_formula(v.rule.conclusion), out);
      return false;
    }
    case Pattern::Kind::AnyHead: {
      std::string head;
      const std::vector<Term>* args = nullptr;
      if (v.kind == Value::Kind::Term && v.term.kind == Term::Kind::App) {
        head = v.term.op;
        args = &v.term.args;
      } else if (v.kind == Value::Kind::Formula &&
                 v.formula.kind == Formula::Kind::Pred) {
        head = v.formula.pred;
        args = &v.formula.args;
      } else if (v.kind == Value::Kind::Rule) {
        return match_into(p, Value::of_formula(v.rule.conclusion), out);
      } else {
        return false;
      }
      if (!match_args(p->args, *args, out)) return false;
      if (p->name == "_") return true;
      auto it = out.find(p->name);
      if (it != out.end()) return it->second == Value::of_str(head);
      out.emplace(p->name, Value::of_str(head));
      return true;
    }
    case Pattern::Kind::Pos: {
      const Formula* f = nullptr;
      if (v.kind == Value::Kind::Formula) f = &v.formula;
      else if (v.kind == Value::Kind::Rule) f = &v.rule.conclusion;
      else return false;
      if (f->kind != Formula::Kind::Pos) return false;
      return match_into(p->args[0], Value::of_term(f->source()), out) &&
             match_into(p->args[1], Value::of_term(f->label()), out) &&
             match_into(p->args[2], Value::of_term(f->target()), out);
    }
    case Pattern::Kind::Neg: {
      const Formula* f = nullptr;
      if (v.kind == Value::Kind::Formula) f = &v.formula;
      else if (v.kind == Value::Kind::Rule) f = &v.rule.conclusion;
      else return false;
      if (f->kind != Formula::Kind::Neg) return false;
      return match_into(p->args[0], Value::of_term(f->source()), out) &&
             match_into(p->args[1], Value::of_term(f->label()), out);
    }
  }
  return false;
}

// Argument-list matching for head patterns. A single variable pattern
// captures the whole argument list; a single list pattern matches the
// argument list element-wise; otherwise the patterns match the arguments
// positionally.
bool Evaluator::match_args(const std::vector<PatternPtr>& pats,
                           const std::vector<Term>& args,
                           std::map<std::string, Value>& out) {
  auto as_list = [&] {
    std::vector<Value> vs;
    vs.reserve(args.size());
    for (const auto& t : args) vs.push_back(Value::of_term(t));
    return Value::of_list(std::move(vs));
  };
  if (pats.size() == 1 && pats[0]->kind == Pattern::Kind::Var)
    return match_into(pats[0], as_list(), out);
  if (pats.size() == 1 && pats[0]->kind == Pattern::Kind::List)
    return match_into(pats[0], as_list(), out);
  if (pats.size() != args.size()) return false;
  for (size_t i = 0; i < pats.size(); ++i)
    if (!match_into(pats[i], Value::of_term(args[i]), out)) return false;
  return true;
}

bool Evaluator::match_pattern(const PatternPtr& p, const Value& v) {
  std::map<std::string, Value> bound;
  if (!match_into(p, v, bound)) return false;
  for (auto& [name, val] : bound) env_[name] = std::move(val);
  return true;
}

Value Evaluator::eval_term_lit(const Term& t) {
  if (t.kind == Term::Kind::Var) {
    const Value* v = lookup(t.var.name());
    if (!v) fault("unbound variable '" + t.var.name() + "'");
    if (v->kind != Value::Kind::Term)
      fault("variable '" + t.var.name() + "' is bound to a " +
            kind_name(v->kind) + ", not a term");
    return *v;
  }
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval_term_lit(a).term);
  return Value::of_term(Term::mk_app(t.op, std::move(args)));
}

Value Evaluator::eval_select(const Expr& e) {
  Value src = eval(e.a);
  if (src.kind != Value::Kind::List)
    fault(std::string("selector applied to a ") + kind_name(src.kind));
  std::vector<Value> results;
  for (const auto& elem : src.list) {
    if (!match_pattern(e.pat, elem)) continue;  // non-matches skipped
    bool pushed_rule = elem.kind == Value::Kind::Rule;
    if (pushed_rule) {
      int index = 0;
      for (size_t i = 0; i < lang_.rules.size(); ++i)
        if (lang_.rules[i] == elem.rule) {
          index = static_cast<int>(i) + 1;
          break;
        }
      rule_stack_.push_back({elem.rule, index});
    }
    self_stack_.push_back(elem);
    try {
      results.push_back(eval(e.b));
    } catch (EvalError& err) {
      if (!err.rule_index && !rule_stack_.empty()) {
        err.rule_index = rule_stack_.back().index;
        err.rule = rule_stack_.back().rule;
      }
      self_stack_.pop_back();
      if (pushed_rule) rule_stack_.pop_back();
      throw;
    }
    self_stack_.pop_back();
    if (pushed_rule) rule_stack_.pop_back();
  }
  return Value::of_list(std::move(results));
}

bool Evaluator::eval_bool(const BoolExprPtr& b) {
  switch (b->kind) {
    case BoolExpr::Kind::Eq:
      return eval(b->a) == eval(b->b);
    case BoolExpr::Kind::IsVar: {
      Value v = eval(b->a);
      return v.kind == Value::Kind::Term && v.term.is_var();
    }
    case BoolExpr::Kind::And:
      return eval_bool(b->x) && eval_bool(b->y);
    case BoolExpr::Kind::Or:
      return eval_bool(b->x) || eval_bool(b->y);
    case BoolExpr::Kind::Not:
      return !eval_bool(b->x);
    case BoolExpr::Kind::SublistOf:
      fault("non-core boolean reached the evaluator");
  }
  return false;
}

Value Evaluator::eval(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::PatVar: {
      const Value* v = lookup(e->str);
      if (!v) fault("unbound variable '" + e->str + "'");
      return *v;
    }
    case Expr::Kind::StrLit:
      return Value::of_str(e->str);
    case Expr::Kind::TermLit:
      return eval_term_lit(e->term);
    case Expr::Kind::PredLit: {
      Value args = eval(e->a);
      if (args.kind != Value::Kind::List)
        fault("predicate arguments must be a list");
      std::vector<Term> ts;
      for (const auto& v : args.list) {
        if (v.kind != Value::Kind::Term)
          fault(std::string("predicate argument is a ") + kind_name(v.kind));
        ts.push_back(v.term);
      }
      return Value::of_formula(Formula::mk_pred(e->str, std::move(ts)));
    }
    case Expr::Kind::ListLit: {
      std::vector<Value> vs;
      vs.reserve(e->items.size());
      for (const auto& x : e->items) vs.push_back(eval(x));
      return Value::of_list(std::move(vs));
    }
    case Expr::Kind::Head: {
      Value v = eval(e->a);
      if (v.kind != Value::Kind::List)
        fault(std::string("head of a ") + kind_name(v.kind));
      if (v.list.empty()) fault("head of an empty list");
      return v.list.front();
    }
    case Expr::Kind::Tail: {
      Value v = eval(e->a);
      if (v.kind != Value::Kind::List)
        fault(std::string("tail of a ") + kind_name(v.kind));
      if (v.list.empty()) fault("tail of an empty list");
      return Value::of_list(
          std::vector<Value>(v.list.begin() + 1, v.list.end()));
    }
    case Expr::Kind::Append: {
      Value a = eval(e->a), b = eval(e->b);
      if (a.kind != Value::Kind::List || b.kind != Value::Kind::List)
        fault("append applied to a non-list");
      std::vector<Value> out = a.list;
      out.insert(out.end(), b.list.begin(), b.list.end());
      return Value::of_list(std::move(out));
    }
    case Expr::Kind::Diff: {
      Value a = eval(e->a), b = eval(e->b);
      if (a.kind != Value::Kind::List || b.kind != Value::Kind::List)
        fault("list difference applied to a non-list");
      return Value::of_list(list_diff(a.list, b.list));
    }
    case Expr::Kind::MapLit: {
      Value keys = eval(e->a), vals = eval(e->b);
      if (keys.kind != Value::Kind::List || vals.kind != Value::Kind::List)
        fault("map literal requires two lists");
      if (keys.list.size() != vals.list.size())
        fault("map literal with key and value lists of different lengths");
      std::vector<std::pair<Value, Value>> m;
      for (size_t i = 0; i < keys.list.size(); ++i) {
        for (const auto& kv : m)
          if (kv.first == keys.list[i]) fault("duplicate map key");
        m.emplace_back(keys.list[i], vals.list[i]);
      }
      return Value::of_map(std::move(m));
    }
    case Expr::Kind::MapGet: {
      Value m = eval(e->a), k = eval(e->b);
      if (m.kind != Value::Kind::Map)
        fault(std::string("map lookup on a ") + kind_name(m.kind));
      for (const auto& kv : m.map)
        if (kv.first == k) return kv.second;
      fault("map key not found: " + render_value(k));
    }
    case Expr::Kind::Rules: {
      std::vector<Value> vs;
      vs.reserve(lang_.rules.size());
      for (const auto& r : lang_.rules) vs.push_back(Value::of_rule(r));
      return Value::of_list(std::move(vs));
    }
    case Expr::Kind::Premises: {
      if (rule_stack_.empty()) fault("'premises' used outside a rule selector");
      std::vector<Value> vs;
      for (const auto& f : rule_stack_.back().rule.premises)
        vs.push_back(Value::of_formula(f));
      return Value::of_list(std::move(vs));
    }
    case Expr::Kind::Conclusion:
      if (rule_stack_.empty())
        fault("'conclusion' used outside a rule selector");
      return Value::of_formula(rule_stack_.back().rule.conclusion);
    case Expr::Kind::Self:
      if (self_stack_.empty()) fault("'self' used outside a selector");
      return self_stack_.back();
    case Expr::Kind::Select:
      return eval_select(*e);
    case Expr::Kind::Uniquefy: {
      Value input = eval(e->a);
      if (input.kind != Value::Kind::List)
        fault("uniquefy requires a list of formulae");
      std::vector<Formula> fs;
      for (const auto& v : input.list) {
        if (v.kind != Value::Kind::Formula)
          fault(std::string("uniquefy element is a ") + kind_name(v.kind));
        fs.push_back(v.formula);
      }
      UniquefyResult r = uniquefy_formulas(fs, e->str);
      std::vector<Value> nfs;
      for (auto& f : r.formulas) nfs.push_back(Value::of_formula(std::move(f)));
      bind(e->name1, Value::of_list(std::move(nfs)));
      bind(e->name2, Value::of_map(std::move(r.changes)));
      return eval(e->b);
    }
    case Expr::Kind::GetVars:
      return Value::of_list(get_vars(eval(e->a)));
    case Expr::Kind::If:
      return eval_bool(e->cond) ? eval(e->b) : eval(e->c);
    case Expr::Kind::Skip:
      return Value::unit();
    case Expr::Kind::Error:
      throw EvalError{EvalError::Kind::UserError, e->str, {}, {}};
    case Expr::Kind::MustMatch:
    case Expr::Kind::MatchWith:
    case Expr::Kind::DistinctVars:
    case Expr::Kind::Accessor:
      fault("non-core expression reached the evaluator");
  }
  fault("unreachable");
}

}  // namespace lnc
