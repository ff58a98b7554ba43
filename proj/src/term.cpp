#include "resil/term.hpp"

#include <algorithm>

namespace resil {

bool Expr::closed() const {
  switch (kind) {
    case Kind::Lit:
      return true;
    case Kind::Var:
      return false;
    default:
      return std::all_of(kids.begin(), kids.end(),
                         [](const Expr& e) { return e.closed(); });
  }
}

std::string Expr::str() const {
  switch (kind) {
    case Kind::Lit:
      return lit.str();
    case Kind::Var:
      return var;
    case Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) s += ",";
        s += kids[i].str();
      }
      return s + ")";
    }
    case Kind::Add:
      return "(" + kids[0].str() + "+" + kids[1].str() + ")";
    case Kind::Sub:
      return "(" + kids[0].str() + "-" + kids[1].str() + ")";
  }
  return "?";
}

std::string match_op_str(MatchOp op) {
  switch (op) {
    case MatchOp::Eq: return "=";
    case MatchOp::Ne: return "!=";
    case MatchOp::Lt: return "<";
    case MatchOp::Le: return "<=";
    case MatchOp::Gt: return ">";
    case MatchOp::Ge: return ">=";
  }
  return "?";
}

std::string ChanRef::str() const {
  if (index) return base + "[" + index->str() + "]";
  return base;
}

namespace {
Proc node(ProcTerm t) { return std::make_shared<const ProcTerm>(std::move(t)); }
}  // namespace

Proc mk_inert() {
  static Proc inert = node(ProcTerm{});
  return inert;
}

Proc mk_output(ChanRef c, Expr payload, Proc cont) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Output;
  t.chan = std::move(c);
  t.payload = std::move(payload);
  t.cont = std::move(cont);
  return node(std::move(t));
}

Proc mk_input(ChanRef c, std::string var, Proc cont) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Input;
  t.chan = std::move(c);
  t.var = std::move(var);
  t.cont = std::move(cont);
  return node(std::move(t));
}

Proc mk_par(Proc l, Proc r) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Par;
  t.left = std::move(l);
  t.right = std::move(r);
  return node(std::move(t));
}

Proc mk_restrict(std::string name, Proc body) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Restrict;
  t.name = std::move(name);
  t.cont = std::move(body);
  return node(std::move(t));
}

Proc mk_choice(Proc l, Proc r) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Choice;
  t.left = std::move(l);
  t.right = std::move(r);
  return node(std::move(t));
}

Proc mk_match(Expr l, MatchOp op, Expr r, Proc body) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Match;
  t.m_lhs = std::move(l);
  t.m_op = op;
  t.m_rhs = std::move(r);
  t.cont = std::move(body);
  return node(std::move(t));
}

Proc mk_repl(Proc body) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Repl;
  t.cont = std::move(body);
  return node(std::move(t));
}

Proc mk_call(std::string name, std::vector<Expr> args) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Call;
  t.name = std::move(name);
  t.args = std::move(args);
  return node(std::move(t));
}

Proc mk_located(std::string loc, Proc body) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Located;
  t.name = std::move(loc);
  t.cont = std::move(body);
  return node(std::move(t));
}

Proc mk_hole(int index) {
  ProcTerm t;
  t.kind = ProcTerm::Kind::Hole;
  t.hole_index = index;
  return node(std::move(t));
}

std::string proc_str(const Proc& p) {
  using K = ProcTerm::Kind;
  switch (p->kind) {
    case K::Inert:
      return "0";
    case K::Output: {
      std::string s = p->chan.str() + "!";
      if (!p->payload.closed() || !p->payload.lit.is_unit() ||
          p->payload.kind != Expr::Kind::Lit)
        s += "(" + p->payload.str() + ")";
      return s + "." + proc_str(p->cont);
    }
    case K::Input:
      return p->chan.str() + "?" + (p->var.empty() ? "_" : p->var) + "." +
             proc_str(p->cont);
    case K::Par:
      return "(" + proc_str(p->left) + " | " + proc_str(p->right) + ")";
    case K::Restrict:
      return "new " + p->name + ".(" + proc_str(p->cont) + ")";
    case K::Choice:
      return "(" + proc_str(p->left) + " + " + proc_str(p->right) + ")";
    case K::Match:
      return "[" + p->m_lhs.str() + " " + match_op_str(p->m_op) + " " +
             p->m_rhs.str() + "] " + proc_str(p->cont);
    case K::Repl:
      return "!(" + proc_str(p->cont) + ")";
    case K::Call: {
      std::string s = p->name + "(";
      for (size_t i = 0; i < p->args.size(); ++i) {
        if (i) s += ",";
        s += p->args[i].str();
      }
      return s + ")";
    }
    case K::Located:
      return p->name + "[ " + proc_str(p->cont) + " ]";
    case K::Hole:
      return "[]_" + std::to_string(p->hole_index);
  }
  return "?";
}

namespace {
void free_channels_rec(const Proc& p, std::set<std::string>& bound,
                       std::set<std::string>& out) {
  using K = ProcTerm::Kind;
  switch (p->kind) {
    case K::Inert:
    case K::Hole:
      return;
    case K::Output:
    case K::Input:
      if (!bound.count(p->chan.base)) out.insert(p->chan.base);
      free_channels_rec(p->cont, bound, out);
      return;
    case K::Par:
    case K::Choice:
      free_channels_rec(p->left, bound, out);
      free_channels_rec(p->right, bound, out);
      return;
    case K::Restrict: {
      bool fresh = bound.insert(p->name).second;
      free_channels_rec(p->cont, bound, out);
      if (fresh) bound.erase(p->name);
      return;
    }
    case K::Match:
    case K::Repl:
    case K::Located:
      free_channels_rec(p->cont, bound, out);
      return;
    case K::Call:
      return;  // call bodies resolved by the semantics layer
  }
}
}  // namespace

std::set<std::string> free_channels(const Proc& p) {
  std::set<std::string> bound, out;
  free_channels_rec(p, bound, out);
  return out;
}

void collect_holes(const Proc& p, std::set<int>& out) {
  using K = ProcTerm::Kind;
  switch (p->kind) {
    case K::Hole:
      out.insert(p->hole_index);
      return;
    case K::Par:
    case K::Choice:
      collect_holes(p->left, out);
      collect_holes(p->right, out);
      return;
    case K::Output:
    case K::Input:
    case K::Restrict:
    case K::Match:
    case K::Repl:
    case K::Located:
      collect_holes(p->cont, out);
      return;
    default:
      return;
  }
}

namespace {
Expr subst_expr(const Expr& e, const std::string& var, const Value& v) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return e;
    case Expr::Kind::Var:
      return e.var == var ? Expr::of_value(v) : e;
    default: {
      Expr out = e;
      for (auto& k : out.kids) k = subst_expr(k, var, v);
      return out;
    }
  }
}
}  // namespace

Proc subst_value(const Proc& p, const std::string& var, const Value& v) {
  using K = ProcTerm::Kind;
  ProcTerm t = *p;
  switch (p->kind) {
    case K::Inert:
    case K::Hole:
      return p;
    case K::Output:
      if (t.chan.index) t.chan.index = subst_expr(*t.chan.index, var, v);
      t.payload = subst_expr(t.payload, var, v);
      t.cont = subst_value(t.cont, var, v);
      break;
    case K::Input:
      if (t.chan.index) t.chan.index = subst_expr(*t.chan.index, var, v);
      if (t.var == var) return std::make_shared<const ProcTerm>(std::move(t));
      t.cont = subst_value(t.cont, var, v);
      break;
    case K::Par:
    case K::Choice:
      t.left = subst_value(t.left, var, v);
      t.right = subst_value(t.right, var, v);
      break;
    case K::Restrict:
    case K::Repl:
    case K::Located:
      t.cont = subst_value(t.cont, var, v);
      break;
    case K::Match:
      t.m_lhs = subst_expr(t.m_lhs, var, v);
      t.m_rhs = subst_expr(t.m_rhs, var, v);
      t.cont = subst_value(t.cont, var, v);
      break;
    case K::Call:
      for (auto& a : t.args) a = subst_expr(a, var, v);
      break;
  }
  return std::make_shared<const ProcTerm>(std::move(t));
}

}  // namespace resil
