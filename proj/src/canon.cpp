#include "resil/canon.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "resil/diag.hpp"

namespace resil {

Value eval_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return e.lit;
    case Expr::Kind::Var:
      throw ModelError("OpenTerm", "unbound variable " + e.var);
    case Expr::Kind::Tuple: {
      std::vector<Value> xs;
      xs.reserve(e.kids.size());
      for (const auto& k : e.kids) xs.push_back(eval_expr(k));
      return Value::tuple(std::move(xs));
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      Value a = eval_expr(e.kids[0]);
      Value b = eval_expr(e.kids[1]);
      if (a.kind != Value::Kind::Int || b.kind != Value::Kind::Int)
        throw ModelError("DomainEscape", "arithmetic on non-integer values");
      if (e.kind == Expr::Kind::Add) return Value::of_int(a.num + b.num);
      long long r = a.num - b.num;
      if (r < 0) {
        note_monus_floor();
        r = 0;  // monus
      }
      return Value::of_int(r);
    }
  }
  throw ModelError("DomainEscape", "bad expression");
}

namespace {

bool match_holds(const Value& a, MatchOp op, const Value& b) {
  switch (op) {
    case MatchOp::Eq: return a == b;
    case MatchOp::Ne: return a != b;
    default:
      if (a.kind != Value::Kind::Int || b.kind != Value::Kind::Int)
        throw ModelError("DomainEscape", "ordered comparison on non-integers");
      switch (op) {
        case MatchOp::Lt: return a.num < b.num;
        case MatchOp::Le: return a.num <= b.num;
        case MatchOp::Gt: return a.num > b.num;
        case MatchOp::Ge: return a.num >= b.num;
        default: return false;
      }
  }
}

Expr norm_expr(const Expr& e) {
  if (e.closed()) return Expr::of_value(eval_expr(e));
  Expr out = e;
  for (auto& k : out.kids) k = norm_expr(k);
  return out;
}

void check_closed(const Proc& p, std::set<std::string>& scope, bool allow_holes) {
  using K = ProcTerm::Kind;
  auto check_expr = [&scope](const Expr& e) {
    std::function<void(const Expr&)> go = [&](const Expr& x) {
      if (x.kind == Expr::Kind::Var && !scope.count(x.var))
        throw ModelError("OpenTerm", "free variable " + x.var);
      for (const auto& k : x.kids) go(k);
    };
    go(e);
  };
  switch (p->kind) {
    case K::Inert:
      return;
    case K::Hole:
      if (!allow_holes) throw ModelError("OpenTerm", "hole in a closed term");
      return;
    case K::Output:
      if (p->chan.index) check_expr(*p->chan.index);
      check_expr(p->payload);
      check_closed(p->cont, scope, allow_holes);
      return;
    case K::Input: {
      if (p->chan.index) check_expr(*p->chan.index);
      bool added = !p->var.empty() && scope.insert(p->var).second;
      check_closed(p->cont, scope, allow_holes);
      if (added) scope.erase(p->var);
      return;
    }
    case K::Par:
    case K::Choice:
      check_closed(p->left, scope, allow_holes);
      check_closed(p->right, scope, allow_holes);
      return;
    case K::Match:
      check_expr(p->m_lhs);
      check_expr(p->m_rhs);
      check_closed(p->cont, scope, allow_holes);
      return;
    case K::Restrict:
    case K::Repl:
    case K::Located:
      check_closed(p->cont, scope, allow_holes);
      return;
    case K::Call:
      for (const auto& a : p->args) check_expr(a);
      return;
  }
}

using Renames = std::map<std::string, std::string>;

std::string subst_key(const std::string& name, const std::vector<Expr>& args,
                      const Renames& subst) {
  std::string k = name + "(";
  for (const auto& a : args) k += a.str() + ",";
  k += ")";
  for (const auto& [a, b] : subst) k += a + ">" + b + ";";
  return k;
}

class Normalizer {
 public:
  Normalizer(const Model& m, bool allow_holes)
      : m_(m), allow_holes_(allow_holes) {}

  CGroup top(const Proc& p) {
    CGroup g;
    collect(p, {}, g.nus, g.comps, 0);
    return g;
  }

 private:
  std::string fresh(const std::string& hint) {
    return "~" + std::to_string(counter_++) + hint;
  }

  std::string resolve_chan(const ChanRef& c, const Renames& rn) {
    std::string base = c.base;
    if (c.index) {
      if (!c.index->closed())
        throw ModelError("OpenTerm", "open channel index on " + c.base);
      Value v = eval_expr(*c.index);
      if (v.kind == Value::Kind::Tuple)
        throw ModelError("DomainEscape", "tuple channel index on " + c.base);
      base += v.kind == Value::Kind::Int ? std::to_string(v.num) : v.name;
      if (!m_.channels.count(base) && !rn.count(base))
        throw ModelError("UndeclaredName", "channel family member " + base);
    }
    auto it = rn.find(base);
    return it == rn.end() ? base : it->second;
  }

  // Resolved channel reference for an open index: keep symbolic, apply no
  // renames to the base (family bases are declared channel stems).
  ChanRef norm_chanref(const ChanRef& c, const Renames& rn) {
    if (c.index && !c.index->closed()) {
      ChanRef out;
      out.base = c.base;
      out.index = norm_expr(*c.index);
      return out;
    }
    ChanRef out;
    out.base = resolve_chan(c, rn);
    return out;
  }

  CGroup subgroup(const Proc& p, const Renames& rn, int depth) {
    CGroup g;
    collect(p, rn, g.nus, g.comps, depth);
    return g;
  }

  Proc instantiate(const ProcDef& d, const std::vector<Expr>& args) {
    Proc body = d.body;
    for (size_t i = 0; i < d.params.size(); ++i) {
      Value v = eval_expr(args[i]);
      if (!m_.value_in_domain(v))
        throw ModelError("DomainEscape",
                         "argument " + v.str() + " of " + d.name +
                             " outside the declared domain");
      body = subst_value(body, d.params[i], v);
    }
    return body;
  }

  void collect(const Proc& p, Renames rn, std::vector<std::string>& nus,
               std::vector<CN>& comps, int depth) {
    using K = ProcTerm::Kind;
    if (depth > 4000)
      throw ModelError("UnguardedRecursion", "normalization depth exceeded");
    switch (p->kind) {
      case K::Inert:
        return;
      case K::Par:
        collect(p->left, rn, nus, comps, depth);
        collect(p->right, rn, nus, comps, depth);
        return;
      case K::Restrict: {
        std::string f = fresh(p->name);
        nus.push_back(f);
        rn[p->name] = f;
        collect(p->cont, rn, nus, comps, depth);
        return;
      }
      case K::Located: {
        std::vector<CN> inner;
        collect(p->cont, rn, nus, inner, depth);
        if (inner.empty()) return;
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::Located;
        n->loc = p->name;
        n->cont = CGroup{{}, std::move(inner)};
        comps.push_back(std::move(n));
        return;
      }
      case K::Repl: {
        CGroup body = subgroup(p->cont, rn, depth + 1);
        if (body.comps.empty()) return;
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::Repl;
        n->cont = std::move(body);
        comps.push_back(std::move(n));
        return;
      }
      case K::Output: {
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::Out;
        ChanRef cr = norm_chanref(p->chan, rn);
        n->chan = cr.base;
        n->chan_index = cr.index;
        n->payload = norm_expr(p->payload);
        n->cont = subgroup(p->cont, rn, depth + 1);
        comps.push_back(std::move(n));
        return;
      }
      case K::Input: {
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::In;
        ChanRef cr = norm_chanref(p->chan, rn);
        n->chan = cr.base;
        n->chan_index = cr.index;
        n->var = p->var;
        n->cont = subgroup(p->cont, rn, depth + 1);
        comps.push_back(std::move(n));
        return;
      }
      case K::Match: {
        Expr l = norm_expr(p->m_lhs), r = norm_expr(p->m_rhs);
        if (l.closed() && r.closed()) {
          if (match_holds(l.lit, p->m_op, r.lit))
            collect(p->cont, rn, nus, comps, depth);
          return;
        }
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::Match;
        n->m1 = std::move(l);
        n->m2 = std::move(r);
        n->mop = p->m_op;
        n->cont = subgroup(p->cont, rn, depth + 1);
        comps.push_back(std::move(n));
        return;
      }
      case K::Choice: {
        std::vector<CN> prefixes;
        std::vector<CGroup> complexes;
        std::set<std::string> memo;
        collect_branch(p, rn, prefixes, complexes, memo, depth);
        if (prefixes.empty() && complexes.empty()) return;
        if (prefixes.size() == 1 && complexes.empty()) {
          comps.push_back(prefixes[0]);
          return;
        }
        if (prefixes.empty() && complexes.size() == 1) {
          for (auto& nm : complexes[0].nus) nus.push_back(nm);
          for (auto& c : complexes[0].comps) comps.push_back(c);
          return;
        }
        if (!complexes.empty())
          throw ModelError("BadParams",
                           "unguarded branch in a committed choice");
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::Choice;
        n->branches = std::move(prefixes);
        comps.push_back(std::move(n));
        return;
      }
      case K::Call: {
        std::vector<Expr> args;
        args.reserve(p->args.size());
        bool closed = true;
        for (const auto& a : p->args) {
          args.push_back(norm_expr(a));
          closed = closed && args.back().closed();
        }
        // compose the stored closure with the current renames
        Renames eff = rn;
        for (const auto& [a, b] : p->chan_subst) {
          auto it = rn.find(b);
          eff[a] = it == rn.end() ? b : it->second;
        }
        if (!closed) {
          auto n = std::make_shared<CNode>();
          n->k = CNode::K::Call;
          n->call_name = p->name;
          n->call_args = std::move(args);
          n->chan_subst = std::move(eff);
          comps.push_back(std::move(n));
          return;
        }
        std::string key = subst_key(p->name, args, eff);
        if (unfold_stack_.count(key))
          throw ModelError("UnguardedRecursion",
                           "cyclic unfolding of " + p->name);
        unfold_stack_.insert(key);
        Proc body = instantiate(m_.def(p->name), args);
        collect(body, eff, nus, comps, depth + 1);
        unfold_stack_.erase(key);
        return;
      }
      case K::Hole: {
        if (!allow_holes_)
          throw ModelError("OpenTerm", "hole outside a context term");
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::Hole;
        n->hole = p->hole_index;
        comps.push_back(std::move(n));
        return;
      }
    }
  }

  // Choice-branch collection with memoized unfolding of recursive call
  // branches (revisited calls close the cycle and are dropped).
  void collect_branch(const Proc& p, Renames rn, std::vector<CN>& prefixes,
                      std::vector<CGroup>& complexes,
                      std::set<std::string>& memo, int depth) {
    using K = ProcTerm::Kind;
    if (depth > 4000)
      throw ModelError("UnguardedRecursion", "choice unfolding too deep");
    switch (p->kind) {
      case K::Inert:
        return;
      case K::Choice:
        collect_branch(p->left, rn, prefixes, complexes, memo, depth);
        collect_branch(p->right, rn, prefixes, complexes, memo, depth);
        return;
      case K::Match: {
        Expr l = norm_expr(p->m_lhs), r = norm_expr(p->m_rhs);
        if (l.closed() && r.closed()) {
          if (match_holds(l.lit, p->m_op, r.lit))
            collect_branch(p->cont, rn, prefixes, complexes, memo, depth);
          return;
        }
        auto n = std::make_shared<CNode>();
        n->k = CNode::K::Match;
        n->m1 = std::move(l);
        n->m2 = std::move(r);
        n->mop = p->m_op;
        n->cont = subgroup(p->cont, rn, depth + 1);
        prefixes.push_back(std::move(n));
        return;
      }
      case K::Call: {
        std::vector<Expr> args;
        bool closed = true;
        for (const auto& a : p->args) {
          args.push_back(norm_expr(a));
          closed = closed && args.back().closed();
        }
        Renames eff = rn;
        for (const auto& [a, b] : p->chan_subst) {
          auto it = rn.find(b);
          eff[a] = it == rn.end() ? b : it->second;
        }
        if (!closed) {
          auto n = std::make_shared<CNode>();
          n->k = CNode::K::Call;
          n->call_name = p->name;
          n->call_args = std::move(args);
          n->chan_subst = std::move(eff);
          prefixes.push_back(std::move(n));
          return;
        }
        std::string key = subst_key(p->name, args, eff);
        if (memo.count(key)) return;  // cycle closes; contributes nothing new
        memo.insert(key);
        Proc body = instantiate(m_.def(p->name), args);
        collect_branch(body, eff, prefixes, complexes, memo, depth + 1);
        return;
      }
      case K::Output:
      case K::Input: {
        std::vector<CN> tmp;
        std::vector<std::string> tmp_nus;
        collect(p, rn, tmp_nus, tmp, depth);
        assert(tmp_nus.empty() && tmp.size() == 1);
        prefixes.push_back(tmp[0]);
        return;
      }
      default: {
        // Par / Repl / Restrict / Located / Hole: admissible only as the sole
        // surviving alternative of the choice.
        complexes.push_back(subgroup(p, rn, depth + 1));
        return;
      }
    }
  }

  const Model& m_;
  bool allow_holes_;
  long long counter_ = 0;
  std::set<std::string> unfold_stack_;
};

// ---- canonical rendering ----

void cn_free_chans(const CN& c, std::set<std::string>& out);

void group_free_chans(const CGroup& g, std::set<std::string>& out) {
  std::set<std::string> inner;
  for (const auto& c : g.comps) cn_free_chans(c, inner);
  for (const auto& n : g.nus) inner.erase(n);
  out.insert(inner.begin(), inner.end());
}

void cn_free_chans(const CN& c, std::set<std::string>& out) {
  switch (c->k) {
    case CNode::K::Out:
    case CNode::K::In:
      out.insert(c->chan);
      group_free_chans(c->cont, out);
      return;
    case CNode::K::Choice:
      for (const auto& b : c->branches) cn_free_chans(b, out);
      return;
    case CNode::K::Match:
    case CNode::K::Repl:
    case CNode::K::Located:
      group_free_chans(c->cont, out);
      return;
    case CNode::K::Call:
      for (const auto& [a, b] : c->chan_subst) out.insert(b);
      return;
    case CNode::K::Hole:
      return;
  }
}

struct Env {
  std::map<std::string, std::string> chan;
  std::map<std::string, std::string> var;
  int next_nu = 0;
  int vdepth = 0;
};

Expr rename_expr(const Expr& e, const Env& env) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return e;
    case Expr::Kind::Var: {
      auto it = env.var.find(e.var);
      return it == env.var.end() ? e : Expr::of_var(it->second);
    }
    default: {
      Expr out = e;
      for (auto& k : out.kids) k = rename_expr(k, env);
      return out;
    }
  }
}

std::string render_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return e.lit.str();
    case Expr::Kind::Var:
      return e.var;
    case Expr::Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) s += ",";
        s += render_expr(e.kids[i]);
      }
      return s + ")";
    }
    case Expr::Kind::Add:
      return "(" + render_expr(e.kids[0]) + "+" + render_expr(e.kids[1]) + ")";
    case Expr::Kind::Sub:
      return "(" + render_expr(e.kids[0]) + "-" + render_expr(e.kids[1]) + ")";
  }
  return "?";
}

struct GroupResult {
  std::string key;
  CGroup canon;
};

struct CompResult {
  std::string key;
  CN canon;
};

CompResult canonize_comp(const CN& c, Env env);

GroupResult canonize_group(const CGroup& g, Env env) {
  // drop restrictions that bind nothing
  std::set<std::string> used;
  for (const auto& c : g.comps) cn_free_chans(c, used);
  std::vector<std::string> nus;
  for (const auto& n : g.nus)
    if (used.count(n)) nus.push_back(n);

  auto render_with = [&](const std::vector<std::string>& order) -> GroupResult {
    Env env2 = env;
    std::vector<std::string> display;
    for (size_t i = 0; i < order.size(); ++i) {
      std::string d = "#" + std::to_string(env.next_nu + (int)i);
      env2.chan[order[i]] = d;
      display.push_back(d);
    }
    env2.next_nu = env.next_nu + (int)order.size();
    std::vector<CompResult> rs;
    rs.reserve(g.comps.size());
    for (const auto& c : g.comps) rs.push_back(canonize_comp(c, env2));
    std::sort(rs.begin(), rs.end(),
              [](const CompResult& a, const CompResult& b) {
                return a.key < b.key;
              });
    std::string key;
    if (!display.empty()) {
      key = "new";
      for (const auto& d : display) key += " " + d;
      key += ".";
    }
    if (rs.empty()) {
      key += "0";
    } else if (rs.size() == 1 && display.empty()) {
      key += rs[0].key;
    } else {
      key += "(";
      for (size_t i = 0; i < rs.size(); ++i) {
        if (i) key += " | ";
        key += rs[i].key;
      }
      key += ")";
    }
    GroupResult out;
    out.key = std::move(key);
    out.canon.nus = std::move(display);
    for (auto& r : rs) out.canon.comps.push_back(std::move(r.canon));
    return out;
  };

  if (nus.size() <= 1) return render_with(nus);
  if (nus.size() <= 6) {
    std::vector<std::string> order = nus;
    std::sort(order.begin(), order.end());
    std::optional<GroupResult> best;
    do {
      GroupResult r = render_with(order);
      if (!best || r.key < best->key) best = std::move(r);
    } while (std::next_permutation(order.begin(), order.end()));
    return *best;
  }
  // deterministic fallback for very wide restriction groups
  std::vector<std::string> order = nus;
  std::sort(order.begin(), order.end());
  return render_with(order);
}

CompResult canonize_comp(const CN& c, Env env) {
  auto out = std::make_shared<CNode>();
  out->k = c->k;
  CompResult res;
  switch (c->k) {
    case CNode::K::Out: {
      auto it = env.chan.find(c->chan);
      out->chan = it == env.chan.end() ? c->chan : it->second;
      std::string cdisp = out->chan;
      if (c->chan_index) {
        out->chan_index = rename_expr(*c->chan_index, env);
        cdisp += "[" + render_expr(*out->chan_index) + "]";
      }
      Expr pl = rename_expr(c->payload, env);
      out->payload = pl;
      GroupResult g = canonize_group(c->cont, env);
      out->cont = std::move(g.canon);
      res.key = cdisp + "!" + render_expr(pl) + "." + g.key;
      break;
    }
    case CNode::K::In: {
      auto it = env.chan.find(c->chan);
      out->chan = it == env.chan.end() ? c->chan : it->second;
      std::string cdisp = out->chan;
      if (c->chan_index) {
        out->chan_index = rename_expr(*c->chan_index, env);
        cdisp += "[" + render_expr(*out->chan_index) + "]";
      }
      Env env2 = env;
      std::string vd = "_";
      if (!c->var.empty()) {
        vd = "$" + std::to_string(env.vdepth);
        env2.var[c->var] = vd;
        env2.vdepth = env.vdepth + 1;
      }
      out->var = c->var.empty() ? "" : vd;
      GroupResult g = canonize_group(c->cont, env2);
      out->cont = std::move(g.canon);
      res.key = cdisp + "?" + vd + "." + g.key;
      break;
    }
    case CNode::K::Choice: {
      std::vector<CompResult> rs;
      for (const auto& b : c->branches) rs.push_back(canonize_comp(b, env));
      std::sort(rs.begin(), rs.end(),
                [](const CompResult& a, const CompResult& b) {
                  return a.key < b.key;
                });
      rs.erase(std::unique(rs.begin(), rs.end(),
                           [](const CompResult& a, const CompResult& b) {
                             return a.key == b.key;
                           }),
               rs.end());
      if (rs.size() == 1) return rs[0];
      res.key = "(";
      for (size_t i = 0; i < rs.size(); ++i) {
        if (i) res.key += " + ";
        res.key += rs[i].key;
        out->branches.push_back(rs[i].canon);
      }
      res.key += ")";
      break;
    }
    case CNode::K::Match: {
      Expr l = rename_expr(c->m1, env), r = rename_expr(c->m2, env);
      out->m1 = l;
      out->m2 = r;
      out->mop = c->mop;
      GroupResult g = canonize_group(c->cont, env);
      out->cont = std::move(g.canon);
      res.key = "[" + render_expr(l) + match_op_str(c->mop) + render_expr(r) +
                "](" + g.key + ")";
      break;
    }
    case CNode::K::Repl: {
      GroupResult g = canonize_group(c->cont, env);
      out->cont = std::move(g.canon);
      res.key = "!(" + g.key + ")";
      break;
    }
    case CNode::K::Located: {
      out->loc = c->loc;
      GroupResult g = canonize_group(c->cont, env);
      out->cont = std::move(g.canon);
      res.key = c->loc + "[" + g.key + "]";
      break;
    }
    case CNode::K::Call: {
      out->call_name = c->call_name;
      res.key = c->call_name;
      std::string subst;
      for (const auto& [a, b] : c->chan_subst) {
        auto it = env.chan.find(b);
        std::string tgt = it == env.chan.end() ? b : it->second;
        if (tgt == a) continue;
        out->chan_subst[a] = tgt;
        subst += (subst.empty() ? "" : ",") + a + ":=" + tgt;
      }
      if (!subst.empty()) res.key += "{" + subst + "}";
      res.key += "(";
      for (size_t i = 0; i < c->call_args.size(); ++i) {
        Expr a = rename_expr(c->call_args[i], env);
        out->call_args.push_back(a);
        if (i) res.key += ",";
        res.key += render_expr(a);
      }
      res.key += ")";
      break;
    }
    case CNode::K::Hole: {
      out->hole = c->hole;
      res.key = "[]_" + std::to_string(c->hole);
      break;
    }
  }
  res.canon = std::move(out);
  return res;
}

}  // namespace

Proc denormalize_comp(const CN& c) {
  switch (c->k) {
    case CNode::K::Out: {
      ChanRef cr;
      cr.base = c->chan;
      cr.index = c->chan_index;
      return mk_output(cr, c->payload, denormalize(c->cont));
    }
    case CNode::K::In: {
      ChanRef cr;
      cr.base = c->chan;
      cr.index = c->chan_index;
      return mk_input(cr, c->var, denormalize(c->cont));
    }
    case CNode::K::Choice: {
      Proc p;
      for (const auto& b : c->branches) {
        Proc q = denormalize_comp(b);
        p = p ? mk_choice(p, q) : q;
      }
      return p ? p : mk_inert();
    }
    case CNode::K::Match:
      return mk_match(c->m1, c->mop, c->m2, denormalize(c->cont));
    case CNode::K::Repl:
      return mk_repl(denormalize(c->cont));
    case CNode::K::Located:
      return mk_located(c->loc, denormalize(c->cont));
    case CNode::K::Call: {
      ProcTerm t;
      t.kind = ProcTerm::Kind::Call;
      t.name = c->call_name;
      t.args = c->call_args;
      t.chan_subst = c->chan_subst;
      return std::make_shared<const ProcTerm>(std::move(t));
    }
    case CNode::K::Hole:
      return mk_hole(c->hole);
  }
  return mk_inert();
}

Proc denormalize(const CGroup& g) {
  Proc body;
  for (const auto& c : g.comps) {
    Proc q = denormalize_comp(c);
    body = body ? mk_par(body, q) : q;
  }
  if (!body) body = mk_inert();
  for (auto it = g.nus.rbegin(); it != g.nus.rend(); ++it)
    body = mk_restrict(*it, body);
  return body;
}

namespace {
CanonState canonicalize_impl(const Model& m, const Proc& p, bool allow_holes) {
  std::set<std::string> scope;
  check_closed(p, scope, allow_holes);
  Normalizer n(m, allow_holes);
  CGroup g = n.top(p);
  GroupResult r = canonize_group(g, Env{});
  CanonState st;
  st.group = std::make_shared<const CGroup>(std::move(r.canon));
  st.ast = denormalize(*st.group);
  st.key = std::move(r.key);
  return st;
}
}  // namespace

CanonState canonicalize(const Model& m, const Proc& p) {
  return canonicalize_impl(m, p, false);
}

CanonState canonicalize_context(const Model& m, const Proc& p) {
  return canonicalize_impl(m, p, true);
}

namespace {
Proc plug_walk(const Proc& p, const std::vector<Proc>& by_index,
               bool under_binder, bool live) {
  using K = ProcTerm::Kind;
  switch (p->kind) {
    case K::Hole: {
      if (under_binder)
        throw ModelError("CaptureViolation",
                         "hole under an input binder");
      if (!live)
        throw ModelError("BadParams",
                         "hole under an unsatisfiable match");
      int i = p->hole_index;
      if (i < 1 || i > (int)by_index.size())
        throw ModelError("HoleCountMismatch",
                         "no filler for hole " + std::to_string(i));
      return by_index[i - 1];
    }
    case K::Inert:
      return p;
    case K::Par:
      return mk_par(plug_walk(p->left, by_index, under_binder, live),
                    plug_walk(p->right, by_index, under_binder, live));
    case K::Choice:
      return mk_choice(plug_walk(p->left, by_index, under_binder, live),
                       plug_walk(p->right, by_index, under_binder, live));
    case K::Output: {
      ProcTerm t = *p;
      t.cont = plug_walk(p->cont, by_index, under_binder, live);
      return std::make_shared<const ProcTerm>(std::move(t));
    }
    case K::Input: {
      ProcTerm t = *p;
      t.cont = plug_walk(p->cont, by_index, true, live);
      return std::make_shared<const ProcTerm>(std::move(t));
    }
    case K::Match: {
      bool live2 = live;
      if (p->m_lhs.closed() && p->m_rhs.closed())
        live2 = live && match_holds(eval_expr(p->m_lhs), p->m_op,
                                    eval_expr(p->m_rhs));
      ProcTerm t = *p;
      t.cont = plug_walk(p->cont, by_index, under_binder, live2);
      return std::make_shared<const ProcTerm>(std::move(t));
    }
    case K::Restrict:
    case K::Repl:
    case K::Located: {
      ProcTerm t = *p;
      t.cont = plug_walk(p->cont, by_index, under_binder, live);
      return std::make_shared<const ProcTerm>(std::move(t));
    }
    case K::Call:
      return p;
  }
  return p;
}
}  // namespace

Proc plug(const Model& m, const Proc& context, const std::vector<Proc>& fillers) {
  std::set<int> holes;
  collect_holes(context, holes);
  if (holes.empty()) throw ModelError("BadParams", "context has no holes");
  std::vector<Proc> by_index;
  if (fillers.size() == 1) {
    by_index.assign(holes.size(), fillers[0]);
  } else if (fillers.size() == holes.size()) {
    by_index = fillers;
  } else {
    throw ModelError("HoleCountMismatch",
                     std::to_string(fillers.size()) + " fillers for " +
                         std::to_string(holes.size()) + " holes");
  }
  for (const auto& f : by_index) {
    std::set<std::string> scope;
    check_closed(f, scope, false);
  }
  return plug_walk(context, by_index, false, true);
}

Proc plug_context(const Model& m, const Proc& outer, const Proc& inner) {
  std::set<int> outer_holes;
  collect_holes(outer, outer_holes);
  if (outer_holes.size() != 1)
    throw ModelError("BadParams",
                     "context composition requires a single-hole outer context");
  std::vector<Proc> by_index{inner};
  return plug_walk(outer, by_index, false, true);
}

}  // namespace resil
