#ifndef RESIL_TERM_HPP_
#define RESIL_TERM_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resil/value.hpp"

namespace resil {

// Expressions: literals, variables, tuples, integer + and - (monus), used in
// prefixes, call arguments and match guards.
struct Expr {
  enum class Kind { Lit, Var, Tuple, Add, Sub };
  Kind kind = Kind::Lit;
  Value lit;
  std::string var;
  std::vector<Expr> kids;  // tuple elements or the two operands

  static Expr of_value(Value v) {
    Expr e;
    e.kind = Kind::Lit;
    e.lit = std::move(v);
    return e;
  }
  static Expr of_var(std::string x) {
    Expr e;
    e.kind = Kind::Var;
    e.var = std::move(x);
    return e;
  }
  static Expr binop(Kind k, Expr a, Expr b) {
    Expr e;
    e.kind = k;
    e.kids = {std::move(a), std::move(b)};
    return e;
  }
  static Expr tuple(std::vector<Expr> xs) {
    Expr e;
    e.kind = Kind::Tuple;
    e.kids = std::move(xs);
    return e;
  }

  bool closed() const;
  std::string str() const;
};

// Comparison operator of a match guard [e1 op e2] P.
enum class MatchOp { Eq, Ne, Lt, Le, Gt, Ge };
std::string match_op_str(MatchOp op);

// Channel reference: a declared channel name, optionally indexed by an
// expression (the family d[i] resolves to the declared channel d<i> once the
// index is closed).
struct ChanRef {
  std::string base;
  std::optional<Expr> index;
  std::string str() const;
};

struct ProcTerm;
using Proc = std::shared_ptr<const ProcTerm>;

// Process syntax. One tagged node type; the active fields depend on `kind`.
//   Inert                      -
//   Output   chan, payload, cont
//   Input    chan, var (may be empty for unit receive), cont
//   Par      left, right
//   Restrict name, cont
//   Choice   left, right
//   Match    m_lhs, m_op, m_rhs, cont
//   Repl     cont
//   Call     name, args
//   Located  name (location), cont
//   Hole     hole_index (context terms only)
struct ProcTerm {
  enum class Kind {
    Inert,
    Output,
    Input,
    Par,
    Restrict,
    Choice,
    Match,
    Repl,
    Call,
    Located,
    Hole
  };
  Kind kind = Kind::Inert;

  ChanRef chan;
  Expr payload;  // Output
  std::string var;
  Proc left, right;  // Par/Choice children
  Proc cont;         // continuation / body
  std::string name;  // Restrict channel, Call target, Located location
  std::vector<Expr> args;
  std::map<std::string, std::string> chan_subst;  // Call: channel closure
  Expr m_lhs, m_rhs;
  MatchOp m_op = MatchOp::Eq;
  int hole_index = 0;
};

Proc mk_inert();
Proc mk_output(ChanRef c, Expr payload, Proc cont);
Proc mk_input(ChanRef c, std::string var, Proc cont);
Proc mk_par(Proc l, Proc r);
Proc mk_restrict(std::string name, Proc body);
Proc mk_choice(Proc l, Proc r);
Proc mk_match(Expr l, MatchOp op, Expr r, Proc body);
Proc mk_repl(Proc body);
Proc mk_call(std::string name, std::vector<Expr> args);
Proc mk_located(std::string loc, Proc body);
Proc mk_hole(int index);

// Raw syntactic printer (debugging and diagnostics; canonical printing lives
// in canon.cpp).
std::string proc_str(const Proc& p);

// Free channel names of a term (declared names only; bound restriction names
// excluded).
std::set<std::string> free_channels(const Proc& p);

// Collects hole indices (for context terms).
void collect_holes(const Proc& p, std::set<int>& out);

// Substitutes a value for a variable, respecting shadowing by Input binders.
// Values contain no names, so capture is impossible.
Proc subst_value(const Proc& p, const std::string& var, const Value& v);

struct ProcDef {
  std::string name;
  std::vector<std::string> params;
  Proc body;
};

}  // namespace resil

#endif  // RESIL_TERM_HPP_
