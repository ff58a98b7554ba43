#include <random>

#include "doctest.h"
#include "resil/canon.hpp"
#include "resil/diag.hpp"
#include "resil/parser.hpp"
#include "resil/semantics.hpp"

using namespace resil;

namespace {

Model tiny_model() {
  return parse_model(
      "domain D = {0, 1, v, w}\n"
      "channel a b d d1\n"
      "location l1 l2\n");
}

Proc out(const std::string& c, const Value& v, Proc k) {
  ChanRef cr;
  cr.base = c;
  return mk_output(cr, Expr::of_value(v), std::move(k));
}

Proc in(const std::string& c, const std::string& x, Proc k) {
  ChanRef cr;
  cr.base = c;
  return mk_input(cr, x, std::move(k));
}

}  // namespace

TEST_CASE("parse: single prefix definition") {
  Model m = parse_model(
      "domain D = {v}\n"
      "channel a\n"
      "def P = a!v . 0\n");
  const Proc& b = m.def("P").body;
  REQUIRE(b->kind == ProcTerm::Kind::Output);
  CHECK(b->chan.base == "a");
  CHECK(b->payload.kind == Expr::Kind::Lit);
  CHECK(b->payload.lit == Value::of_name("v"));
  CHECK(b->cont->kind == ProcTerm::Kind::Inert);
}

TEST_CASE("parse: malformed input is a syntax error") {
  CHECK_THROWS_AS(parse_model("domain D = {v}\ndef P = | 0\n"), ParseError);
}

TEST_CASE("parse: Sys1 encoding") {
  Model m = parse_model(
      "domain D = {0, 1, v}\n"
      "channel a d1\n"
      "def OTP = a!v . 0\n"
      "def BC(i) = a?x . d[i]!x . 0\n"
      "system Sys1 = new a . (BC(1) | OTP())\n");
  Proc s = m.system("Sys1");
  REQUIRE(s->kind == ProcTerm::Kind::Restrict);
  CHECK(s->name == "a");
  REQUIRE(s->cont->kind == ProcTerm::Kind::Par);
  const Proc& l = s->cont->left;
  const Proc& r = s->cont->right;
  REQUIRE(l->kind == ProcTerm::Kind::Call);
  CHECK(l->name == "BC");
  REQUIRE(l->args.size() == 1);
  CHECK(l->args[0].lit == Value::of_int(1));
  REQUIRE(r->kind == ProcTerm::Kind::Call);
  CHECK(r->name == "OTP");
  CHECK(r->args.empty());
}

TEST_CASE("parse: validation errors") {
  CHECK_THROWS_WITH_AS(
      parse_model("domain D = {v}\nchannel a\ndef P(x) = a!x.0\n"
                  "system S = P()\n"),
      doctest::Contains("ArityMismatch"), ModelError);
  CHECK_THROWS_WITH_AS(
      parse_model("domain D = {v}\nsystem S = q!v.0\n"),
      doctest::Contains("UndeclaredName"), ModelError);
  CHECK_THROWS_WITH_AS(parse_model("domain D = {v}\ndef X = X()\n"),
                       doctest::Contains("UnguardedRecursion"), ModelError);
  CHECK_THROWS_WITH_AS(
      parse_model("domain D = {v}\ndomain E = {w}\n"),
      doctest::Contains("BadParams"), ModelError);
}

TEST_CASE("parse: guarded recursion through choice branches is accepted") {
  Model m = parse_model(
      "domain D = {v, w}\n"
      "channel b c\n"
      "def Sr0 = b?_ . c!v . Sr0() + Sr1()\n"
      "def Sr1 = b?_ . c!w . Sr1() + Sr0()\n");
  CHECK(m.defs.count("Sr0") == 1);
}

TEST_CASE("canonicalize: unit and commutativity laws") {
  Model m = tiny_model();
  Proc p = out("a", Value::of_name("v"), mk_inert());
  CanonState direct = canonicalize(m, p);
  CanonState padded = canonicalize(m, mk_par(mk_inert(), p));
  CHECK(direct.key == padded.key);

  Proc q = in("a", "x", out("d", Value::of_name("w"), mk_inert()));
  CHECK(canonicalize(m, mk_par(p, q)).key == canonicalize(m, mk_par(q, p)).key);
}

TEST_CASE("canonicalize: nested same-name restrictions get distinct names") {
  Model m = tiny_model();
  // new a.( a?x.0 | new a.( a!v.0 ) ): the two `a`s are different channels
  Proc inner = mk_restrict("a", out("a", Value::of_name("v"), mk_inert()));
  Proc p = mk_restrict("a", mk_par(in("a", "x", mk_inert()), inner));
  CanonState s = canonicalize(m, p);
  CHECK(s.key.find("#0") != std::string::npos);
  CHECK(s.key.find("#1") != std::string::npos);
  // inner send cannot meet the outer receive
  CHECK(successors(m, s, all_up(m)).empty());
}

TEST_CASE("canonicalize: idempotent") {
  Model m = tiny_model();
  Proc inner = mk_restrict("a", out("a", Value::of_name("v"), mk_inert()));
  Proc p = mk_restrict("a", mk_par(in("a", "x", mk_inert()), inner));
  CanonState s1 = canonicalize(m, p);
  CanonState s2 = canonicalize(m, s1.ast);
  CHECK(s1.key == s2.key);
}

TEST_CASE("canonicalize: open terms are rejected") {
  Model m = tiny_model();
  Proc p = out("a", Value::of_name("v"), mk_inert());
  Proc open = mk_output(ChanRef{"a", {}}, Expr::of_var("x"), mk_inert());
  CHECK_NOTHROW(canonicalize(m, p));
  CHECK_THROWS_WITH_AS(canonicalize(m, open), doctest::Contains("OpenTerm"),
                       ModelError);
}

// ---- congruence-closure oracle ----

namespace {

// Renames free occurrences of channel `from` to `to` (test-only helper for
// alpha rewrites).
Proc rename_chan(const Proc& p, const std::string& from, const std::string& to) {
  using K = ProcTerm::Kind;
  ProcTerm t = *p;
  switch (p->kind) {
    case K::Inert:
    case K::Hole:
      return p;
    case K::Output:
    case K::Input:
      if (t.chan.base == from) t.chan.base = to;
      t.cont = rename_chan(p->cont, from, to);
      return std::make_shared<const ProcTerm>(std::move(t));
    case K::Par:
    case K::Choice:
      t.left = rename_chan(p->left, from, to);
      t.right = rename_chan(p->right, from, to);
      return std::make_shared<const ProcTerm>(std::move(t));
    case K::Restrict:
      if (p->name == from) return p;  // shadowed
      t.cont = rename_chan(p->cont, from, to);
      return std::make_shared<const ProcTerm>(std::move(t));
    case K::Match:
    case K::Repl:
    case K::Located:
      t.cont = rename_chan(p->cont, from, to);
      return std::make_shared<const ProcTerm>(std::move(t));
    case K::Call:
      return p;
  }
  return p;
}

// All single-axiom rewrites of p (at every position).
void congruence_variants(const Proc& p, std::vector<Proc>& out) {
  using K = ProcTerm::Kind;
  // rewrites at the root
  if (p->kind == K::Par) {
    out.push_back(mk_par(p->right, p->left));  // commutativity
    if (p->left->kind == K::Par)               // associativity
      out.push_back(
          mk_par(p->left->left, mk_par(p->left->right, p->right)));
    if (p->right->kind == K::Par)
      out.push_back(
          mk_par(mk_par(p->left, p->right->left), p->right->right));
    if (p->right->kind == K::Inert) out.push_back(p->left);  // unit
    if (p->left->kind == K::Inert) out.push_back(p->right);
    // scope extrusion: (new n.P) | Q == new n.(P | Q) when n not free in Q
    if (p->left->kind == K::Restrict &&
        !free_channels(p->right).count(p->left->name))
      out.push_back(
          mk_restrict(p->left->name, mk_par(p->left->cont, p->right)));
  }
  out.push_back(mk_par(p, mk_inert()));  // unit, the other way
  if (p->kind == K::Restrict) {
    // alpha
    out.push_back(mk_restrict("zfresh", rename_chan(p->cont, p->name, "zfresh")));
    if (p->cont->kind == K::Par &&
        !free_channels(p->cont->right).count(p->name))
      out.push_back(mk_par(mk_restrict(p->name, p->cont->left),
                           p->cont->right));  // extrusion inverse
  }
  if (p->kind == K::Match && p->m_lhs.closed() && p->m_rhs.closed()) {
    Value a = eval_expr(p->m_lhs), b = eval_expr(p->m_rhs);
    bool holds = false;
    switch (p->m_op) {
      case MatchOp::Eq: holds = a == b; break;
      case MatchOp::Ne: holds = !(a == b); break;
      default: holds = false; break;
    }
    out.push_back(holds ? p->cont : mk_inert());
  }
  // rewrites in subterms
  auto lift1 = [&](Proc sub, auto rebuild) {
    std::vector<Proc> subs;
    congruence_variants(sub, subs);
    for (const auto& s : subs) out.push_back(rebuild(s));
  };
  switch (p->kind) {
    case K::Par:
      lift1(p->left, [&](Proc s) { return mk_par(s, p->right); });
      lift1(p->right, [&](Proc s) { return mk_par(p->left, s); });
      break;
    case K::Choice:
      lift1(p->left, [&](Proc s) { return mk_choice(s, p->right); });
      lift1(p->right, [&](Proc s) { return mk_choice(p->left, s); });
      break;
    case K::Output: {
      lift1(p->cont, [&](Proc s) {
        return mk_output(p->chan, p->payload, s);
      });
      break;
    }
    case K::Input:
      lift1(p->cont, [&](Proc s) { return mk_input(p->chan, p->var, s); });
      break;
    case K::Restrict:
      lift1(p->cont, [&](Proc s) { return mk_restrict(p->name, s); });
      break;
    case K::Match:
      lift1(p->cont,
            [&](Proc s) { return mk_match(p->m_lhs, p->m_op, p->m_rhs, s); });
      break;
    case K::Repl:
      lift1(p->cont, [&](Proc s) { return mk_repl(s); });
      break;
    case K::Located:
      lift1(p->cont, [&](Proc s) { return mk_located(p->name, s); });
      break;
    default:
      break;
  }
}

// Small closed-term generator over channels {a,b}, domain {0,1}.
Proc gen_term(std::mt19937& rng, int depth, std::vector<std::string> vars) {
  auto pick = [&](int n) { return (int)(rng() % n); };
  Value vals[2] = {Value::of_int(0), Value::of_int(1)};
  const char* chans[2] = {"a", "b"};
  if (depth == 0) {
    if (pick(3) == 0) return mk_inert();
    ChanRef c;
    c.base = chans[pick(2)];
    Expr payload = (!vars.empty() && pick(2) == 0)
                       ? Expr::of_var(vars[pick((int)vars.size())])
                       : Expr::of_value(vals[pick(2)]);
    return mk_output(c, payload, mk_inert());
  }
  switch (pick(7)) {
    case 0:
      return mk_par(gen_term(rng, depth - 1, vars),
                    gen_term(rng, depth - 1, vars));
    case 1: {
      ChanRef c;
      c.base = chans[pick(2)];
      Expr payload = (!vars.empty() && pick(2) == 0)
                         ? Expr::of_var(vars[pick((int)vars.size())])
                         : Expr::of_value(vals[pick(2)]);
      return mk_output(c, payload, gen_term(rng, depth - 1, vars));
    }
    case 2: {
      ChanRef c;
      c.base = chans[pick(2)];
      std::string x = "x" + std::to_string(depth);
      auto v2 = vars;
      v2.push_back(x);
      return mk_input(c, x, gen_term(rng, depth - 1, v2));
    }
    case 3:
      return mk_restrict(chans[pick(2)], gen_term(rng, depth - 1, vars));
    case 4: {
      Expr l = Expr::of_value(vals[pick(2)]);
      Expr r = Expr::of_value(vals[pick(2)]);
      return mk_match(l, pick(2) ? MatchOp::Eq : MatchOp::Ne, r,
                      gen_term(rng, depth - 1, vars));
    }
    case 5:
      return mk_repl(gen_term(rng, depth - 1, vars));
    default:
      return gen_term(rng, 0, vars);
  }
}

}  // namespace

TEST_CASE("canonicalize: congruence axioms preserved on enumerated terms") {
  Model m = parse_model(
      "domain D = {0, 1}\n"
      "channel a b zfresh\n");
  std::mt19937 rng(12345);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Proc p = gen_term(rng, 3, {});
    CanonState base = canonicalize(m, p);
    std::vector<Proc> vars;
    congruence_variants(p, vars);
    for (const auto& q : vars) {
      CanonState alt = canonicalize(m, q);
      CAPTURE(proc_str(p));
      CAPTURE(proc_str(q));
      REQUIRE(base.key == alt.key);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("successors: single communication") {
  Model m = tiny_model();
  Proc sys = mk_par(out("a", Value::of_name("v"), mk_inert()),
                    in("a", "x",
                       mk_output(ChanRef{"d", {}}, Expr::of_var("x"),
                                 mk_inert())));
  auto succ = successors(m, canonicalize(m, sys), all_up(m));
  REQUIRE(succ.size() == 1);
  CHECK(succ.begin()->key ==
        canonicalize(m, out("d", Value::of_name("v"), mk_inert())).key);
}

TEST_CASE("successors: inert has none") {
  Model m = tiny_model();
  CHECK(successors(m, canonicalize(m, mk_inert()), all_up(m)).empty());
}

TEST_CASE("successors: Sys1 has exactly one reduct") {
  Model m = parse_model(
      "domain D = {v}\n"
      "channel a d1\n"
      "def OTP = a!v . 0\n"
      "def BC1 = a?x . d1!x . 0\n"
      "system Sys1 = new a . (BC1() | OTP())\n");
  CanonState s = canonicalize(m, m.system("Sys1"));
  auto succ = successors(m, s, all_up(m));
  REQUIRE(succ.size() == 1);
  // hand derivation: new a.(d1!v.0 | 0)
  Proc expect = mk_restrict(
      "a", mk_par(out("d1", Value::of_name("v"), mk_inert()), mk_inert()));
  CHECK(succ.begin()->key == canonicalize(m, expect).key);
  CHECK(successors(m, *succ.begin(), all_up(m)).empty());
}

TEST_CASE("barbs: visibility and restriction masking") {
  Model m = tiny_model();
  Proc p = out("d", Value::of_name("v"), mk_inert());
  auto bs = strong_barbs(m, canonicalize(m, p), all_up(m));
  REQUIRE(bs.size() == 1);
  CHECK(bs.begin()->str() == "d!v");

  Proc hidden = mk_restrict("d", p);
  CHECK(strong_barbs(m, canonicalize(m, hidden), all_up(m)).empty());
}

TEST_CASE("barbs: location gating") {
  Model m = tiny_model();
  Proc p = mk_located("l1", out("a", Value::of_name("v"), mk_inert()));
  CanonState s = canonicalize(m, p);
  CHECK(strong_barbs(m, s, {}).empty());
  auto bs = strong_barbs(m, s, {"l1"});
  REQUIRE(bs.size() == 1);
  CHECK(bs.begin()->str() == "a!v");
}

TEST_CASE("barbs: monotone in the up-set and weak depth 0 is strong") {
  Model m = tiny_model();
  std::mt19937 rng(777);
  for (int i = 0; i < 60; ++i) {
    Proc p0 = gen_term(rng, 2, {});
    Proc p = mk_par(mk_located("l1", gen_term(rng, 2, {})), p0);
    CanonState s = canonicalize(m, p);
    auto none = strong_barbs(m, s, {});
    auto l1 = strong_barbs(m, s, {"l1"});
    auto both = strong_barbs(m, s, {"l1", "l2"});
    CHECK(std::includes(l1.begin(), l1.end(), none.begin(), none.end()));
    CHECK(std::includes(both.begin(), both.end(), l1.begin(), l1.end()));
    auto w0 = weak_barbs(m, s, all_up(m), 0);
    CHECK(w0.barbs == strong_barbs(m, s, all_up(m)));
  }
}

TEST_CASE("weak barbs: zero silent steps keeps the immediate barb") {
  Model m = tiny_model();
  Proc p = out("a", Value::of_name("v"), mk_inert());
  auto wb = weak_barbs(m, canonicalize(m, p), all_up(m), 0);
  REQUIRE(wb.barbs.size() == 1);
  CHECK(wb.barbs.begin()->str() == "a!v");
  CHECK(wb.saturated);
}

TEST_CASE("plug: identity, broadcast and error cases") {
  Model m = parse_model(
      "domain D = {v}\n"
      "channel a\n"
      "location l1 l2\n"
      "def OTP = a!v . 0\n"
      "context Cid = []_1\n"
      "context Crep = loc l1 [ ! []_1 ] | loc l2 [ ! []_2 ]\n");
  Proc otp = mk_call("OTP", {});
  Proc id = plug(m, m.context("Cid"), {otp});
  CHECK(canonicalize(m, id).key == canonicalize(m, otp).key);

  Proc rep = plug(m, m.context("Crep"), {otp});
  Proc expect = mk_par(
      mk_located("l1", mk_repl(out("a", Value::of_name("v"), mk_inert()))),
      mk_located("l2", mk_repl(out("a", Value::of_name("v"), mk_inert()))));
  CHECK(canonicalize(m, rep).key == canonicalize(m, expect).key);

  CHECK_THROWS_WITH_AS(plug(m, m.context("Crep"), {otp, otp, otp}),
                       doctest::Contains("HoleCountMismatch"), ModelError);
}

TEST_CASE("plug: capture and dead-hole violations") {
  Model m = tiny_model();
  // a?x.[]_1 — hole under a binder
  Proc ctx = in("a", "x", mk_hole(1));
  CHECK_THROWS_WITH_AS(plug(m, ctx, {mk_inert()}),
                       doctest::Contains("CaptureViolation"), ModelError);
  Proc dead = mk_match(Expr::of_value(Value::of_int(0)), MatchOp::Eq,
                       Expr::of_value(Value::of_int(1)), mk_hole(1));
  CHECK_THROWS_AS(plug(m, dead, {mk_inert()}), ModelError);
}

TEST_CASE("replication: lazy spawning keeps branching finite") {
  Model m = tiny_model();
  // !(a!v) | a?x.0  -> one rendezvous, replication persists
  Proc p = mk_par(mk_repl(out("a", Value::of_name("v"), mk_inert())),
                  in("a", "x", mk_inert()));
  CanonState s = canonicalize(m, p);
  auto succ = successors(m, s, all_up(m));
  REQUIRE(succ.size() == 1);
  CHECK(succ.begin()->key ==
        canonicalize(m, mk_repl(out("a", Value::of_name("v"), mk_inert())))
            .key);
}

TEST_CASE("replication: self synchronisation across two copies") {
  Model m = tiny_model();
  // !(a!v.0 + a?x.d!x.0) can rendezvous with itself
  Proc body = mk_choice(out("a", Value::of_name("v"), mk_inert()),
                        in("a", "x",
                           mk_output(ChanRef{"d", {}}, Expr::of_var("x"),
                                     mk_inert())));
  CanonState s = canonicalize(m, mk_repl(body));
  auto succ = successors(m, s, all_up(m));
  REQUIRE(!succ.empty());
  bool found = false;
  for (const auto& t : succ)
    if (t.key.find("d!v") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("whitenoise: a single self-loop") {
  Model m = parse_model(
      "domain D = {v}\n"
      "channel a\n"
      "def WhiteNoise = new w . ( !(w!()) | !(w?_) )\n"
      "system WN = WhiteNoise()\n");
  CanonState s = canonicalize(m, m.system("WN"));
  auto succ = successors(m, s, all_up(m));
  REQUIRE(succ.size() == 1);
  CHECK(succ.begin()->key == s.key);
  CHECK(strong_barbs(m, s, all_up(m)).empty());
}
