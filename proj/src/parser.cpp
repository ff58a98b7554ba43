#include "resil/parser.hpp"

#include <cctype>
#include <functional>
#include <optional>

#include "resil/diag.hpp"

namespace resil {

namespace {

struct Tok {
  enum class K { Ident, Int, Punct, End };
  K k = K::End;
  std::string s;
  long long num = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { next(); }

  const Tok& peek() const { return tok_; }
  const Tok& peek2() {
    if (!have2_) {
      size_t save_pos = pos_;
      int sl = line_, sc = col_;
      Tok savet = tok_;
      next();
      tok2_ = tok_;
      tok_ = savet;
      pos_ = save_pos;
      line_ = sl;
      col_ = sc;
      have2_ = true;
    }
    return tok2_;
  }
  Tok take() {
    Tok t = tok_;
    next();
    return t;
  }
  bool is_punct(const std::string& s) const {
    return tok_.k == Tok::K::Punct && tok_.s == s;
  }
  bool is_ident(const std::string& s) const {
    return tok_.k == Tok::K::Ident && tok_.s == s;
  }
  void expect_punct(const std::string& s) {
    if (!is_punct(s)) fail("expected '" + s + "'");
    take();
  }
  std::string expect_ident(const std::string& what) {
    if (tok_.k != Tok::K::Ident) fail("expected " + what);
    return take().s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

 private:
  void next() {
    have2_ = false;
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.k = Tok::K::End;
      tok_.s.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string s;
      while (pos_ < text_.size() &&
             (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_')) {
        s += text_[pos_];
        advance();
      }
      tok_.k = Tok::K::Ident;
      tok_.s = s;
      return;
    }
    if (std::isdigit((unsigned char)c)) {
      long long n = 0;
      std::string s;
      while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
        s += text_[pos_];
        n = n * 10 + (text_[pos_] - '0');
        advance();
      }
      tok_.k = Tok::K::Int;
      tok_.s = s;
      tok_.num = n;
      return;
    }
    // multi-char punct
    static const char* two[] = {"..", "<=", ">=", "!="};
    for (const char* t : two) {
      if (text_.compare(pos_, 2, t) == 0) {
        tok_.k = Tok::K::Punct;
        tok_.s = t;
        advance();
        advance();
        return;
      }
    }
    tok_.k = Tok::K::Punct;
    tok_.s = std::string(1, c);
    advance();
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace((unsigned char)text_[pos_]))
        advance();
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      break;
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

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Tok tok_, tok2_;
  bool have2_ = false;
};

const std::set<std::string> kKeywords = {
    "domain", "channel", "location", "def",       "system",
    "context", "adversary", "check",   "generator", "new",
    "loc"};

bool is_keyword(const Tok& t) {
  return t.k == Tok::K::Ident && kKeywords.count(t.s) > 0;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  Model run() {
    while (lx_.peek().k != Tok::K::End) decl();
    if (!saw_domain_) throw ModelError("BadParams", "missing domain declaration");
    resolve_and_validate();
    return std::move(m_);
  }

 private:
  void decl() {
    const Tok& t = lx_.peek();
    if (t.k != Tok::K::Ident) lx_.fail("expected declaration");
    if (t.s == "domain") {
      domain_decl();
    } else if (t.s == "channel") {
      lx_.take();
      name_list(m_.channels, "channel name");
    } else if (t.s == "location") {
      lx_.take();
      name_list(m_.locations, "location name");
    } else if (t.s == "def") {
      def_decl();
    } else if (t.s == "system") {
      lx_.take();
      std::string name = lx_.expect_ident("system name");
      lx_.expect_punct("=");
      m_.systems[name] = proc();
    } else if (t.s == "context") {
      lx_.take();
      std::string name = lx_.expect_ident("context name");
      lx_.expect_punct("=");
      m_.contexts[name] = proc();
    } else if (t.s == "adversary") {
      adversary_decl();
    } else if (t.s == "check") {
      check_decl();
    } else if (t.s == "generator") {
      lx_.take();
      m_.generator = lx_.expect_ident("generator name");
      m_.generator_kv = kv_pairs();
    } else {
      lx_.fail("unknown declaration '" + t.s + "'");
    }
  }

  void domain_decl() {
    lx_.take();
    if (saw_domain_)
      throw ModelError("BadParams", "more than one domain declaration");
    saw_domain_ = true;
    if (lx_.peek().k == Tok::K::Ident) lx_.take();  // optional domain name
    lx_.expect_punct("=");
    lx_.expect_punct("{");
    for (;;) {
      if (lx_.peek().k == Tok::K::Int) {
        long long a = lx_.take().num;
        if (lx_.is_punct("..")) {
          lx_.take();
          if (lx_.peek().k != Tok::K::Int) lx_.fail("expected range end");
          long long b = lx_.take().num;
          for (long long v = a; v <= b; ++v)
            m_.domain.push_back(Value::of_int(v));
        } else {
          m_.domain.push_back(Value::of_int(a));
        }
      } else if (lx_.peek().k == Tok::K::Ident) {
        m_.domain.push_back(Value::of_name(lx_.take().s));
      } else {
        lx_.fail("expected domain value");
      }
      if (lx_.is_punct(",")) {
        lx_.take();
        continue;
      }
      break;
    }
    lx_.expect_punct("}");
  }

  void name_list(std::set<std::string>& out, const std::string& what) {
    for (;;) {
      const Tok& t = lx_.peek();
      if (t.k != Tok::K::Ident || is_keyword(t)) break;
      out.insert(lx_.take().s);
      if (lx_.is_punct(",")) lx_.take();
    }
    if (out.empty()) lx_.fail("expected " + what);
  }

  void def_decl() {
    lx_.take();
    ProcDef d;
    d.name = lx_.expect_ident("def name");
    if (lx_.is_punct("(")) {
      lx_.take();
      while (!lx_.is_punct(")")) {
        d.params.push_back(lx_.expect_ident("parameter"));
        if (lx_.is_punct(",")) lx_.take();
      }
      lx_.take();
    }
    lx_.expect_punct("=");
    d.body = proc();
    if (m_.defs.count(d.name))
      throw ModelError("BadParams", "duplicate def " + d.name);
    m_.defs[d.name] = std::move(d);
  }

  void adversary_decl() {
    int line = lx_.peek().line;
    lx_.take();
    AdversaryDecl a;
    a.line = line;
    a.name = lx_.expect_ident("adversary name");
    lx_.expect_punct("=");
    a.kind = lx_.expect_ident("adversary kind");
    if (lx_.is_punct("(")) {
      lx_.take();
      while (!lx_.is_punct(")")) {
        std::string key = lx_.expect_ident("parameter name");
        lx_.expect_punct("=");
        a.kv[key] = kv_value();
        if (lx_.is_punct(",")) lx_.take();
      }
      lx_.take();
    }
    m_.adversaries[a.name] = std::move(a);
  }

  void check_decl() {
    int line = lx_.peek().line;
    lx_.take();
    CheckDecl c;
    c.line = line;
    static const std::set<std::string> kinds = {
        "resilience", "bisim", "barbs", "err", "reach", "cover", "subcover"};
    std::string first = lx_.expect_ident("check kind or name");
    if (kinds.count(first)) {
      c.kind = first;
      c.name = first + "_" + std::to_string(m_.checks.size() + 1);
    } else {
      c.name = first;
      c.kind = lx_.expect_ident("check kind");
      if (!kinds.count(c.kind))
        lx_.fail("unknown check kind '" + c.kind + "'");
    }
    c.kv = kv_pairs();
    m_.checks.push_back(std::move(c));
  }

  std::map<std::string, std::string> kv_pairs() {
    std::map<std::string, std::string> kv;
    for (;;) {
      const Tok& t = lx_.peek();
      if (t.k != Tok::K::Ident || is_keyword(t)) break;
      if (lx_.peek2().k != Tok::K::Punct || lx_.peek2().s != "=") break;
      std::string key = lx_.take().s;
      lx_.take();  // '='
      kv[key] = kv_value();
    }
    return kv;
  }

  // A kv value is either a braced token run "{...}" or a comma-joined list of
  // atoms; barbs like d1!v are accepted inside either form.
  std::string kv_value() {
    std::string out;
    if (lx_.is_punct("{")) {
      lx_.take();
      out = "{";
      while (!lx_.is_punct("}")) {
        if (lx_.peek().k == Tok::K::End) lx_.fail("unterminated '{'");
        out += lx_.take().s;
      }
      lx_.take();
      out += "}";
      return out;
    }
    for (;;) {
      const Tok& t = lx_.peek();
      if (t.k == Tok::K::End) break;
      if (t.k == Tok::K::Punct) {
        if (t.s == "," || t.s == "!") {
          out += lx_.take().s;
          continue;
        }
        break;
      }
      if (is_keyword(t)) break;
      if (t.k == Tok::K::Ident && lx_.peek2().k == Tok::K::Punct &&
          lx_.peek2().s == "=" && !out.empty() && out.back() != ',' &&
          out.back() != '!')
        break;  // next key=value
      out += lx_.take().s;
    }
    if (out.empty()) lx_.fail("expected value");
    return out;
  }

  // ---- process grammar ----

  Proc proc() { return par_proc(); }

  Proc par_proc() {
    Proc p = choice_proc();
    while (lx_.is_punct("|")) {
      lx_.take();
      p = mk_par(p, choice_proc());
    }
    return p;
  }

  Proc choice_proc() {
    Proc p = seq_proc();
    while (lx_.is_punct("+")) {
      lx_.take();
      p = mk_choice(p, seq_proc());
    }
    return p;
  }

  Proc seq_proc() {
    const Tok& t = lx_.peek();
    if (t.k == Tok::K::Int) {
      if (t.num == 0) {
        lx_.take();
        return mk_inert();
      }
      lx_.fail("expected process");
    }
    if (lx_.is_punct("!")) {
      lx_.take();
      return mk_repl(seq_proc());
    }
    if (lx_.is_punct("(")) {
      lx_.take();
      Proc p = par_proc();
      lx_.expect_punct(")");
      return p;
    }
    if (lx_.is_punct("[")) return bracket_proc();
    if (t.k != Tok::K::Ident) lx_.fail("expected process");
    if (t.s == "new") {
      lx_.take();
      std::vector<std::string> names;
      while (lx_.peek().k == Tok::K::Ident && !lx_.is_punct(".")) {
        names.push_back(lx_.take().s);
        if (lx_.is_punct(",")) lx_.take();
        if (lx_.is_punct(".")) break;
      }
      if (names.empty()) lx_.fail("expected channel name after 'new'");
      lx_.expect_punct(".");
      Proc body = seq_proc();
      for (auto it = names.rbegin(); it != names.rend(); ++it)
        body = mk_restrict(*it, body);
      return body;
    }
    if (t.s == "loc") {
      lx_.take();
      std::string l = lx_.expect_ident("location name");
      lx_.expect_punct("[");
      Proc body = par_proc();
      lx_.expect_punct("]");
      return mk_located(l, body);
    }
    // identifier: channel prefix or call
    std::string name = lx_.take().s;
    ChanRef cr;
    cr.base = name;
    if (lx_.is_punct("[")) {
      lx_.take();
      cr.index = expr();
      lx_.expect_punct("]");
    }
    if (lx_.is_punct("!")) {
      lx_.take();
      Expr payload = out_payload();
      Proc cont = opt_cont();
      return mk_output(cr, std::move(payload), cont);
    }
    if (lx_.is_punct("?")) {
      lx_.take();
      std::string var;
      if (lx_.peek().k == Tok::K::Ident && !is_keyword(lx_.peek()))
        var = lx_.take().s;
      if (var == "_") var.clear();
      Proc cont = opt_cont();
      return mk_input(cr, var, cont);
    }
    if (cr.index) lx_.fail("indexed channel must be used as a prefix");
    std::vector<Expr> args;
    if (lx_.is_punct("(")) {
      lx_.take();
      while (!lx_.is_punct(")")) {
        args.push_back(expr());
        if (lx_.is_punct(",")) lx_.take();
      }
      lx_.take();
    }
    return mk_call(name, std::move(args));
  }

  Proc bracket_proc() {
    lx_.take();  // '['
    if (lx_.is_punct("]")) {  // hole
      lx_.take();
      int idx = 1;
      if (lx_.is_punct("_")) {
        lx_.take();
        if (lx_.peek().k != Tok::K::Int) lx_.fail("expected hole index");
        idx = (int)lx_.take().num;
      } else if (lx_.peek().k == Tok::K::Ident && lx_.peek().s[0] == '_') {
        // tokenised as _<digits>
        std::string s = lx_.take().s;
        if (s.size() < 2 ||
            s.find_first_not_of("0123456789", 1) != std::string::npos)
          lx_.fail("expected hole index");
        idx = std::stoi(s.substr(1));
      }
      return mk_hole(idx);
    }
    Expr lhs = expr();
    MatchOp op;
    if (lx_.is_punct("=")) op = MatchOp::Eq;
    else if (lx_.is_punct("!=")) op = MatchOp::Ne;
    else if (lx_.is_punct("<")) op = MatchOp::Lt;
    else if (lx_.is_punct("<=")) op = MatchOp::Le;
    else if (lx_.is_punct(">")) op = MatchOp::Gt;
    else if (lx_.is_punct(">=")) op = MatchOp::Ge;
    else { lx_.fail("expected comparison operator in match"); }
    lx_.take();
    Expr rhs = expr();
    lx_.expect_punct("]");
    return mk_match(std::move(lhs), op, std::move(rhs), seq_proc());
  }

  Proc opt_cont() {
    if (lx_.is_punct(".")) {
      lx_.take();
      return seq_proc();
    }
    return mk_inert();
  }

  Expr out_payload() {
    const Tok& t = lx_.peek();
    if (t.k == Tok::K::Int) return expr_atom();
    if (t.k == Tok::K::Ident && !is_keyword(t)) return expr_atom();
    if (lx_.is_punct("(")) {
      // parenthesised expression or tuple; "()" is the unit value
      lx_.take();
      if (lx_.is_punct(")")) {
        lx_.take();
        return Expr::of_value(Value::unit());
      }
      std::vector<Expr> xs;
      xs.push_back(expr());
      while (lx_.is_punct(",")) {
        lx_.take();
        xs.push_back(expr());
      }
      lx_.expect_punct(")");
      if (xs.size() == 1) return xs[0];
      return Expr::tuple(std::move(xs));
    }
    return Expr::of_value(Value::unit());
  }

  Expr expr() {
    Expr e = expr_atom();
    while (lx_.is_punct("+") || lx_.is_punct("-")) {
      bool add = lx_.is_punct("+");
      lx_.take();
      Expr rhs = expr_atom();
      e = Expr::binop(add ? Expr::Kind::Add : Expr::Kind::Sub, std::move(e),
                      std::move(rhs));
    }
    return e;
  }

  Expr expr_atom() {
    const Tok& t = lx_.peek();
    if (t.k == Tok::K::Int) return Expr::of_value(Value::of_int(lx_.take().num));
    if (t.k == Tok::K::Ident && !is_keyword(t))
      return Expr::of_var(lx_.take().s);  // resolved against domain atoms later
    if (lx_.is_punct("(")) {
      lx_.take();
      std::vector<Expr> xs;
      if (!lx_.is_punct(")")) {
        xs.push_back(expr());
        while (lx_.is_punct(",")) {
          lx_.take();
          xs.push_back(expr());
        }
      }
      lx_.expect_punct(")");
      if (xs.size() == 1) return xs[0];
      return Expr::tuple(std::move(xs));
    }
    lx_.fail("expected expression");
  }

  // ---- post-parse resolution & validation ----

  Expr resolve_expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var:
        if (m_.is_domain_atom(e.var))
          return Expr::of_value(Value::of_name(e.var));
        return e;
      case Expr::Kind::Lit:
        return e;
      default: {
        Expr out = e;
        for (auto& k : out.kids) k = resolve_expr(k);
        return out;
      }
    }
  }

  Proc resolve_proc(const Proc& p) {
    using K = ProcTerm::Kind;
    ProcTerm t = *p;
    switch (p->kind) {
      case K::Inert:
      case K::Hole:
        return p;
      case K::Output:
        if (t.chan.index) t.chan.index = resolve_expr(*t.chan.index);
        t.payload = resolve_expr(t.payload);
        t.cont = resolve_proc(t.cont);
        break;
      case K::Input:
        if (t.chan.index) t.chan.index = resolve_expr(*t.chan.index);
        t.cont = resolve_proc(t.cont);
        break;
      case K::Par:
      case K::Choice:
        t.left = resolve_proc(t.left);
        t.right = resolve_proc(t.right);
        break;
      case K::Restrict:
      case K::Repl:
      case K::Located:
        t.cont = resolve_proc(t.cont);
        break;
      case K::Match:
        t.m_lhs = resolve_expr(t.m_lhs);
        t.m_rhs = resolve_expr(t.m_rhs);
        t.cont = resolve_proc(t.cont);
        break;
      case K::Call:
        for (auto& a : t.args) a = resolve_expr(a);
        break;
    }
    return std::make_shared<const ProcTerm>(std::move(t));
  }

  void check_vars_expr(const Expr& e, const std::set<std::string>& scope,
                       const std::string& where) {
    switch (e.kind) {
      case Expr::Kind::Var:
        if (!scope.count(e.var))
          throw ModelError("UndeclaredName",
                           "unbound variable '" + e.var + "' in " + where);
        return;
      case Expr::Kind::Lit:
        return;
      default:
        for (const auto& k : e.kids) check_vars_expr(k, scope, where);
    }
  }

  void check_chan(const ChanRef& c, const std::set<std::string>& restricted,
                  const std::string& where) {
    if (c.index) return;  // family reference; resolved at evaluation time
    if (!m_.channels.count(c.base) && !restricted.count(c.base))
      throw ModelError("UndeclaredName",
                       "channel '" + c.base + "' in " + where);
  }

  // Validates name/arity/variable scoping, location placement and hole
  // positions. `spatial` means a position where Located may still appear;
  // `in_loc` means strictly inside a Located body; `under_binder` tracks
  // Input binders for hole capture.
  void walk_validate(const Proc& p, std::set<std::string> vars,
                     std::set<std::string> restricted, bool spatial,
                     bool in_loc, bool under_binder, bool allow_holes,
                     const std::string& where) {
    using K = ProcTerm::Kind;
    switch (p->kind) {
      case K::Inert:
        return;
      case K::Hole:
        if (!allow_holes)
          throw ModelError("BadParams", "hole outside a context in " + where);
        if (under_binder)
          throw ModelError("CaptureViolation",
                           "hole under an input binder in " + where);
        return;
      case K::Output:
        check_chan(p->chan, restricted, where);
        if (p->chan.index) check_vars_expr(*p->chan.index, vars, where);
        check_vars_expr(p->payload, vars, where);
        walk_validate(p->cont, vars, restricted, false, in_loc, under_binder,
                      allow_holes, where);
        return;
      case K::Input: {
        check_chan(p->chan, restricted, where);
        if (p->chan.index) check_vars_expr(*p->chan.index, vars, where);
        auto v2 = vars;
        if (!p->var.empty()) {
          if (m_.is_domain_atom(p->var))
            throw ModelError("BadParams", "input variable '" + p->var +
                                              "' shadows a domain constant");
          v2.insert(p->var);
        }
        walk_validate(p->cont, v2, restricted, false, in_loc, true,
                      allow_holes, where);
        return;
      }
      case K::Par:
        walk_validate(p->left, vars, restricted, spatial, in_loc, under_binder,
                      allow_holes, where);
        walk_validate(p->right, vars, restricted, spatial, in_loc,
                      under_binder, allow_holes, where);
        return;
      case K::Restrict: {
        auto r2 = restricted;
        r2.insert(p->name);
        walk_validate(p->cont, vars, r2, spatial, in_loc, under_binder,
                      allow_holes, where);
        return;
      }
      case K::Choice:
        walk_validate(p->left, vars, restricted, false, in_loc, under_binder,
                      allow_holes, where);
        walk_validate(p->right, vars, restricted, false, in_loc, under_binder,
                      allow_holes, where);
        return;
      case K::Match:
        check_vars_expr(p->m_lhs, vars, where);
        check_vars_expr(p->m_rhs, vars, where);
        walk_validate(p->cont, vars, restricted, false, in_loc, under_binder,
                      allow_holes, where);
        return;
      case K::Repl:
        walk_validate(p->cont, vars, restricted, false, in_loc, under_binder,
                      allow_holes, where);
        return;
      case K::Located:
        if (!spatial || in_loc)
          throw ModelError("BadParams",
                           "location '" + p->name +
                               "' not at a spatial position in " + where);
        if (!m_.locations.count(p->name))
          throw ModelError("UndeclaredName", "location '" + p->name + "'");
        walk_validate(p->cont, vars, restricted, true, true, under_binder,
                      allow_holes, where);
        return;
      case K::Call: {
        auto it = m_.defs.find(p->name);
        if (it == m_.defs.end())
          throw ModelError("UndeclaredName", "def '" + p->name + "' in " + where);
        if (it->second.params.size() != p->args.size())
          throw ModelError("ArityMismatch",
                           p->name + " expects " +
                               std::to_string(it->second.params.size()) +
                               " arguments in " + where);
        for (const auto& a : p->args) check_vars_expr(a, vars, where);
        return;
      }
    }
  }

  // Guardedness: the canonical unfolding of every definition body must
  // terminate. A recursive call may only appear under a prefix or as a
  // choice branch (where the memoized collection closes the cycle).
  enum class GStat { Ok, Cycle };

  GStat walk_guard(const Proc& p, std::set<std::string>& stack, bool in_choice,
                   const std::string& where) {
    using K = ProcTerm::Kind;
    switch (p->kind) {
      case K::Inert:
      case K::Output:
      case K::Input:
      case K::Hole:
        return GStat::Ok;
      case K::Par:
      case K::Repl:
      case K::Restrict:
      case K::Located: {
        GStat a = GStat::Ok, b = GStat::Ok;
        if (p->kind == K::Par) {
          a = walk_guard(p->left, stack, false, where);
          b = walk_guard(p->right, stack, false, where);
        } else {
          a = walk_guard(p->cont, stack, false, where);
        }
        if (a == GStat::Cycle || b == GStat::Cycle) return GStat::Cycle;
        return GStat::Ok;
      }
      case K::Match:
        return walk_guard(p->cont, stack, in_choice, where);
      case K::Choice: {
        GStat a = walk_guard(p->left, stack, true, where);
        GStat b = walk_guard(p->right, stack, true, where);
        if (a == GStat::Ok || b == GStat::Ok) return GStat::Ok;
        return GStat::Cycle;
      }
      case K::Call: {
        if (stack.count(p->name)) {
          if (in_choice) return GStat::Cycle;  // branch dropped by memoization
          throw ModelError("UnguardedRecursion",
                           "unguarded recursive call of " + p->name + " in " +
                               where);
        }
        stack.insert(p->name);
        GStat s = walk_guard(m_.def(p->name).body, stack, in_choice, where);
        stack.erase(p->name);
        return s;
      }
    }
    return GStat::Ok;
  }

  void resolve_and_validate() {
    for (auto& [name, d] : m_.defs) d.body = resolve_proc(d.body);
    for (auto& [name, s] : m_.systems) s = resolve_proc(s);
    for (auto& [name, c] : m_.contexts) c = resolve_proc(c);

    for (const auto& [name, d] : m_.defs) {
      std::set<std::string> vars(d.params.begin(), d.params.end());
      walk_validate(d.body, vars, {}, true, false, false, false,
                    "def " + name);
      std::set<std::string> stack{name};
      if (walk_guard(d.body, stack, false, "def " + name) == GStat::Cycle)
        throw ModelError("UnguardedRecursion",
                         "def " + name + " has no guarded form");
    }
    for (const auto& [name, s] : m_.systems) {
      walk_validate(s, {}, {}, true, false, false, false, "system " + name);
      std::set<std::string> stack;
      walk_guard(s, stack, false, "system " + name);
    }
    for (const auto& [name, c] : m_.contexts) {
      walk_validate(c, {}, {}, true, false, false, true, "context " + name);
      std::set<int> holes;
      collect_holes(c, holes);
      if (holes.empty())
        throw ModelError("BadParams", "context " + name + " has no holes");
      int expect = 1;
      for (int h : holes) {
        if (h != expect)
          throw ModelError("BadParams", "context " + name +
                                            " hole indices must be contiguous "
                                            "from 1");
        ++expect;
      }
    }
    for (const auto& [name, a] : m_.adversaries) {
      static const std::set<std::string> kinds = {
          "benign", "step_counter", "fail_stop", "channel_omission",
          "channel_reorder_omission"};
      if (!kinds.count(a.kind))
        throw ModelError("BadParams", "unknown adversary kind " + a.kind);
      if (a.kind == "fail_stop") {
        auto it = a.kv.find("locs");
        if (it == a.kv.end())
          throw ModelError("BadParams", "fail_stop requires locs=");
      }
      if (a.kind == "channel_omission" ||
          a.kind == "channel_reorder_omission") {
        auto it = a.kv.find("chs");
        if (it == a.kv.end())
          throw ModelError("BadParams", a.kind + " requires chs=");
        std::string chs = it->second;
        std::string cur;
        for (char ch : chs + ",") {
          if (ch == '{' || ch == '}') continue;
          if (ch == ',') {
            if (!cur.empty()) {
              if (!m_.channels.count(cur))
                throw ModelError("UndeclaredName", "mediated channel " + cur);
              m_.mediated.insert(cur);
              cur.clear();
            }
            continue;
          }
          cur += ch;
        }
      }
    }
  }

  Lexer lx_;
  Model m_;
  bool saw_domain_ = false;
};

}  // namespace

Model parse_model(const std::string& text) { return Parser(text).run(); }

}  // namespace resil
