#include "resil/semantics.hpp"

#include <cassert>
#include <deque>

#include "resil/diag.hpp"

namespace resil {

namespace {

Proc par_all(const std::vector<Proc>& ps) {
  Proc out;
  for (const auto& p : ps) {
    if (p->kind == ProcTerm::Kind::Inert) continue;
    out = out ? mk_par(out, p) : p;
  }
  return out ? out : mk_inert();
}

Proc wrap_nus(const std::vector<std::string>& nus, Proc body) {
  for (auto it = nus.rbegin(); it != nus.rend(); ++it)
    body = mk_restrict(*it, body);
  return body;
}

Proc denorm_group_except(const CGroup& g, int skip, const Proc& replacement) {
  std::vector<Proc> ps;
  for (size_t j = 0; j < g.comps.size(); ++j)
    ps.push_back((int)j == skip ? replacement
                                : denormalize_comp(g.comps[j]));
  return wrap_nus(g.nus, par_all(ps));
}

bool is_marker(const std::string& loc) { return !loc.empty() && loc[0] == '@'; }

// Collects the offers of a single component. `locs`/`in_core` accumulate the
// located wrappers crossed on the way in.
void comp_offers(const Model& m, const CN& c, std::vector<std::string> locs,
                 bool in_core, std::vector<Offer>& outs,
                 std::vector<Offer>& ins) {
  switch (c->k) {
    case CNode::K::Out: {
      if (c->chan_index)
        throw ModelError("OpenTerm", "unresolved channel index at a prefix");
      Offer o;
      o.is_out = true;
      o.chan = c->chan;
      o.val = eval_expr(c->payload);
      if (!m.value_in_domain(o.val))
        throw ModelError("DomainEscape", "communicated value " + o.val.str() +
                                             " outside the declared domain");
      o.residual = denormalize(c->cont);
      o.locs = std::move(locs);
      o.in_core = in_core;
      outs.push_back(std::move(o));
      return;
    }
    case CNode::K::In: {
      if (c->chan_index)
        throw ModelError("OpenTerm", "unresolved channel index at a prefix");
      Offer o;
      o.chan = c->chan;
      o.var = c->var;
      o.residual = denormalize(c->cont);
      o.locs = std::move(locs);
      o.in_core = in_core;
      ins.push_back(std::move(o));
      return;
    }
    case CNode::K::Choice: {
      for (const auto& b : c->branches) {
        if (b->k != CNode::K::Out && b->k != CNode::K::In)
          throw ModelError("BadParams",
                           "unresolved guard in a committed choice");
        comp_offers(m, b, locs, in_core, outs, ins);
      }
      return;
    }
    case CNode::K::Repl: {
      // one lazily spawned copy; the replication itself persists
      Proc self = denormalize_comp(c);
      for (size_t j = 0; j < c->cont.comps.size(); ++j) {
        std::vector<Offer> co, ci;
        comp_offers(m, c->cont.comps[j], {}, false, co, ci);
        for (auto* vec : {&co, &ci}) {
          for (auto& o : *vec) {
            Proc copy_res = denorm_group_except(c->cont, (int)j, o.residual);
            o.residual = mk_par(copy_res, self);
            for (const auto& l : locs) o.locs.push_back(l);
            o.in_core = o.in_core || in_core;
            if (o.is_out)
              outs.push_back(std::move(o));
            else
              ins.push_back(std::move(o));
          }
        }
      }
      return;
    }
    case CNode::K::Located: {
      for (size_t j = 0; j < c->cont.comps.size(); ++j) {
        std::vector<Offer> co, ci;
        comp_offers(m, c->cont.comps[j], {}, false, co, ci);
        for (auto* vec : {&co, &ci}) {
          for (auto& o : *vec) {
            Proc body_res = denorm_group_except(c->cont, (int)j, o.residual);
            o.residual = mk_located(c->loc, body_res);
            o.locs.insert(o.locs.end(), locs.begin(), locs.end());
            if (is_marker(c->loc))
              o.in_core = true;
            else
              o.locs.push_back(c->loc);
            o.in_core = o.in_core || in_core;
            if (o.is_out)
              outs.push_back(std::move(o));
            else
              ins.push_back(std::move(o));
          }
        }
      }
      return;
    }
    case CNode::K::Match:
    case CNode::K::Call:
    case CNode::K::Hole:
      return;  // no offers (open guards only occur under binders; holes inert)
  }
}

struct SilentMove {
  Proc replacement;
  bool in_core = false;
};

}  // namespace

OfferSet collect_offers(const Model& m, const CanonState& s) {
  OfferSet os;
  const CGroup& g = *s.group;
  for (size_t i = 0; i < g.comps.size(); ++i) {
    std::vector<Offer> o, in;
    comp_offers(m, g.comps[i], {}, false, o, in);
    for (auto& x : o) {
      x.slot = (int)i;
      os.outs.push_back(std::move(x));
    }
    for (auto& x : in) {
      x.slot = (int)i;
      os.ins.push_back(std::move(x));
    }
  }
  return os;
}

namespace {

bool locs_up(const std::vector<std::string>& locs, const UpSet& up) {
  for (const auto& l : locs)
    if (!up.count(l)) return false;
  return true;
}

Proc rebuild_root(const CGroup& root,
                  const std::vector<std::pair<int, Proc>>& repl) {
  std::vector<Proc> ps;
  for (size_t k = 0; k < root.comps.size(); ++k) {
    bool replaced = false;
    for (const auto& [slot, ast] : repl) {
      if (slot == (int)k) {
        ps.push_back(ast);
        replaced = true;
        break;
      }
    }
    if (!replaced) ps.push_back(denormalize_comp(root.comps[k]));
  }
  return wrap_nus(root.nus, par_all(ps));
}

// Internal (single-component) silent moves: reductions inside a replication
// copy or within a located body. Gated by `up` before recursion.
void comp_silents(const Model& m, const CN& c, const UpSet& up,
                  const std::set<std::string>& mediated,
                  std::vector<SilentMove>& out, bool in_core);

std::set<CanonState> successors_impl(const Model& m, const CanonState& s,
                                     const UpSet& up,
                                     const std::set<std::string>& mediated) {
  std::set<CanonState> result;
  OfferSet os = collect_offers(m, s);
  const CGroup& root = *s.group;

  for (const auto& o : os.outs) {
    if (mediated.count(o.chan)) continue;
    if (!locs_up(o.locs, up)) continue;
    for (const auto& in : os.ins) {
      if (in.chan != o.chan) continue;
      if (in.slot == o.slot) continue;  // same-slot sync handled by silents
      if (!locs_up(in.locs, up)) continue;
      Proc in_res = in.var.empty() ? in.residual
                                   : subst_value(in.residual, in.var, o.val);
      Proc next = rebuild_root(root, {{o.slot, o.residual}, {in.slot, in_res}});
      result.insert(canonicalize(m, next));
    }
  }

  for (size_t i = 0; i < root.comps.size(); ++i) {
    std::vector<SilentMove> sm;
    comp_silents(m, root.comps[i], up, mediated, sm, false);
    for (const auto& mv : sm) {
      Proc next = rebuild_root(root, {{(int)i, mv.replacement}});
      result.insert(canonicalize(m, next));
    }
  }
  return result;
}

void comp_silents(const Model& m, const CN& c, const UpSet& up,
                  const std::set<std::string>& mediated,
                  std::vector<SilentMove>& out, bool in_core) {
  switch (c->k) {
    case CNode::K::Repl: {
      Proc self = denormalize_comp(c);
      Proc body = denormalize(c->cont);
      CanonState bs = canonicalize(m, body);
      // one copy makes an internal step
      for (const auto& succ : successors_impl(m, bs, up, mediated)) {
        SilentMove mv;
        mv.replacement = mk_par(succ.ast, self);
        mv.in_core = in_core;
        out.push_back(std::move(mv));
      }
      // two copies synchronise with each other
      OfferSet bo = collect_offers(m, bs);
      for (const auto& o : bo.outs) {
        if (mediated.count(o.chan)) continue;
        if (!locs_up(o.locs, up)) continue;
        for (const auto& in : bo.ins) {
          if (in.chan != o.chan) continue;
          if (!locs_up(in.locs, up)) continue;
          Proc copy1 = rebuild_root(*bs.group, {{o.slot, o.residual}});
          Proc in_res = in.var.empty()
                            ? in.residual
                            : subst_value(in.residual, in.var, o.val);
          Proc copy2 = rebuild_root(*bs.group, {{in.slot, in_res}});
          SilentMove mv;
          mv.replacement = mk_par(copy1, mk_par(copy2, self));
          mv.in_core = in_core;
          out.push_back(std::move(mv));
        }
      }
      return;
    }
    case CNode::K::Located: {
      bool marker = is_marker(c->loc);
      if (!marker && !up.count(c->loc)) return;
      Proc body = denormalize(c->cont);
      CanonState bs = canonicalize(m, body);
      for (const auto& succ : successors_impl(m, bs, up, mediated)) {
        SilentMove mv;
        mv.replacement = mk_located(c->loc, succ.ast);
        mv.in_core = in_core || marker;
        out.push_back(std::move(mv));
      }
      return;
    }
    default:
      return;
  }
}

}  // namespace

std::set<CanonState> successors(const Model& m, const CanonState& s,
                                const UpSet& up) {
  return successors_impl(m, s, up, {});
}

std::set<CanonState> successors_ex(const Model& m, const CanonState& s,
                                   const UpSet& up,
                                   const std::set<std::string>& mediated) {
  return successors_impl(m, s, up, mediated);
}

std::set<Barb> strong_barbs_ex(const Model& m, const CanonState& s,
                               const UpSet& up,
                               const std::set<std::string>& hidden) {
  std::set<Barb> bs;
  OfferSet os = collect_offers(m, s);
  for (const auto& o : os.outs) {
    if (!m.channels.count(o.chan)) continue;  // restricted (canonical #-name)
    if (hidden.count(o.chan)) continue;
    if (!locs_up(o.locs, up)) continue;
    bs.insert(Barb::obs(o.chan, o.val));
  }
  return bs;
}

std::set<Barb> strong_barbs(const Model& m, const CanonState& s,
                            const UpSet& up) {
  return strong_barbs_ex(m, s, up, {});
}

WeakBarbs weak_barbs(const Model& m, const CanonState& s, const UpSet& up,
                     int depth, bool require_saturation) {
  WeakBarbs wb;
  std::set<std::string> seen{s.key};
  std::deque<std::pair<CanonState, int>> q{{s, 0}};
  bool frontier_open = false;
  while (!q.empty()) {
    auto [st, d] = q.front();
    q.pop_front();
    auto bs = strong_barbs(m, st, up);
    wb.barbs.insert(bs.begin(), bs.end());
    ++wb.states;
    if (d == depth) {
      if (!successors(m, st, up).empty()) frontier_open = true;
      continue;
    }
    for (const auto& nxt : successors(m, st, up)) {
      if (seen.insert(nxt.key).second) q.emplace_back(nxt, d + 1);
    }
  }
  wb.saturated = !frontier_open;
  if (require_saturation && !wb.saturated)
    throw BudgetExceeded("weak barb exploration open at depth " +
                         std::to_string(depth));
  return wb;
}

CanonState fire_single(const Model& m, const CanonState& s, const Offer& o,
                       const std::optional<Value>& val) {
  Proc res = o.residual;
  if (!o.is_out && !o.var.empty()) {
    assert(val.has_value());
    res = subst_value(res, o.var, *val);
  }
  return canonicalize(m, rebuild_root(*s.group, {{o.slot, res}}));
}

CanonState fire_pair(const Model& m, const CanonState& s, const Offer& out,
                     const Offer& in) {
  assert(out.slot != in.slot);
  Proc in_res = in.var.empty() ? in.residual
                               : subst_value(in.residual, in.var, out.val);
  return canonicalize(
      m, rebuild_root(*s.group, {{out.slot, out.residual}, {in.slot, in_res}}));
}

UpSet all_up(const Model& m) { return m.locations; }

}  // namespace resil
