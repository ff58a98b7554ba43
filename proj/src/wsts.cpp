#include "resil/wsts.hpp"

#include <cstdlib>
#include <deque>
#include <random>
#include <set>

#include "resil/diag.hpp"

namespace resil {

long long default_iter_cap() {
  if (const char* s = std::getenv("RESILCHK_ITER_CAP")) {
    long long v = std::atoll(s);
    if (v > 0) return v;
  }
  return 1000000;
}

Basis pred_star_basis(const Wsts& w, const Basis& target, WstsStats* stats,
                      std::vector<Basis>* levels) {
  WstsStats local;
  WstsStats& st = stats ? *stats : local;
  Basis k = minimize(w.order, target.elems);
  if (levels) levels->push_back(k);
  for (;;) {
    ++st.iterations;
    std::vector<OrdElem> next = k.elems;
    for (const auto& m : k.elems) {
      auto pb = w.pred_basis(m);
      st.basis_insertions += (long long)pb.size();
      if (st.basis_insertions > w.iter_cap)
        throw IterationCap("pred_star_basis at " +
                           std::to_string(st.basis_insertions) +
                           " insertions");
      next.insert(next.end(), pb.begin(), pb.end());
    }
    Basis k2 = minimize(w.order, std::move(next));
    st.peak_basis = std::max<long long>(st.peak_basis, (long long)k2.elems.size());
    // the chain only grows upward
    if (!includes(w.order, k2, k))
      throw ModelError("BadParams", "pred basis chain not monotone");
    if (includes(w.order, k, k2)) return k;
    if (levels) levels->push_back(k2);
    k = std::move(k2);
  }
}

namespace {

// Guided forward reconstruction of a covering witness: descend through the
// cumulative backward chain (the level of a state can only shrink along a
// well-chosen path).
std::vector<OrdElem> reconstruct_witness(const Wsts& w, const OrdElem& s,
                                         const std::vector<Basis>& levels,
                                         const Basis& target,
                                         long long cap) {
  auto level_of = [&](const OrdElem& x) -> int {
    for (int i = 0; i < (int)levels.size(); ++i)
      if (member_up(w.order, levels[i], x)) return i;
    return -1;  // not in the limit: unreachable territory
  };
  std::vector<OrdElem> trace{s};
  OrdElem cur = s;
  int lvl = level_of(s);
  long long budget = cap;
  while (lvl > 0) {
    // bounded BFS for a strictly lower-level state
    std::deque<std::vector<OrdElem>> q{{cur}};
    std::set<std::string> seen{cur.str()};
    std::vector<OrdElem> found;
    while (!q.empty() && budget > 0) {
      auto path = q.front();
      q.pop_front();
      for (const auto& nxt : w.succ(path.back())) {
        if (!seen.insert(nxt.str()).second) continue;
        --budget;
        int l2 = level_of(nxt);
        auto p2 = path;
        p2.push_back(nxt);
        if (l2 >= 0 && l2 < lvl) {
          found = p2;
          break;
        }
        q.push_back(std::move(p2));
      }
      if (!found.empty()) break;
    }
    if (found.empty()) return {};  // guidance failed within budget
    trace.insert(trace.end(), found.begin() + 1, found.end());
    cur = trace.back();
    lvl = level_of(cur);
  }
  return trace;
}

}  // namespace

WVerdict covering_basis(const Wsts& w, const OrdElem& s, const Basis& target) {
  WVerdict v;
  std::vector<Basis> levels;
  Basis limit = pred_star_basis(w, target, &v.stats, &levels);
  v.holds = member_up(w.order, limit, s);
  if (v.holds) {
    v.witness = reconstruct_witness(w, s, levels, target, w.iter_cap);
    if (v.witness.empty())
      v.note = "witness reconstruction exhausted its budget";
  }
  return v;
}

WVerdict covering(const Wsts& w, const OrdElem& s, const OrdElem& t) {
  Basis target;
  target.elems = {t};
  return covering_basis(w, s, target);
}

Basis succ_star_basis(const Wsts& w, const OrdElem& s, WstsStats* stats,
                      std::map<std::string, OrdElem>* parent,
                      std::map<std::string, std::string>* parent_key) {
  WstsStats local;
  WstsStats& st = stats ? *stats : local;
  Basis b;
  std::deque<OrdElem> q{s};
  std::set<std::string> enqueued{s.str()};
  while (!q.empty()) {
    OrdElem x = q.front();
    q.pop_front();
    if (member_up(w.order, b, x)) continue;  // already in the upward closure
    b = union_bases(w.order, b, Basis{{x}});
    st.peak_basis = std::max<long long>(st.peak_basis, (long long)b.elems.size());
    ++st.expanded;
    if (st.expanded > w.iter_cap)
      throw IterationCap("succ_star_basis expansion");
    for (const auto& y : w.succ(x)) {
      std::string yk = y.str();
      if (enqueued.insert(yk).second) {
        if (parent) parent->emplace(yk, x);
        if (parent_key) parent_key->emplace(yk, x.str());
        q.push_back(y);
      }
    }
  }
  return b;
}

WVerdict subcovering(const Wsts& w, const OrdElem& s, const OrdElem& t) {
  if (!w.has_downward_reflexive_simulation)
    throw PreconditionViolated(
        "subcovering requires downward reflexive simulation");
  WVerdict v;
  std::map<std::string, OrdElem> parent;
  Basis b = succ_star_basis(w, s, &v.stats, &parent);
  std::optional<OrdElem> hit;
  for (const auto& m : b.elems) {
    if (w.order->leq(m, t)) {
      hit = m;
      break;
    }
  }
  v.holds = hit.has_value();
  if (v.holds) {
    // walk the parent chain back to s
    std::vector<OrdElem> rev{*hit};
    std::string cur = hit->str();
    while (cur != s.str()) {
      auto it = parent.find(cur);
      if (it == parent.end()) break;
      rev.push_back(it->second);
      cur = it->second.str();
    }
    v.witness.assign(rev.rbegin(), rev.rend());
  }
  return v;
}

UpSimReport check_upward_simulation(const Wsts& w, long long samples, int depth,
                                    unsigned seed, int pool_cap) {
  UpSimReport rep;
  // reachable pool
  std::vector<OrdElem> pool;
  std::set<std::string> seen;
  std::deque<OrdElem> q{w.initial};
  seen.insert(w.initial.str());
  while (!q.empty() && (int)pool.size() < pool_cap) {
    OrdElem x = q.front();
    q.pop_front();
    pool.push_back(x);
    for (const auto& y : w.succ(x))
      if (seen.insert(y.str()).second) q.push_back(y);
  }
  if (pool.empty()) return rep;
  std::mt19937 rng(seed);
  auto pick = [&](size_t n) { return (size_t)(rng() % n); };
  for (long long i = 0; i < samples; ++i) {
    const OrdElem& s = pool[pick(pool.size())];
    auto sn = w.succ(s);
    if (sn.empty()) continue;
    const OrdElem& s2 = sn[pick(sn.size())];
    // find some t >= s (try a few random probes)
    const OrdElem* t = nullptr;
    for (int probe = 0; probe < 12 && !t; ++probe) {
      const OrdElem& cand = pool[pick(pool.size())];
      if (w.order->leq(s, cand)) t = &cand;
    }
    if (!t) continue;
    ++rep.samples;
    // search t ->* t' with s2 <= t'
    bool ok = false;
    std::set<std::string> vis{t->str()};
    std::deque<std::pair<OrdElem, int>> bfs{{*t, 0}};
    while (!bfs.empty() && !ok) {
      auto [x, d] = bfs.front();
      bfs.pop_front();
      if (w.order->leq(s2, x)) {
        ok = true;
        break;
      }
      if (d == depth) continue;
      for (const auto& y : w.succ(x))
        if (vis.insert(y.str()).second) bfs.emplace_back(y, d + 1);
    }
    if (!ok) rep.counterexamples.push_back({s, s2, *t});
    if ((long long)rep.counterexamples.size() >= 25) break;  // enough evidence
  }
  return rep;
}

namespace {
bool oracle_reach(const Wsts& w, const OrdElem& s,
                  const std::function<bool(const OrdElem&)>& goal,
                  long long cap) {
  std::set<std::string> seen{s.str()};
  std::deque<OrdElem> q{s};
  long long n = 0;
  while (!q.empty()) {
    OrdElem x = q.front();
    q.pop_front();
    if (goal(x)) return true;
    if (++n > cap) throw BudgetExceeded("oracle state cap");
    for (const auto& y : w.succ(x))
      if (seen.insert(y.str()).second) q.push_back(y);
  }
  return false;
}
}  // namespace

bool oracle_covering(const Wsts& w, const OrdElem& s, const OrdElem& t,
                     long long cap) {
  return oracle_reach(
      w, s, [&](const OrdElem& x) { return w.order->leq(t, x); }, cap);
}

bool oracle_subcovering(const Wsts& w, const OrdElem& s, const OrdElem& t,
                        long long cap) {
  return oracle_reach(
      w, s, [&](const OrdElem& x) { return w.order->leq(x, t); }, cap);
}

bool replay_trace(const Wsts& w, const std::vector<OrdElem>& trace) {
  for (size_t i = 0; i + 1 < trace.size(); ++i) {
    bool found = false;
    for (const auto& y : w.succ(trace[i])) {
      if (y == trace[i + 1]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace resil
