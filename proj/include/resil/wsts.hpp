#ifndef RESIL_WSTS_HPP_
#define RESIL_WSTS_HPP_

#include <functional>
#include <optional>

#include "resil/order.hpp"

namespace resil {

struct WstsStats {
  long long basis_insertions = 0;
  long long expanded = 0;
  int iterations = 0;
  long long peak_basis = 0;
};

// A transition system packaged with a wqo, a successor function and a
// per-state effective pred-basis (finite basis of up(Pred(up(s)))).
struct Wsts {
  QO order;
  OrdElem initial;
  std::function<std::vector<OrdElem>(const OrdElem&)> succ;
  std::function<std::vector<OrdElem>(const OrdElem&)> pred_basis;
  bool has_downward_reflexive_simulation = false;
  bool upward_simulation_validated = false;
  long long iter_cap = 1000000;
};

long long default_iter_cap();  // RESILCHK_ITER_CAP env override

struct WVerdict {
  bool holds = false;
  std::vector<OrdElem> witness;  // replayable trace (positive verdicts)
  WstsStats stats;
  std::string note;
};

// Finite basis of up(Pred*(up(target))), computed as the limit of the
// backward saturation chain. Termination is guaranteed by the wqo; the
// iteration cap is a safety valve only. When `levels` is supplied it receives
// the cumulative chain K_0 subseteq K_1 subseteq ... for witness guidance.
Basis pred_star_basis(const Wsts& w, const Basis& target, WstsStats* stats,
                      std::vector<Basis>* levels = nullptr);

// Covering: is some t' with t <= t' reachable from s?
WVerdict covering(const Wsts& w, const OrdElem& s, const OrdElem& t);
// Covering into an upward-closed target set given by its basis.
WVerdict covering_basis(const Wsts& w, const OrdElem& s, const Basis& target);

// Antichain of minimal reachable states (requires downward reflexive
// simulation for completeness of the skip rule).
Basis succ_star_basis(const Wsts& w, const OrdElem& s, WstsStats* stats,
                      std::map<std::string, OrdElem>* parent = nullptr,
                      std::map<std::string, std::string>* parent_key = nullptr);

// Subcovering: is some t' with t' <= t reachable from s?
WVerdict subcovering(const Wsts& w, const OrdElem& s, const OrdElem& t);

struct UpSimCounterexample {
  OrdElem s, s_next, t;
};
struct UpSimReport {
  long long samples = 0;
  std::vector<UpSimCounterexample> counterexamples;
  bool validated() const { return counterexamples.empty(); }
};

// Bounded empirical validation of weak upward simulation: samples triples
// (s, s', t) with s -> s' and s <= t from the reachable pool and searches
// t ->* t' with s' <= t' within `depth`.
UpSimReport check_upward_simulation(const Wsts& w, long long samples, int depth,
                                    unsigned seed, int pool_cap = 2000);

// Explicit-state BFS oracles (used by the decider-agreement suites).
bool oracle_covering(const Wsts& w, const OrdElem& s, const OrdElem& t,
                     long long state_cap);
bool oracle_subcovering(const Wsts& w, const OrdElem& s, const OrdElem& t,
                        long long state_cap);

// Replays a witness trace through succ; returns false on a broken step.
bool replay_trace(const Wsts& w, const std::vector<OrdElem>& trace);

}  // namespace resil

#endif  // RESIL_WSTS_HPP_
