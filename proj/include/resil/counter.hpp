#ifndef RESIL_COUNTER_HPP_
#define RESIL_COUNTER_HPP_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "resil/wsts.hpp"

namespace resil {

// One transition rule of a counter system with an optional message component
// (a bag or a fifo word over a finite alphabet). Counter effects are applied
// on the pre-state: first the additive deltas, then the assignments (which
// read pre-state values). Assignments realise the copy-style round reset
// n_j := p - 1 (monus).
struct CounterRule {
  std::string name;
  std::string from, to;  // control points
  std::vector<std::pair<int, long long>> guards_ge;  // counter i >= k
  std::vector<std::pair<int, long long>> guards_le;  // counter i <= k
  std::vector<std::pair<int, long long>> add;        // counter i += d
  bool monus = false;  // negative post-values floor at 0 instead of blocking
  struct Assign {
    int dst = 0;
    bool from_const = false;
    long long cval = 0;   // dst := cval
    int src = 0;          // or dst := max(src + delta, 0)
    long long delta = 0;
  };
  std::vector<Assign> assigns;
  std::optional<std::string> bag_add;   // enqueue into the bag
  std::optional<std::string> bag_take;  // remove one occurrence (receive/drop)
  std::optional<std::string> word_append;
  std::optional<std::string> word_take_head;  // dequeue, head must match
  std::optional<std::string> word_drop;       // lose one occurrence anywhere
};

// States are Prod[Atom control, Vec counters (, Bag) (, Word)].
struct CounterSystem {
  std::vector<std::string> controls;
  int dim = 0;
  bool has_bag = false;
  bool has_word = false;
  std::vector<CounterRule> rules;
  OrdElem initial;

  OrdElem make_state(const std::string& ctrl, std::vector<long long> counters,
                     std::map<std::string, long long> bag = {},
                     std::vector<std::string> word = {}) const;

  std::vector<OrdElem> succ(const OrdElem& s) const;
  // Finite basis of up(Pred(up(t))), assembled from the per-rule symbolic
  // minimal-predecessor computations.
  std::vector<OrdElem> pred_basis(const OrdElem& t) const;

  QO order() const;
  Wsts to_wsts(bool downward_reflexive = false) const;

  // Brute-force validation of the symbolic pred-basis on a bounded box:
  // checks up(pb(t)) == up(Pred(up(t))) pointwise over the box. Returns the
  // number of (target, point) pairs checked; throws ModelError on mismatch.
  long long validate_pred_basis(long long counter_bound, int bag_bound,
                                int word_bound, int targets,
                                unsigned seed) const;
};

// Seeded generator of monotone counter systems for the decider-vs-oracle
// agreement suite: control <= 5, dimension <= 3, values bounded by guarded
// single-increment rules so the explicit oracle saturates. When `with_drops`
// is set every rule touches at most one counter by +-1, which gives downward
// reflexive simulation, and drop rules are added.
CounterSystem random_counter_system(std::mt19937& rng, bool with_drops);

}  // namespace resil

#endif  // RESIL_COUNTER_HPP_
