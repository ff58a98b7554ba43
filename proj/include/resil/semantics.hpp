#ifndef RESIL_SEMANTICS_HPP_
#define RESIL_SEMANTICS_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resil/canon.hpp"
#include "resil/model.hpp"

namespace resil {

// An observable: an output on an unrestricted channel, or err.
struct Barb {
  bool err = false;
  std::string chan;
  Value val;

  static Barb mk_err() {
    Barb b;
    b.err = true;
    return b;
  }
  static Barb obs(std::string chan, Value v) {
    Barb b;
    b.chan = std::move(chan);
    b.val = std::move(v);
    return b;
  }
  std::string str() const { return err ? "err" : chan + "!" + val.str(); }
  bool operator<(const Barb& o) const {
    if (err != o.err) return err < o.err;
    if (chan != o.chan) return chan < o.chan;
    return val < o.val;
  }
  bool operator==(const Barb& o) const {
    return err == o.err && chan == o.chan && val == o.val;
  }
};

using UpSet = std::set<std::string>;

// An enabled communication prefix of one top-level component. `residual` is
// the component's replacement once the prefix fires (for inputs, before
// substitution of the received value). `locs` are the real locations gating
// the offer; `in_core` marks offers inside a "@" provenance marker.
struct Offer {
  bool is_out = false;
  std::string chan;
  Value val;        // outputs
  std::string var;  // inputs ("" = unit receive)
  Proc residual;
  int slot = -1;
  std::vector<std::string> locs;
  bool in_core = false;
};

struct OfferSet {
  std::vector<Offer> outs;
  std::vector<Offer> ins;
};

// Collects the prefix offers of every top-level component (location gating is
// applied by the callers). Throws DomainEscape when an output payload falls
// outside the declared domain.
OfferSet collect_offers(const Model& m, const CanonState& s);

// One-step reducts under the plain calculus (every declared location up).
std::set<CanonState> successors(const Model& m, const CanonState& s,
                                const UpSet& up);
// As above, but rendezvous on `mediated` channels is suppressed (the coupled
// layer turns those prefixes into buffer moves).
std::set<CanonState> successors_ex(const Model& m, const CanonState& s,
                                   const UpSet& up,
                                   const std::set<std::string>& mediated);

std::set<Barb> strong_barbs(const Model& m, const CanonState& s,
                            const UpSet& up);
std::set<Barb> strong_barbs_ex(const Model& m, const CanonState& s,
                               const UpSet& up,
                               const std::set<std::string>& hidden);

struct WeakBarbs {
  std::set<Barb> barbs;
  bool saturated = true;
  long long states = 0;
};

// Union of strong barbs over all states reachable within `depth` steps.
// Throws BudgetExceeded when saturation is required but the frontier is still
// nonempty at the bound.
WeakBarbs weak_barbs(const Model& m, const CanonState& s, const UpSet& up,
                     int depth, bool require_saturation = false);

// Fires a lone offer (mediated-channel send/receive): for inputs, `val` is
// the dequeued value substituted into the continuation.
CanonState fire_single(const Model& m, const CanonState& s, const Offer& o,
                       const std::optional<Value>& val);
// Fires a rendezvous between two offers of distinct slots.
CanonState fire_pair(const Model& m, const CanonState& s, const Offer& out,
                     const Offer& in);

UpSet all_up(const Model& m);

}  // namespace resil

#endif  // RESIL_SEMANTICS_HPP_
