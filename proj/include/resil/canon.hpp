#ifndef RESIL_CANON_HPP_
#define RESIL_CANON_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resil/model.hpp"
#include "resil/term.hpp"

namespace resil {

// Normalized process structure. A group is a restriction scope: its `nus`
// bind channel names in the parallel components `comps`. Components are never
// Inert, Par or Restrict (flattened/extruded away), and top-level closed
// groups contain no Call or resolvable Match components (unfolded/resolved).
struct CNode;
using CN = std::shared_ptr<const CNode>;

struct CGroup {
  std::vector<std::string> nus;
  std::vector<CN> comps;
};

struct CNode {
  enum class K { Out, In, Choice, Match, Repl, Located, Call, Hole };
  K k = K::Out;
  std::string chan;   // Out/In: resolved channel name
  std::optional<Expr> chan_index;  // open family index, unresolved under binders
  Expr payload;       // Out
  std::string var;    // In ("" = unit receive)
  CGroup cont;        // Out/In continuation, Repl body, Located body, Match body
  std::vector<CN> branches;  // Choice
  std::string loc;           // Located ("@"-prefixed = provenance marker)
  Expr m1, m2;
  MatchOp mop = MatchOp::Eq;
  std::string call_name;
  std::vector<Expr> call_args;
  std::map<std::string, std::string> chan_subst;  // Call closure over channels
  int hole = 0;
};

// A canonical state: structurally congruent closed terms map to the same key.
struct CanonState {
  std::shared_ptr<const CGroup> group;
  Proc ast;
  std::string key;

  bool operator==(const CanonState& o) const { return key == o.key; }
  bool operator!=(const CanonState& o) const { return key != o.key; }
  bool operator<(const CanonState& o) const { return key < o.key; }
};

// Canonicalizes a closed process term (throws ModelError("OpenTerm") if free
// variables remain). Congruent inputs map to equal keys; idempotent.
CanonState canonicalize(const Model& m, const Proc& p);

// As above but permits holes (context terms). Hole components take no part
// in reductions.
CanonState canonicalize_context(const Model& m, const Proc& p);

// Evaluates a closed expression. Subtraction is monus (floored at zero, the
// floor event is counted). Throws ModelError("DomainEscape") on non-integer
// arithmetic and ModelError("OpenTerm") if the expression is open.
Value eval_expr(const Expr& e);

// Replaces hole i by fillers[i-1]; a single filler is broadcast to all holes.
// Throws HoleCountMismatch / CaptureViolation.
Proc plug(const Model& m, const Proc& context, const std::vector<Proc>& fillers);

// Context composition: outer holes replaced by the inner context; the
// composite's holes are the inner context's holes.
Proc plug_context(const Model& m, const Proc& outer, const Proc& inner);

// Rebuilds an AST from a normalized group (used by the reduction engine).
Proc denormalize(const CGroup& g);
Proc denormalize_comp(const CN& c);

}  // namespace resil

#endif  // RESIL_CANON_HPP_
