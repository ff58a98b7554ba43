#ifndef RESIL_ORDER_HPP_
#define RESIL_ORDER_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace resil {

// Element of a quasi-ordered carrier. The combinator tree of the order
// interprets the shape: Atom for EqualityOn, Vec for DicksonVec, Word for
// Subword, Bag for BagEmbed (symbol -> multiplicity), Prod for Product.
struct OrdElem {
  enum class K { Atom, Vec, Word, Bag, Prod };
  K k = K::Atom;
  std::string atom;
  std::vector<long long> vec;
  std::vector<std::string> word;
  std::map<std::string, long long> bag;
  std::vector<OrdElem> prod;

  static OrdElem of_atom(std::string s) {
    OrdElem e;
    e.k = K::Atom;
    e.atom = std::move(s);
    return e;
  }
  static OrdElem of_vec(std::vector<long long> v) {
    OrdElem e;
    e.k = K::Vec;
    e.vec = std::move(v);
    return e;
  }
  static OrdElem of_word(std::vector<std::string> w) {
    OrdElem e;
    e.k = K::Word;
    e.word = std::move(w);
    return e;
  }
  static OrdElem of_bag(std::map<std::string, long long> b) {
    OrdElem e;
    e.k = K::Bag;
    for (auto& [s, n] : b)
      if (n > 0) e.bag[s] = n;
    return e;
  }
  static OrdElem of_prod(std::vector<OrdElem> xs) {
    OrdElem e;
    e.k = K::Prod;
    e.prod = std::move(xs);
    return e;
  }

  std::string str() const;
  int cmp(const OrdElem& o) const;  // total order on representations
  bool operator==(const OrdElem& o) const { return cmp(o) == 0; }
  bool operator<(const OrdElem& o) const { return cmp(o) < 0; }
};

// Well-quasi-order combinators: EqualityOn (finite carriers), DicksonVec
// (pointwise <= on fixed-dimension natural vectors), BagEmbed (multiset
// inclusion over a finite alphabet), Subword (scattered subsequence over a
// finite alphabet), Product (pointwise).
struct QuasiOrder;
using QO = std::shared_ptr<const QuasiOrder>;

struct QuasiOrder {
  enum class K { EqualityOn, DicksonVec, BagEmbed, Subword, Product };
  K k = K::EqualityOn;
  int dim = 0;                     // DicksonVec
  std::vector<std::string> sigma;  // BagEmbed/Subword alphabet (informational)
  std::vector<QO> parts;           // Product

  static QO equality();
  static QO dickson(int dim);
  static QO bag_embed(std::vector<std::string> sigma);
  static QO subword(std::vector<std::string> sigma);
  static QO product(std::vector<QO> parts);

  // a <= b in this order; throws CarrierMismatch on shape violations.
  bool leq(const OrdElem& a, const OrdElem& b) const;
  std::string describe() const;
};

// Finite antichain representing the upward-closed set U{ up(x) : x in basis }.
struct Basis {
  std::vector<OrdElem> elems;  // pairwise incomparable, sorted by repr
  std::string str() const;
};

// Antichain of the <=-minimal elements of xs; ties broken toward the least
// representation.
Basis minimize(const QO& ord, std::vector<OrdElem> xs);
bool member_up(const QO& ord, const Basis& b, const OrdElem& x);
Basis union_bases(const QO& ord, const Basis& b1, const Basis& b2);
// up(b1) contains up(b2)?
bool includes(const QO& ord, const Basis& b1, const Basis& b2);

}  // namespace resil

#endif  // RESIL_ORDER_HPP_
