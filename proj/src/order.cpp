#include "resil/order.hpp"

#include <algorithm>

#include "resil/diag.hpp"

namespace resil {

std::string OrdElem::str() const {
  switch (k) {
    case K::Atom:
      return atom;
    case K::Vec: {
      std::string s = "(";
      for (size_t i = 0; i < vec.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(vec[i]);
      }
      return s + ")";
    }
    case K::Word: {
      std::string s = "<";
      for (size_t i = 0; i < word.size(); ++i) {
        if (i) s += " ";
        s += word[i];
      }
      return s + ">";
    }
    case K::Bag: {
      std::string s = "{";
      bool first = true;
      for (const auto& [sym, n] : bag) {
        if (!first) s += ",";
        first = false;
        s += sym + ":" + std::to_string(n);
      }
      return s + "}";
    }
    case K::Prod: {
      std::string s = "[";
      for (size_t i = 0; i < prod.size(); ++i) {
        if (i) s += ";";
        s += prod[i].str();
      }
      return s + "]";
    }
  }
  return "?";
}

int OrdElem::cmp(const OrdElem& o) const {
  if (k != o.k) return (int)k < (int)o.k ? -1 : 1;
  auto cmp_vec = [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return -1;
      if (b[i] < a[i]) return 1;
    }
    return 0;
  };
  switch (k) {
    case K::Atom:
      return atom < o.atom ? -1 : atom == o.atom ? 0 : 1;
    case K::Vec:
      return cmp_vec(vec, o.vec);
    case K::Word:
      return cmp_vec(word, o.word);
    case K::Bag: {
      if (bag.size() != o.bag.size()) return bag.size() < o.bag.size() ? -1 : 1;
      auto it1 = bag.begin();
      auto it2 = o.bag.begin();
      for (; it1 != bag.end(); ++it1, ++it2) {
        if (*it1 < *it2) return -1;
        if (*it2 < *it1) return 1;
      }
      return 0;
    }
    case K::Prod: {
      if (prod.size() != o.prod.size())
        return prod.size() < o.prod.size() ? -1 : 1;
      for (size_t i = 0; i < prod.size(); ++i) {
        int c = prod[i].cmp(o.prod[i]);
        if (c) return c;
      }
      return 0;
    }
  }
  return 0;
}

QO QuasiOrder::equality() {
  auto q = std::make_shared<QuasiOrder>();
  q->k = K::EqualityOn;
  return q;
}
QO QuasiOrder::dickson(int dim) {
  auto q = std::make_shared<QuasiOrder>();
  q->k = K::DicksonVec;
  q->dim = dim;
  return q;
}
QO QuasiOrder::bag_embed(std::vector<std::string> sigma) {
  auto q = std::make_shared<QuasiOrder>();
  q->k = K::BagEmbed;
  q->sigma = std::move(sigma);
  return q;
}
QO QuasiOrder::subword(std::vector<std::string> sigma) {
  auto q = std::make_shared<QuasiOrder>();
  q->k = K::Subword;
  q->sigma = std::move(sigma);
  return q;
}
QO QuasiOrder::product(std::vector<QO> parts) {
  auto q = std::make_shared<QuasiOrder>();
  q->k = K::Product;
  q->parts = std::move(parts);
  return q;
}

bool QuasiOrder::leq(const OrdElem& a, const OrdElem& b) const {
  switch (k) {
    case K::EqualityOn:
      if (a.k != OrdElem::K::Atom || b.k != OrdElem::K::Atom)
        throw ModelError("CarrierMismatch", "EqualityOn expects atoms");
      return a.atom == b.atom;
    case K::DicksonVec:
      if (a.k != OrdElem::K::Vec || b.k != OrdElem::K::Vec ||
          (int)a.vec.size() != dim || (int)b.vec.size() != dim)
        throw ModelError("CarrierMismatch",
                         "DicksonVec(" + std::to_string(dim) + ")");
      for (int i = 0; i < dim; ++i)
        if (a.vec[i] > b.vec[i]) return false;
      return true;
    case K::BagEmbed: {
      if (a.k != OrdElem::K::Bag || b.k != OrdElem::K::Bag)
        throw ModelError("CarrierMismatch", "BagEmbed expects bags");
      for (const auto& [sym, n] : a.bag) {
        auto it = b.bag.find(sym);
        if (it == b.bag.end() || it->second < n) return false;
      }
      return true;
    }
    case K::Subword: {
      if (a.k != OrdElem::K::Word || b.k != OrdElem::K::Word)
        throw ModelError("CarrierMismatch", "Subword expects words");
      size_t i = 0;
      for (size_t j = 0; j < b.word.size() && i < a.word.size(); ++j)
        if (a.word[i] == b.word[j]) ++i;
      return i == a.word.size();
    }
    case K::Product: {
      if (a.k != OrdElem::K::Prod || b.k != OrdElem::K::Prod ||
          a.prod.size() != parts.size() || b.prod.size() != parts.size())
        throw ModelError("CarrierMismatch", "Product arity");
      for (size_t i = 0; i < parts.size(); ++i)
        if (!parts[i]->leq(a.prod[i], b.prod[i])) return false;
      return true;
    }
  }
  return false;
}

std::string QuasiOrder::describe() const {
  switch (k) {
    case K::EqualityOn:
      return "EqualityOn";
    case K::DicksonVec:
      return "DicksonVec(" + std::to_string(dim) + ")";
    case K::BagEmbed:
      return "BagEmbed";
    case K::Subword:
      return "Subword";
    case K::Product: {
      std::string s = "Product(";
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i]->describe();
      }
      return s + ")";
    }
  }
  return "?";
}

std::string Basis::str() const {
  std::string s = "{";
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ", ";
    s += elems[i].str();
  }
  return s + "}";
}

Basis minimize(const QO& ord, std::vector<OrdElem> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Basis out;
  for (const auto& x : xs) {
    bool dominated = false;
    for (const auto& kept : out.elems) {
      if (ord->leq(kept, x)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    // drop previously kept elements strictly above x
    std::vector<OrdElem> kept;
    for (auto& e : out.elems)
      if (!ord->leq(x, e)) kept.push_back(std::move(e));
    kept.push_back(x);
    out.elems = std::move(kept);
  }
  std::sort(out.elems.begin(), out.elems.end());
  return out;
}

bool member_up(const QO& ord, const Basis& b, const OrdElem& x) {
  for (const auto& m : b.elems)
    if (ord->leq(m, x)) return true;
  return false;
}

Basis union_bases(const QO& ord, const Basis& b1, const Basis& b2) {
  std::vector<OrdElem> xs = b1.elems;
  xs.insert(xs.end(), b2.elems.begin(), b2.elems.end());
  return minimize(ord, std::move(xs));
}

bool includes(const QO& ord, const Basis& b1, const Basis& b2) {
  for (const auto& m : b2.elems)
    if (!member_up(ord, b1, m)) return false;
  return true;
}

}  // namespace resil
