#ifndef PLCERT_EXT_HPP
#define PLCERT_EXT_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "plcert/factor.hpp"
#include "plcert/gf.hpp"

namespace plcert {

/// Finite extension L = K[t]/(f) of a table field K, f monic irreducible.
/// Elements are coefficient vectors (length [L:K], low to high) of K-codes.
/// Residue fields of closed points are built this way from the irreducible
/// factor that produced the point, so no root finding in L is needed.
class ExtField {
 public:
  using Elem = std::vector<Fq::Elem>;

  ExtField(Fq base, FqPoly modulus);

  const Fq& base() const { return base_; }
  const FqPoly& modulus() const { return mod_; }
  unsigned degree() const { return deg_; }

  Elem zero() const { return Elem(deg_, 0); }
  Elem one() const {
    Elem e(deg_, 0);
    e[0] = base_.one();
    return e;
  }
  /// Class of t.
  Elem gen() const;
  Elem from_base(Fq::Elem a) const {
    Elem e(deg_, 0);
    e[0] = a;
    return e;
  }
  Elem from_int(std::int64_t v) const { return from_base(base_.from_int(v)); }
  bool is_zero(const Elem& a) const {
    for (auto v : a)
      if (v != 0) return false;
    return true;
  }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  /// True when a lies in K (all higher coordinates vanish).
  bool in_base(const Elem& a) const {
    for (unsigned i = 1; i < deg_; ++i)
      if (a[i] != 0) return false;
    return true;
  }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, Fq::Elem s) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^(|K|), the K-linear Frobenius generating Gal(L/K).
  Elem frobenius(const Elem& a) const { return pow(a, base_.order()); }
  Elem random(Rng& rng) const;

  bool same_as(const ExtField& o) const {
    return base_.same_as(o.base_) && upoly::equal(base_, mod_, o.mod_);
  }

 private:
  Fq base_;
  FqPoly mod_;
  unsigned deg_;
  bool prime_base_;
  std::uint32_t p_;
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

}  // namespace plcert

#endif  // PLCERT_EXT_HPP
