#ifndef PLCERT_GF_HPP
#define PLCERT_GF_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace plcert {

using Rng = std::mt19937_64;

/// Uniform draw in [0, n). Plain modulo keeps streams identical across
/// standard libraries (std distributions are implementation-defined).
inline std::uint64_t draw(Rng& rng, std::uint64_t n) { return rng() % n; }

bool is_prime(std::uint64_t n);

/// Finite field F_{p^k} with table-driven arithmetic.
///
/// Elements are encoded as integers in [0, p^k): the code of
/// c_0 + c_1 t + ... + c_{k-1} t^{k-1} is sum c_i p^i, so the prime
/// subfield is embedded as the codes 0..p-1. For k > 1 multiplication
/// goes through discrete log tables and addition through Zech logarithms.
class Fq {
 public:
  using Elem = std::uint32_t;

  Fq() = default;

  /// Builds F_{p^k}. The modulus is a seeded random monic irreducible of
  /// degree k (the polynomial t for k = 1).
  static Fq build(std::uint32_t p, unsigned k, std::uint64_t seed = 0);
  /// Rebuilds a field from a serialized modulus (low to high, monic).
  static Fq from_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return t_->p; }
  unsigned degree() const { return t_->k; }
  std::uint64_t order() const { return t_->q; }
  bool is_prime_field() const { return t_->k == 1; }
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    if (t_->k == 1) {
      Elem s = a + b;
      return s >= t_->p ? s - t_->p : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t qm1 = t_->q - 1;
    std::uint32_t la = t_->log[a], lb = t_->log[b];
    std::uint32_t diff = lb >= la ? lb - la : lb + qm1 - la;
    std::int64_t z = t_->zech[diff];
    if (z < 0) return 0;
    std::uint32_t e = la + static_cast<std::uint32_t>(z);
    if (e >= qm1) e -= qm1;
    return t_->exp[e];
  }
  Elem neg(Elem a) const {
    if (t_->k == 1) return a == 0 ? 0 : t_->p - a;
    return t_->negtab[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (t_->k == 1)
      return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % t_->p);
    if (a == 0 || b == 0) return 0;
    return t_->exp[t_->log[a] + t_->log[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("Fq::inv: zero has no inverse");
    return t_->invtab[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(t_->p);
    if (r < 0) r += t_->p;
    return static_cast<Elem>(r);
  }
  Elem random(Rng& rng) const { return static_cast<Elem>(draw(rng, t_->q)); }
  Elem random_nonzero(Rng& rng) const {
    return static_cast<Elem>(1 + draw(rng, t_->q - 1));
  }
  /// Coordinates over F_p (k residues, low to high).
  std::vector<std::uint32_t> coords(Elem a) const;
  Elem from_coords(std::span<const std::uint32_t> c) const;
  /// Image of the generator t of F_p[t]/(modulus).
  Elem generator() const { return t_->k == 1 ? 0 : static_cast<Elem>(t_->p); }
  /// p-th root (inverse Frobenius).
  Elem pth_root(Elem a) const;

  bool same_as(const Fq& o) const {
    return t_ == o.t_ ||
           (t_->p == o.t_->p && t_->modulus == o.t_->modulus);
  }

 private:
  struct Tables {
    std::uint32_t p = 0;
    unsigned k = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> exp;  // length 2(q-1)
    std::vector<std::uint32_t> log;
    std::vector<std::int64_t> zech;
    std::vector<std::uint32_t> invtab;
    std::vector<std::uint32_t> negtab;
  };
  static Fq make(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::shared_ptr<const Tables> t_;
};

}  // namespace plcert

#endif  // PLCERT_GF_HPP
