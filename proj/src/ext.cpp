#include "plcert/ext.hpp"

#include <stdexcept>

namespace plcert {

ExtField::ExtField(Fq base, FqPoly modulus)
    : base_(std::move(base)), mod_(upoly::monic(base_, modulus)) {
  if (mod_.degree() < 1) throw std::invalid_argument("ExtField: modulus must have degree >= 1");
  deg_ = static_cast<unsigned>(mod_.degree());
  prime_base_ = base_.is_prime_field();
  p_ = base_.characteristic();
}

ExtField::Elem ExtField::gen() const {
  if (deg_ == 1) return from_base(base_.neg(mod_.c[0]));
  Elem e(deg_, 0);
  e[1] = base_.one();
  return e;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r(deg_);
  for (unsigned i = 0; i < deg_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r(deg_);
  for (unsigned i = 0; i < deg_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::neg(const Elem& a) const {
  Elem r(deg_);
  for (unsigned i = 0; i < deg_; ++i) r[i] = base_.neg(a[i]);
  return r;
}

ExtField::Elem ExtField::scale(const Elem& a, Fq::Elem s) const {
  Elem r(deg_);
  for (unsigned i = 0; i < deg_; ++i) r[i] = base_.mul(a[i], s);
  return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  const unsigned n = deg_;
  if (n == 1) return Elem{base_.mul(a[0], b[0])};
  if (prime_base_ && p_ < 65536) {
    const std::uint64_t p = p_;
    std::vector<std::uint64_t> r(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      const std::uint64_t ai = a[i];
      for (unsigned j = 0; j < n; ++j) r[i + j] += ai * b[j];
    }
    // Keep accumulators below 2^63: each slot gets at most n products
    // of size < p^2 < 2^32 before reduction.
    for (unsigned i = 2 * n - 1; i-- > n;) {
      const std::uint64_t coef = r[i] % p;
      if (coef == 0) continue;
      const unsigned off = i - n;
      for (unsigned k = 0; k < n; ++k) {
        const std::uint64_t fk = mod_.c[k];
        if (fk) r[off + k] += coef * (p - fk);
      }
    }
    Elem out(n);
    for (unsigned i = 0; i < n; ++i) out[i] = static_cast<Fq::Elem>(r[i] % p);
    return out;
  }
  std::vector<Fq::Elem> r(2 * n - 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) r[i + j] = base_.add(r[i + j], base_.mul(a[i], b[j]));
  }
  for (unsigned i = 2 * n - 1; i-- > n;) {
    const Fq::Elem coef = r[i];
    if (coef == 0) continue;
    const unsigned off = i - n;
    for (unsigned k = 0; k < n; ++k)
      r[off + k] = base_.sub(r[off + k], base_.mul(coef, mod_.c[k]));
  }
  r.resize(n);
  return r;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("ExtField::inv: zero has no inverse");
  // Extended Euclid: s*a + t*f = 1 over K.
  FqPoly r0 = mod_, r1 = upoly::make(base_, a);
  FqPoly s0, s1 = upoly::constant(base_, base_.one());
  while (!r1.is_zero()) {
    auto [q, r] = upoly::divmod(base_, r0, r1);
    FqPoly s = upoly::sub(base_, s0, upoly::mul(base_, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw std::runtime_error("ExtField::inv: modulus is not irreducible");
  FqPoly s = upoly::scale(base_, s0, base_.inv(r0.c[0]));
  Elem out(deg_, 0);
  for (std::size_t i = 0; i < s.c.size(); ++i) out[i] = s.c[i];
  return out;
}

ExtField::Elem ExtField::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

ExtField::Elem ExtField::random(Rng& rng) const {
  Elem r(deg_);
  for (auto& v : r) v = base_.random(rng);
  return r;
}

}  // namespace plcert
