#ifndef PLCERT_UNIPOLY_HPP
#define PLCERT_UNIPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace plcert {

/// Dense univariate polynomial, coefficients low to high. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
template <class F>
struct UniPoly {
  using Elem = typename F::Elem;
  std::vector<Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Elem& lead() const { return c.back(); }
};

namespace upoly {

template <class F>
void trim(const F& f, UniPoly<F>& a) {
  while (!a.c.empty() && f.is_zero(a.c.back())) a.c.pop_back();
}

template <class F>
UniPoly<F> make(const F& f, std::vector<typename F::Elem> c) {
  UniPoly<F> a{std::move(c)};
  trim(f, a);
  return a;
}

template <class F>
UniPoly<F> constant(const F& f, typename F::Elem v) {
  return make(f, {v});
}

/// The monomial x^n.
template <class F>
UniPoly<F> monomial(const F& f, int n, typename F::Elem coef) {
  UniPoly<F> a;
  a.c.assign(n + 1, f.zero());
  a.c[n] = coef;
  trim(f, a);
  return a;
}

template <class F>
UniPoly<F> x_power(const F& f, int n) {
  return monomial(f, n, f.one());
}

template <class F>
bool equal(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  if (a.c.size() != b.c.size()) return false;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (!f.eq(a.c[i], b.c[i])) return false;
  return true;
}

template <class F>
UniPoly<F> add(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  UniPoly<F> r;
  r.c.resize(std::max(a.c.size(), b.c.size()), f.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f.add(r.c[i], b.c[i]);
  trim(f, r);
  return r;
}

template <class F>
UniPoly<F> sub(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  UniPoly<F> r;
  r.c.resize(std::max(a.c.size(), b.c.size()), f.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f.sub(r.c[i], b.c[i]);
  trim(f, r);
  return r;
}

template <class F>
UniPoly<F> scale(const F& f, const UniPoly<F>& a, const typename F::Elem& s) {
  if (f.is_zero(s)) return {};
  UniPoly<F> r = a;
  for (auto& x : r.c) x = f.mul(x, s);
  trim(f, r);
  return r;
}

template <class F>
UniPoly<F> mul(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  UniPoly<F> r;
  r.c.assign(a.c.size() + b.c.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (f.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
  }
  trim(f, r);
  return r;
}

/// Quotient and remainder; b must be nonzero.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divmod(const F& f, const UniPoly<F>& a,
                                         const UniPoly<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  UniPoly<F> r = a;
  const int db = b.degree();
  if (r.degree() < db) return {UniPoly<F>{}, r};
  UniPoly<F> q;
  q.c.assign(r.degree() - db + 1, f.zero());
  const auto inv_lead = f.inv(b.lead());
  while (!r.is_zero() && r.degree() >= db) {
    const int shift = r.degree() - db;
    const auto coef = f.mul(r.lead(), inv_lead);
    q.c[shift] = coef;
    for (int i = 0; i <= db; ++i)
      r.c[shift + i] = f.sub(r.c[shift + i], f.mul(coef, b.c[i]));
    trim(f, r);
  }
  trim(f, q);
  return {q, r};
}

template <class F>
UniPoly<F> rem(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  return divmod(f, a, b).second;
}

/// Exact quotient; throws when b does not divide a.
template <class F>
UniPoly<F> exact_div(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  auto [q, r] = divmod(f, a, b);
  if (!r.is_zero()) throw std::runtime_error("polynomial division is not exact");
  return q;
}

template <class F>
UniPoly<F> monic(const F& f, const UniPoly<F>& a) {
  if (a.is_zero()) return a;
  return scale(f, a, f.inv(a.lead()));
}

/// Monic gcd (zero if both inputs are zero).
template <class F>
UniPoly<F> gcd(const F& f, UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    auto r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

template <class F>
UniPoly<F> derivative(const F& f, const UniPoly<F>& a) {
  UniPoly<F> r;
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = f.mul(f.from_int(static_cast<std::int64_t>(i)), a.c[i]);
  trim(f, r);
  return r;
}

template <class F>
typename F::Elem eval(const F& f, const UniPoly<F>& a, const typename F::Elem& x) {
  typename F::Elem acc = f.zero();
  for (std::size_t i = a.c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a.c[i]);
  return acc;
}

template <class F>
UniPoly<F> mulmod(const F& f, const UniPoly<F>& a, const UniPoly<F>& b,
                  const UniPoly<F>& m) {
  return rem(f, mul(f, a, b), m);
}

template <class F, class Int>
UniPoly<F> powmod(const F& f, UniPoly<F> base, Int e, const UniPoly<F>& m) {
  UniPoly<F> r = rem(f, constant(f, f.one()), m);
  base = rem(f, base, m);
  while (e > 0) {
    if (e & 1) r = mulmod(f, r, base, m);
    e >>= 1;
    if (e > 0) base = mulmod(f, base, base, m);
  }
  return r;
}

}  // namespace upoly
}  // namespace plcert

#endif  // PLCERT_UNIPOLY_HPP
