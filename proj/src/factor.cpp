#include "plcert/factor.hpp"

#include <algorithm>
#include <map>

namespace plcert {

using namespace upoly;

FqPoly frobenius_power(const Fq& f, const FqPoly& m, unsigned n) {
  FqPoly x = rem(f, x_power(f, 1), m);
  for (unsigned i = 0; i < n; ++i) x = powmod(f, x, f.order(), m);
  return x;
}

namespace {

// f(x) = g(x^p): return g with coefficients replaced by their p-th roots.
FqPoly pth_root_poly(const Fq& f, const FqPoly& a) {
  const unsigned p = f.characteristic();
  FqPoly r;
  r.c.assign(a.degree() / p + 1, f.zero());
  for (int i = 0; i <= a.degree(); i += p) r.c[i / p] = f.pth_root(a.c[i]);
  trim(f, r);
  return r;
}

void sqf_rec(const Fq& f, const FqPoly& a, int mult, std::map<int, FqPoly>& out) {
  if (a.degree() <= 0) return;
  FqPoly da = derivative(f, a);
  if (da.is_zero()) {
    sqf_rec(f, pth_root_poly(f, a), mult * static_cast<int>(f.characteristic()), out);
    return;
  }
  FqPoly c = gcd(f, a, da);
  FqPoly w = exact_div(f, a, c);
  int i = 1;
  while (w.degree() > 0) {
    FqPoly y = gcd(f, w, c);
    FqPoly z = exact_div(f, w, y);
    if (z.degree() > 0) {
      auto it = out.find(i * mult);
      out[i * mult] = it == out.end() ? z : mul(f, it->second, z);
    }
    w = y;
    c = exact_div(f, c, y);
    ++i;
  }
  if (c.degree() > 0)
    sqf_rec(f, pth_root_poly(f, c), mult * static_cast<int>(f.characteristic()), out);
}

// Split a squarefree monic a into (product of irreducibles of degree d).
std::vector<std::pair<FqPoly, int>> distinct_degree(const Fq& f, FqPoly a) {
  std::vector<std::pair<FqPoly, int>> out;
  FqPoly xq = rem(f, x_power(f, 1), a);
  const FqPoly x = x_power(f, 1);
  int d = 0;
  while (a.degree() >= 2 * (d + 1)) {
    ++d;
    xq = powmod(f, xq, f.order(), a);
    FqPoly g = gcd(f, a, sub(f, xq, rem(f, x, a)));
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      a = exact_div(f, a, g);
      xq = rem(f, xq, a);
    }
  }
  if (a.degree() > 0) out.emplace_back(a, a.degree());
  return out;
}

// Equal-degree splitting of a (product of distinct irreducibles of degree d).
void equal_degree(const Fq& f, const FqPoly& a, int d, Rng& rng,
                  std::vector<FqPoly>& out) {
  if (a.degree() == d) {
    out.push_back(monic(f, a));
    return;
  }
  const bool even = f.characteristic() == 2;
  for (;;) {
    FqPoly r;
    r.c.resize(a.degree());
    for (auto& v : r.c) v = f.random(rng);
    trim(f, r);
    if (r.degree() <= 0) continue;
    FqPoly s;
    if (even) {
      // Absolute trace to F_2 composed over F_{q^d}: sum of r^(2^i).
      const unsigned steps = f.degree() * static_cast<unsigned>(d);
      FqPoly t = r;
      s = r;
      for (unsigned i = 1; i < steps; ++i) {
        t = mulmod(f, t, t, a);
        s = add(f, s, t);
      }
    } else {
      // r^((q^d - 1)/2) = (prod_{i<d} r^(q^i))^((q-1)/2)
      FqPoly t = r, prod = r;
      for (int i = 1; i < d; ++i) {
        t = powmod(f, t, f.order(), a);
        prod = mulmod(f, prod, t, a);
      }
      s = powmod(f, prod, (f.order() - 1) / 2, a);
      s = sub(f, s, constant(f, f.one()));
    }
    FqPoly g = gcd(f, a, s);
    if (g.degree() > 0 && g.degree() < a.degree()) {
      equal_degree(f, g, d, rng, out);
      equal_degree(f, exact_div(f, a, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> squarefree_decomposition(const Fq& f, const FqPoly& a) {
  if (a.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  std::map<int, FqPoly> parts;
  sqf_rec(f, monic(f, a), 1, parts);
  std::vector<Factor> out;
  for (auto& [m, p] : parts) out.push_back({monic(f, p), m});
  return out;
}

std::vector<Factor> uni_factor(const Fq& f, const FqPoly& a, std::uint64_t seed) {
  if (a.is_zero()) throw std::invalid_argument("uni_factor: zero polynomial");
  Rng rng(seed);
  std::vector<Factor> out;
  for (const auto& part : squarefree_decomposition(f, a)) {
    for (auto& [g, d] : distinct_degree(f, part.poly)) {
      std::vector<FqPoly> irr;
      equal_degree(f, g, d, rng, irr);
      for (auto& h : irr) out.push_back({h, part.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
    if (x.poly.degree() != y.poly.degree()) return x.poly.degree() < y.poly.degree();
    if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
    for (int i = x.poly.degree(); i >= 0; --i)
      if (x.poly.c[i] != y.poly.c[i]) return x.poly.c[i] < y.poly.c[i];
    return false;
  });
  // Deterministic verification of the factor product.
  FqPoly prod = constant(f, f.one());
  for (const auto& fac : out)
    for (int i = 0; i < fac.multiplicity; ++i) prod = mul(f, prod, fac.poly);
  if (!equal(f, prod, monic(f, a)))
    throw std::runtime_error("uni_factor: factor product does not re-expand");
  return out;
}

bool is_irreducible(const Fq& f, const FqPoly& a) {
  if (a.degree() <= 0) return false;
  if (a.degree() == 1) return true;
  FqPoly m = monic(f, a);
  if (gcd(f, m, derivative(f, m)).degree() > 0) return false;
  auto parts = distinct_degree(f, m);
  return parts.size() == 1 && parts[0].second == m.degree();
}

std::vector<Fq::Elem> roots(const Fq& f, const FqPoly& a, std::uint64_t seed) {
  if (a.is_zero()) throw std::invalid_argument("roots: zero polynomial");
  if (a.degree() <= 0) return {};
  FqPoly m = monic(f, a);
  FqPoly xq = frobenius_power(f, m, 1);
  FqPoly g = gcd(f, m, sub(f, xq, rem(f, x_power(f, 1), m)));
  std::vector<Fq::Elem> out;
  if (g.degree() <= 0) return out;
  Rng rng(seed);
  std::vector<FqPoly> lin;
  equal_degree(f, g, 1, rng, lin);
  for (auto& l : lin) out.push_back(f.neg(l.c[0]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plcert
