#ifndef PLCERT_TESTS_SUPPORT_HPP
#define PLCERT_TESTS_SUPPORT_HPP

// Test-only generators and oracles shared by the unit and acceptance tests.

#include <cstdlib>

#include "plcert/repro.hpp"

namespace plcert::testing {

inline const Fq& f31() {
  static Fq k = Fq::build(31, 1);
  return k;
}

inline const PlaneCurve& septic() {
  static PlaneCurve c = make_curve(f31(), fermat(f31(), 7));
  return c;
}

inline Form random_form(const Fq& k, int deg, Rng& rng) {
  Form g = form::zero(k, deg);
  for (auto& v : g.c) v = k.random(rng);
  return g;
}

// A pool of closed points of various degrees on the curve.
inline std::vector<CurvePoint> point_pool(const PlaneCurve& c, std::uint64_t seed) {
  std::vector<CurvePoint> pts = rational_points(c, std::min<std::size_t>(12, all_rational_points(c).size()), seed);
  Rng rng(seed);
  for (int i = 0; i < 4; ++i) {
    auto d = intersection_divisor(c, random_form(c.field, 1, rng), seed + i);
    for (const auto& t : d.terms)
      if (t.point.degree() <= 4) pts.push_back(t.point);
  }
  return pts;
}

inline Divisor random_divisor(const PlaneCurve& c, const std::vector<CurvePoint>& pool, Rng& rng,
                       int lo, int hi) {
  for (;;) {
    Divisor d{static_cast<int>(draw(rng, 3)) - 1, {}};
    const int n = static_cast<int>(draw(rng, 6));
    for (int i = 0; i < n; ++i) {
      int mult = 1 + static_cast<int>(draw(rng, 3));
      if (draw(rng, 3) == 0) mult = -mult;
      d.terms.push_back({pool[draw(rng, pool.size())], mult});
    }
    d = normalize(d);
    const int deg = degree(c, d);
    if (deg >= lo && deg <= hi) return d;
  }
}

// Oracle: Brill-Noether residual computed explicitly. Pick a form H of
// degree n through D+, intersect it with the curve to get the residual
// R = div(H) - D+ point by point, then count forms of degree n vanishing on
// R + D- modulo F.
inline int residual_oracle(const PlaneCurve& c, const Divisor& d, Rng& rng) {
  const Fq& k = c.field;
  Divisor pos{0, {}}, neg{0, {}};
  for (const auto& t : d.terms) (t.mult > 0 ? pos : neg).terms.push_back({t.point, std::abs(t.mult)});
  Form one = form::monomial(k, 0, 0, 0, k.one());
  for (int n = 0;; ++n) {
    Matrix<Fq> cond(0, form::num_monomials(n), 0);
    for (const auto& t : pos.terms) {
      auto b = branch_series(c, t.point, t.mult);
      auto rows = vanishing_conditions(c, b, t.mult, n);
      for (std::size_t i = 0; i < rows.rows(); ++i) cond.append_row(rows.row(i));
    }
    std::vector<std::vector<Fq::Elem>> ker;
    if (cond.rows() == 0) {
      ker.push_back(one.c);
      if (n > 0) continue;
    } else {
      ker = linalg::kernel(k, cond);
    }
    if (ker.size() <= form::num_monomials(n - c.degree)) continue;
    Form h;
    auto fmult = form::multiples_matrix(k, c.F, n);
    const std::size_t frank = fmult.rows() ? linalg::rank(k, fmult) : 0;
    do {
      h = form::zero(k, n);
      for (auto& v : ker) {
        const auto coef = k.random(rng);
        for (std::size_t i = 0; i < v.size(); ++i) h.c[i] = k.add(h.c[i], k.mul(v[i], coef));
      }
    } while (form::is_zero(k, h) || [&] {
      auto test = fmult;
      if (test.rows() == 0) return false;
      test.append_row(h.c);
      return linalg::rank(k, test) == frank;
    }());
    Divisor r{0, {}};
    if (n > 0) {
      Divisor dh = intersection_divisor(c, h, n);
      for (auto& t : dh.terms) t.mult -= multiplicity(pos, t.point);
      r = dh;
    }
    for (const auto& t : neg.terms) r.terms.push_back(t);
    r = normalize(r);
    const int m = n + d.hyperplane;
    if (m < 0) return 0;
    Matrix<Fq> cond2(0, form::num_monomials(m), 0);
    for (const auto& t : r.terms) {
      if (t.mult <= 0) continue;
      auto b = branch_series(c, t.point, t.mult);
      auto rows = vanishing_conditions(c, b, t.mult, m);
      for (std::size_t i = 0; i < rows.rows(); ++i) cond2.append_row(rows.row(i));
    }
    std::size_t dim = cond2.rows() == 0 ? form::num_monomials(m) : linalg::kernel(k, cond2).size();
    return static_cast<int>(dim - form::num_monomials(m - c.degree));
  }
}

// Base-point family: D' = (line section through p0 and another point) - p0
// + 7 further points. p0 is then a base point of K - D'.
inline Divisor base_point_control(const PlaneCurve& c, Rng& rng) {
  const Fq& k = c.field;
  auto pts = all_rational_points(c);
  for (;;) {
    const auto& p0 = pts[draw(rng, pts.size())];
    const auto& p1 = pts[draw(rng, pts.size())];
    if (p0 == p1) continue;
    // Line through p0 and p1: the cross product of their coordinates.
    std::array<Fq::Elem, 3> a{p0.x[0][0], p0.x[1][0], p0.x[2][0]}, b{p1.x[0][0], p1.x[1][0], p1.x[2][0]};
    Form line = form::zero(k, 1);
    line.c[form::index(1, 1, 0)] = k.sub(k.mul(a[1], b[2]), k.mul(a[2], b[1]));
    line.c[form::index(1, 0, 1)] = k.sub(k.mul(a[2], b[0]), k.mul(a[0], b[2]));
    line.c[form::index(1, 0, 0)] = k.sub(k.mul(a[0], b[1]), k.mul(a[1], b[0]));
    Divisor d = intersection_divisor(c, line, draw(rng, 1000));
    if (multiplicity(d, p0) != 1) continue;
    d = subtract(d, point_divisor(p0));
    d.hyperplane = 0;
    int added = 0;
    while (added < 7) {
      const auto& q = pts[draw(rng, pts.size())];
      if (q == p0 || multiplicity(d, q) != 0) continue;
      d = add(d, point_divisor(q));
      ++added;
    }
    return d;
  }
}

// O(3)(-E) family: a random net inside the cubics through 6 points E.
// K - B - L = E, so h0(K - B - L) >= 1.
inline LinearSeries cubic_net_control(const PlaneCurve& c, Rng& rng) {
  const Fq& k = c.field;
  auto pts = all_rational_points(c);
  for (;;) {
    Divisor e{3, {}};
    while (e.terms.size() < 6) {
      const auto& q = pts[draw(rng, pts.size())];
      if (multiplicity(e, q) == 0) e.terms.push_back({q, -1});
    }
    auto s = rr_space(c, e);
    std::vector<std::vector<Fq::Elem>> sel(3, std::vector<Fq::Elem>(s.h0()));
    for (auto& v : sel)
      for (auto& x : v) x = k.random(rng);
    try {
      auto v = make_series(c, s, sel);
      if (v.generating) return v;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace plcert::testing

#endif  // PLCERT_TESTS_SUPPORT_HPP
