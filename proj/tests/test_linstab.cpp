#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plcert/linstab.hpp"

using namespace plcert;

namespace {

const Fq& f31() {
  static Fq k = Fq::build(31, 1);
  return k;
}

const PlaneCurve& septic() {
  static PlaneCurve c = make_curve(f31(), fermat(f31(), 7));
  return c;
}

std::vector<Fq::Elem> unit(std::size_t n, std::size_t i) {
  std::vector<Fq::Elem> v(n, 0);
  v[i] = 1;
  return v;
}

Form from_terms(const Fq& k, int deg, std::vector<std::tuple<int, int, std::int64_t>> terms) {
  Form g = form::zero(k, deg);
  for (auto [a, b, c] : terms) g.c[form::index(deg, a, b)] = k.add(g.c[form::index(deg, a, b)], k.from_int(c));
  return g;
}

// Position of a monomial in the standard basis of S_2 (no F-reduction below degree d).
std::size_t mono2(int a, int b) { return form::index(2, a, b); }

}  // namespace

TEST_CASE("the line series on the septic") {
  const auto& c = septic();
  auto s = rr_space(c, hyperplane_divisor(1));
  auto v = make_series(c, s);
  CHECK(v.degree == 7);
  CHECK(v.rank == 2);
  CHECK(v.generating);
  CHECK(slope_M(v) == Rational(-7, 2));
  auto model = image_curve(c, v, 1);
  CHECK(model.degree == 7);
  CHECK(model.map_degree == 1);
  auto verdict = linear_stability_verdict(c, v, model);
  CHECK(model.singular.empty());
  CHECK(verdict.verdict == Verdict::Stable);
  CHECK(verdict.threshold == Rational(7, 2));
  CHECK(verdict.max_multiplicity == 1);
  CHECK(genus_from_singularities(model) == 15);
}

TEST_CASE("pencils inside the line series") {
  const auto& c = septic();
  auto s = rr_space(c, hyperplane_divisor(1));
  auto p = rational_points(c, 1, 4)[0];
  // Lines through p: x_a - p_a x_chart for the two non-chart coordinates.
  const int ch = p.chart();
  std::vector<std::vector<Fq::Elem>> sel;
  for (int a = 0; a < 3; ++a) {
    if (a == ch) continue;
    std::vector<Fq::Elem> vec(3, 0);
    // basis of S_1 is x, y, z in order
    vec[a] = 1;
    vec[ch] = f31().neg(p.x[a][0]);
    sel.push_back(vec);
  }
  auto pencil = make_series(c, s, sel);
  CHECK(pencil.rank == 1);
  CHECK(pencil.base_degree == 1);
  CHECK(pencil.degree == 6);
  CHECK_FALSE(pencil.generating);
  CHECK_THROWS_AS(slope_M(pencil), std::invalid_argument);
  auto full = make_series(c, s);
  CHECK(pencil_base_degree(c, full, pencil.basis[0], pencil.basis[1]) == 1);
  // A generic pencil: two random lines meeting off the curve.
  Rng rng(3);
  int zero_seen = 0;
  for (int i = 0; i < 5; ++i) {
    Form l1 = form::zero(f31(), 1), l2 = form::zero(f31(), 1);
    for (auto& x : l1.c) x = f31().random(rng);
    for (auto& x : l2.c) x = f31().random(rng);
    zero_seen += pencil_base_degree(c, full, l1, l2) == 0;
  }
  CHECK(zero_seen >= 3);
  CHECK_THROWS_AS(make_series(c, s, std::vector<std::vector<Fq::Elem>>{unit(3, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(make_series(c, s, std::vector<std::vector<Fq::Elem>>{unit(3, 0), unit(3, 0)}),
                  std::invalid_argument);
}

TEST_CASE("canonical series slope") {
  const auto& c = septic();
  auto v = make_series(c, rr_space(c, canonical_divisor(c)));
  CHECK(v.degree_L == 28);
  CHECK(v.rank == 14);
  CHECK(v.generating);
  CHECK(slope_M(v) == Rational(-2));
}

TEST_CASE("nodal cubic has a node at (0:0:1)") {
  const Fq& k = f31();
  Form g = from_terms(k, 3, {{3, 0, 1}, {2, 0, 1}, {0, 2, -1}});
  auto sing = singular_points(k, g, 1);
  REQUIRE(sing.size() == 1);
  CHECK(sing[0].point == rational_point(k, {0, 0, 1}));
  CHECK(sing[0].multiplicity == 2);
  CHECK(sing[0].ordinary);
  // Cuspidal cubic y^2 z - x^3: a non-ordinary double point.
  Form cusp = from_terms(k, 3, {{0, 2, 1}, {3, 0, -1}});
  auto sc = singular_points(k, cusp, 2);
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].multiplicity == 2);
  CHECK_FALSE(sc[0].ordinary);
  CHECK(singular_points(k, fermat(k, 7)).empty());
}

TEST_CASE("Cremona image of a plane cubic: three triple points, semistable") {
  const Fq& k = f31();
  auto c = make_curve(k, fermat(k, 3));
  auto s = rr_space(c, hyperplane_divisor(2));
  REQUIRE(s.h0() == 6);
  // yz, xz, xy
  auto v = make_series(c, s, std::vector<std::vector<Fq::Elem>>{unit(6, mono2(0, 1)), unit(6, mono2(1, 0)),
                                                                unit(6, mono2(1, 1))});
  CHECK(v.generating);
  CHECK(v.degree == 6);
  auto model = image_curve(c, v, 2);
  CHECK(model.degree == 6);
  CHECK(model.map_degree == 1);
  // Expected image: u^3 v^3 + u^3 w^3 + v^3 w^3.
  Form expect = from_terms(k, 6, {{3, 3, 1}, {3, 0, 1}, {0, 3, 1}});
  CHECK(form::equal(k, model.equation, expect));
  auto verdict = linear_stability_verdict(c, v, model, 3);
  REQUIRE(model.singular.size() == 3);
  for (const auto& sp : model.singular) {
    CHECK(sp.multiplicity == 3);
    CHECK(sp.ordinary);
    CHECK(sp.point.degree() == 1);
    // Two independent computations of m_q.
    CHECK(projection_pencil_base_degree(c, v, sp.point) == 3);
  }
  CHECK(genus_from_singularities(model) == c.genus);
  CHECK(verdict.verdict == Verdict::Semistable);
  CHECK(verdict.threshold == Rational(3));
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness_pencil_base == 3);
}

TEST_CASE("a composed series: degree-2 map onto a quartic") {
  const Fq& k = f31();
  auto c = make_curve(k, fermat(k, 4));
  auto s = rr_space(c, hyperplane_divisor(2));
  REQUIRE(s.h0() == 6);
  // x^2, xy, z^2 is invariant under (x, y) -> (-x, -y).
  auto v = make_series(c, s, std::vector<std::vector<Fq::Elem>>{unit(6, mono2(2, 0)), unit(6, mono2(1, 1)),
                                                                unit(6, mono2(0, 0))});
  CHECK(v.generating);
  auto model = image_curve(c, v, 4);
  CHECK(model.map_degree == 2);
  CHECK(model.degree * model.map_degree == v.degree_L);
  Form expect = from_terms(k, 4, {{4, 0, 1}, {0, 4, 1}, {2, 0, 0}});
  expect.c[form::index(4, 2, 0)] = 1;  // u^2 w^2
  CHECK(form::equal(k, model.equation, expect));
  CHECK_THROWS_AS(linear_stability_verdict(c, v, model), std::invalid_argument);
}

TEST_CASE("verdict thresholds") {
  CHECK(classify(2, 15) == Verdict::Stable);
  CHECK(classify(7, 15) == Verdict::Stable);
  CHECK(classify(8, 15) == Verdict::Unstable);
  CHECK(classify(3, 6) == Verdict::Semistable);
  CHECK(classify(4, 6) == Verdict::Unstable);
  CHECK(classify(1, 2) == Verdict::Semistable);
  // Stable implies semistable: 2m < deg implies 2m <= deg.
  for (int m = 1; m < 10; ++m)
    for (int d = 1; d < 25; ++d)
      if (classify(m, d) == Verdict::Stable) CHECK(2 * m <= d);
}
