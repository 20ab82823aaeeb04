#include "plcert/linstab.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "plcert/factor.hpp"

namespace plcert {

namespace {

using LElem = ExtField::Elem;

// All monomials of degree e evaluated at u, in graded-lex order.
std::vector<LElem> monomial_values(const ExtField& l, const std::array<LElem, 3>& u, int e) {
  std::array<std::vector<LElem>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(l.one());
    for (int i = 1; i <= e; ++i) pw[v].push_back(l.mul(pw[v].back(), u[v]));
  }
  std::vector<LElem> out;
  for (const auto& m : form::monomials(e)) out.push_back(l.mul(l.mul(pw[0][m.a], pw[1][m.b]), pw[2][m.c]));
  return out;
}

struct ImageSample {
  ExtFieldPtr field;
  std::array<LElem, 3> u;
};

bool squarefree_binary(const ExtField& l, const std::vector<LElem>& coeffs, int m) {
  // coeffs[i] multiplies s^i t^(m-i); dehomogenize at t = 1.
  if (m <= 1) return true;
  UniPoly<ExtField> p{coeffs};
  upoly::trim(l, p);
  if (p.degree() < m - 1) return false;  // t^2 divides the form
  auto der = upoly::derivative(l, p);
  if (der.is_zero()) return false;
  return upoly::gcd(l, p, der).degree() == 0;
}

}  // namespace

LinearSeries make_series(const PlaneCurve& c, const SectionSpace& s,
                         const std::optional<std::vector<std::vector<Fq::Elem>>>& selection) {
  const Fq& k = c.field;
  LinearSeries v;
  v.space = s;
  if (selection) {
    Matrix<Fq> coef(0, s.h0(), 0);
    for (const auto& vec : *selection) {
      if (vec.size() != s.h0()) throw std::invalid_argument("make_series: selection has the wrong length");
      coef.append_row(vec);
      Form g = form::zero(k, s.m);
      for (std::size_t i = 0; i < vec.size(); ++i) g = form::add(k, g, form::scale(k, s.basis[i], vec[i]));
      v.basis.push_back(std::move(g));
    }
    if (!selection->empty() && linalg::rank(k, coef) != selection->size())
      throw std::invalid_argument("make_series: selected sections are dependent");
  } else {
    v.basis = s.basis;
  }
  if (v.basis.size() < 2) throw std::invalid_argument("make_series: a linear series needs dim >= 2");
  v.rank = static_cast<int>(v.basis.size()) - 1;
  v.degree_L = degree(c, s.divisor);
  v.base_degree = base_degree(c, s, v.basis);
  v.degree = v.degree_L - v.base_degree;
  v.generating = v.base_degree == 0;
  return v;
}

Rational slope_M(const LinearSeries& v) {
  if (!v.generating) throw std::invalid_argument("slope_M: the pair is not generating");
  return Rational(-v.degree_L, v.rank);
}

ImageModel image_curve(const PlaneCurve& c, const LinearSeries& v, std::uint64_t seed) {
  if (v.rank != 2) throw std::invalid_argument("image_curve: rank must be 2");
  if (!v.generating) throw std::invalid_argument("image_curve: the series has base points");
  const Fq& k = c.field;
  const int big_e = v.degree_L;
  const std::size_t need = std::max<std::size_t>(form::num_monomials(big_e) + 64,
                                                 static_cast<std::size_t>(big_e * (big_e - 1) + 1));
  const std::size_t held_out = 32;

  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 5);
  std::vector<ImageSample> train, test;
  std::size_t train_rows = 0;
  std::set<std::string> seen_rational;
  for (int lines = 0; test.size() < held_out; ++lines) {
    if (lines > 100000) throw std::runtime_error("image_curve: could not sample enough points");
    std::array<Fq::Elem, 3> a{k.random(rng), k.random(rng), k.random(rng)};
    std::array<Fq::Elem, 3> b{k.random(rng), k.random(rng), k.random(rng)};
    Matrix<Fq> ab = Matrix<Fq>::zeros(k, 2, 3);
    for (int i = 0; i < 3; ++i) {
      ab(0, i) = a[i];
      ab(1, i) = b[i];
    }
    if (linalg::rank(k, ab) < 2) continue;
    auto restricted = form::restrict_to_line(k, c.F, a, b);
    if (restricted.degree() < 1) continue;
    for (const auto& fac : uni_factor(k, restricted, lines)) {
      if (fac.poly.degree() > 8) continue;
      auto l = std::make_shared<const ExtField>(k, fac.poly);
      std::array<LElem, 3> pt;
      for (int i = 0; i < 3; ++i) pt[i] = l->add(l->from_base(a[i]), l->scale(l->gen(), b[i]));
      if (l->degree() == 1) {
        auto key = make_point(k, *l, pt).key();
        if (!seen_rational.insert(key).second) continue;
      }
      ImageSample s{l, {}};
      bool all_zero = true;
      for (int i = 0; i < 3; ++i) {
        s.u[i] = form::eval(k, v.basis[i], *l, pt);
        all_zero = all_zero && l->is_zero(s.u[i]);
      }
      if (all_zero) continue;
      if (train_rows < need) {
        train_rows += l->degree();
        train.push_back(std::move(s));
      } else if (test.size() < held_out) {
        test.push_back(std::move(s));
      }
    }
  }

  for (int e = 1; e <= big_e; ++e) {
    Matrix<Fq> rows(0, form::num_monomials(e), 0);
    for (const auto& s : train) {
      auto vals = monomial_values(*s.field, s.u, e);
      for (unsigned r = 0; r < s.field->degree(); ++r) {
        std::vector<Fq::Elem> row(vals.size());
        for (std::size_t j = 0; j < vals.size(); ++j) row[j] = vals[j][r];
        rows.append_row(row);
      }
    }
    auto ker = linalg::kernel(k, rows);
    if (ker.empty()) continue;
    if (ker.size() > 1) throw std::runtime_error("image_curve: interpolation kernel is not one-dimensional");
    Form g{e, ker[0]};
    std::size_t lead = 0;
    while (g.c[lead] == 0) ++lead;
    g = form::scale(k, g, k.inv(g.c[lead]));
    for (const auto& s : test)
      if (!s.field->is_zero(form::eval(k, g, *s.field, s.u)))
        throw std::runtime_error("image_curve: held-out validation failed");
    if (big_e % e != 0) throw std::runtime_error("image_curve: image degree does not divide deg L");
    ImageModel model;
    model.equation = g;
    model.degree = e;
    model.map_degree = big_e / e;
    return model;
  }
  throw std::runtime_error("image_curve: no image equation found");
}

int point_multiplicity(const Fq& k, const Form& g, const CurvePoint& p, bool* ordinary) {
  const ExtField& l = *p.field;
  const int n = g.deg;
  const int chart = p.chart();
  const int a = chart == 0 ? 1 : 0, b = chart == 2 ? 1 : 2;
  // Binomial coefficients reduced into K.
  std::vector<std::vector<Fq::Elem>> binom(n + 1, std::vector<Fq::Elem>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    binom[i][0] = k.one();
    for (int j = 1; j <= i; ++j) binom[i][j] = k.add(binom[i - 1][j - 1], j <= i - 1 ? binom[i - 1][j] : 0);
  }
  std::vector<LElem> pa{l.one()}, pb{l.one()};
  for (int i = 1; i <= n; ++i) {
    pa.push_back(l.mul(pa.back(), p.x[a]));
    pb.push_back(l.mul(pb.back(), p.x[b]));
  }
  const auto& mons = form::monomials(n);
  for (int layer = 0; layer <= n; ++layer) {
    std::vector<LElem> cone(layer + 1, l.zero());  // coefficient of u^i v^(layer-i)
    bool nonzero = false;
    for (int i = 0; i <= layer; ++i) {
      const int j = layer - i;
      LElem acc = l.zero();
      for (std::size_t t = 0; t < mons.size(); ++t) {
        if (g.c[t] == 0) continue;
        const int ea = chart == 0 ? mons[t].b : mons[t].a;
        const int eb = chart == 2 ? mons[t].b : mons[t].c;
        if (ea < i || eb < j) continue;
        const auto coef = k.mul(g.c[t], k.mul(binom[ea][i], binom[eb][j]));
        if (coef == 0) continue;
        acc = l.add(acc, l.scale(l.mul(pa[ea - i], pb[eb - j]), coef));
      }
      cone[i] = acc;
      nonzero = nonzero || !l.is_zero(acc);
    }
    if (nonzero) {
      if (ordinary) *ordinary = squarefree_binary(l, cone, layer);
      return layer;
    }
  }
  throw std::invalid_argument("point_multiplicity: zero form");
}

std::vector<SingularPoint> singular_points(const Fq& k, const Form& g, std::uint64_t seed) {
  if (g.deg <= 1) return {};
  std::array<Form, 3> partials;
  for (int v = 0; v < 3; ++v) partials[v] = form::partial(k, g, v);
  Rng rng(seed + 71);
  Form combo;
  do {
    combo = form::zero(k, g.deg - 1);
    for (int v = 0; v < 3; ++v) combo = form::add(k, combo, form::scale(k, partials[v], k.random(rng)));
  } while (form::is_zero(k, combo));
  std::vector<SingularPoint> out;
  for (auto& p : common_zeros(k, {g, combo, partials[0], partials[1], partials[2]}, seed)) {
    SingularPoint sp{p, 0, true};
    sp.multiplicity = point_multiplicity(k, g, p, &sp.ordinary);
    if (sp.multiplicity < 2) throw std::logic_error("singular_points: zero of the gradient is a smooth point");
    out.push_back(std::move(sp));
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& x, const SingularPoint& y) {
    if (x.point.degree() != y.point.degree()) return x.point.degree() < y.point.degree();
    return x.point.key() < y.point.key();
  });
  return out;
}

void analyze_singularities(const Fq& k, ImageModel& model, std::uint64_t seed) {
  model.singular = singular_points(k, model.equation, seed);
  model.max_multiplicity = 1;
  for (const auto& s : model.singular) model.max_multiplicity = std::max(model.max_multiplicity, s.multiplicity);
  model.singular_computed = true;
}

int genus_from_singularities(const ImageModel& model) {
  const int e = model.degree;
  int g = (e - 1) * (e - 2) / 2;
  for (const auto& s : model.singular)
    g -= static_cast<int>(s.point.degree()) * s.multiplicity * (s.multiplicity - 1) / 2;
  return g;
}

int pencil_base_degree(const PlaneCurve& c, const LinearSeries& v, const Form& s1, const Form& s2) {
  Matrix<Fq> m(0, s1.c.size(), 0);
  m.append_row(s1.c);
  m.append_row(s2.c);
  auto fm = form::multiples_matrix(c.field, c.F, s1.deg);
  const std::size_t fr = fm.rows() ? linalg::rank(c.field, fm) : 0;
  for (std::size_t i = 0; i < m.rows(); ++i) fm.append_row(m.row(i));
  if (linalg::rank(c.field, fm) != fr + 2) throw std::invalid_argument("pencil_base_degree: dependent sections");
  return base_degree(c, v.space, {s1, s2});
}

int projection_pencil_base_degree(const PlaneCurve& c, const LinearSeries& v, const CurvePoint& q) {
  if (v.rank != 2) throw std::invalid_argument("projection_pencil_base_degree: rank must be 2");
  const ExtField& l = *q.field;
  const int chart = q.chart();
  std::vector<FormT<ExtField>> pencil;
  for (int a = 0; a < 3; ++a) {
    if (a == chart) continue;
    // The line x_a - q_a x_chart passes through q.
    auto s = form::lift(l, v.basis[a]);
    auto other = form::lift(l, v.basis[chart]);
    s = form::sub(l, s, form::scale(l, other, q.x[a]));
    pencil.push_back(std::move(s));
  }
  const auto fl = form::lift(l, c.F);
  const int len = scheme_length_over(l, fl, pencil[0], {pencil[1]});
  return len - (c.degree * v.space.m - v.degree_L);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "Stable";
    case Verdict::Semistable:
      return "Semistable";
    case Verdict::Unstable:
      return "Unstable";
  }
  return "?";
}

Verdict classify(int max_multiplicity, int degree_L) {
  const int twice = 2 * max_multiplicity;
  return twice < degree_L ? Verdict::Stable : twice == degree_L ? Verdict::Semistable : Verdict::Unstable;
}

StabilityVerdict linear_stability_verdict(const PlaneCurve& c, const LinearSeries& v, ImageModel& model,
                                          std::uint64_t seed) {
  if (v.rank != 2) throw std::invalid_argument("linear_stability_verdict: rank must be 2");
  if (!v.generating) throw std::invalid_argument("linear_stability_verdict: the series has base points");
  if (model.map_degree != 1)
    throw std::invalid_argument("linear_stability_verdict: the map to the image is not birational");
  if (!model.singular_computed) analyze_singularities(c.field, model, seed);
  StabilityVerdict out;
  out.threshold = Rational(v.degree_L, 2);
  out.max_multiplicity = model.max_multiplicity;
  out.verdict = classify(model.max_multiplicity, v.degree_L);
  if (out.verdict != Verdict::Stable) {
    for (const auto& s : model.singular)
      if (s.multiplicity == model.max_multiplicity) {
        out.witness = s;
        out.witness_pencil_base = projection_pencil_base_degree(c, v, s.point);
        break;
      }
  }
  return out;
}

}  // namespace plcert
