#include "plcert/curve.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "plcert/factor.hpp"
#include "plcert/resultant.hpp"

namespace plcert {

namespace {

using LElem = ExtField::Elem;
using Series = std::vector<LElem>;

// Incrementally grown K-basis of vectors, kept in row echelon form.
class IncBasis {
 public:
  IncBasis(const Fq& k, std::size_t dim) : k_(k), dim_(dim) {}
  std::size_t size() const { return rows_.size(); }
  bool add(std::vector<Fq::Elem> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto c = piv_[r];
      if (v[c] == 0) continue;
      const auto factor = v[c];
      for (std::size_t j = 0; j < dim_; ++j)
        if (rows_[r][j]) v[j] = k_.sub(v[j], k_.mul(factor, rows_[r][j]));
    }
    std::size_t c = 0;
    while (c < dim_ && v[c] == 0) ++c;
    if (c == dim_) return false;
    const auto inv = k_.inv(v[c]);
    for (auto& x : v) x = k_.mul(x, inv);
    rows_.push_back(std::move(v));
    piv_.push_back(c);
    return true;
  }

 private:
  const Fq& k_;
  std::size_t dim_;
  std::vector<std::vector<Fq::Elem>> rows_;
  std::vector<std::size_t> piv_;
};

// Degree over K of the subfield K(u, v) of L.
std::size_t generated_degree(const Fq& k, const ExtField& l, const LElem& u, const LElem& v) {
  IncBasis basis(k, l.degree());
  std::vector<LElem> queue{l.one()};
  basis.add(l.one());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto* g : {&u, &v}) {
      auto w = l.mul(queue[i], *g);
      if (basis.add(w)) queue.push_back(std::move(w));
    }
  }
  return basis.size();
}

// Powers 1, w, ..., w^(e-1) as the columns of a [L:K] x e matrix, where e is
// the degree of the minimal polynomial of w; also returns w^e.
std::pair<Matrix<Fq>, LElem> power_basis(const Fq& k, const ExtField& l, const LElem& w) {
  IncBasis basis(k, l.degree());
  std::vector<LElem> pw{l.one()};
  basis.add(l.one());
  for (;;) {
    auto next = l.mul(pw.back(), w);
    if (!basis.add(next)) {
      Matrix<Fq> m = Matrix<Fq>::zeros(k, l.degree(), pw.size());
      for (std::size_t j = 0; j < pw.size(); ++j)
        for (std::size_t i = 0; i < l.degree(); ++i) m(i, j) = pw[j][i];
      return {m, next};
    }
    pw.push_back(std::move(next));
  }
}

Series series_mul(const ExtField& l, const Series& a, const Series& b, std::size_t n) {
  std::size_t la = std::min(a.size(), n), lb = std::min(b.size(), n);
  while (la > 0 && l.is_zero(a[la - 1])) --la;
  while (lb > 0 && l.is_zero(b[lb - 1])) --lb;
  Series r(n, l.zero());
  for (std::size_t i = 0; i < la; ++i) {
    if (l.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < lb && i + j < n; ++j) {
      if (l.is_zero(b[j])) continue;
      r[i + j] = l.add(r[i + j], l.mul(a[i], b[j]));
    }
  }
  return r;
}

Series series_inv(const ExtField& l, const Series& a, std::size_t n) {
  Series r(n, l.zero());
  const auto inv0 = l.inv(a[0]);
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    LElem acc = l.zero();
    for (std::size_t i = 1; i <= k && i < a.size(); ++i)
      if (!l.is_zero(a[i])) acc = l.add(acc, l.mul(a[i], r[k - i]));
    r[k] = l.neg(l.mul(acc, inv0));
  }
  return r;
}

// G(coords) truncated at t^n.
Series eval_along(const Fq& k, const Form& g, const ExtField& l,
                  const std::array<Series, 3>& coords, std::size_t n) {
  std::array<std::vector<Series>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    Series one(n, l.zero());
    one[0] = l.one();
    pw[v].push_back(std::move(one));
  }
  auto power = [&](int v, int e) -> const Series& {
    while (static_cast<int>(pw[v].size()) <= e)
      pw[v].push_back(series_mul(l, pw[v].back(), coords[v], n));
    return pw[v][e];
  };
  Series acc(n, l.zero());
  const auto& mons = form::monomials(g.deg);
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    if (g.c[i] == 0) continue;
    auto t = series_mul(l, power(0, mons[i].a), power(1, mons[i].b), n);
    t = series_mul(l, t, power(2, mons[i].c), n);
    for (std::size_t j = 0; j < n; ++j)
      if (!l.is_zero(t[j])) acc[j] = l.add(acc[j], l.scale(t[j], g.c[i]));
  }
  (void)k;
  return acc;
}

Matrix<Fq> random_invertible(const Fq& k, Rng& rng) {
  for (;;) {
    Matrix<Fq> m = Matrix<Fq>::zeros(k, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = k.random(rng);
    if (linalg::rank(k, m) == 3) return m;
  }
}

std::array<LElem, 3> apply(const ExtField& l, const Matrix<Fq>& m, const std::array<LElem, 3>& v) {
  std::array<LElem, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = l.zero();
    for (int j = 0; j < 3; ++j)
      if (m(i, j)) out[i] = l.add(out[i], l.scale(v[j], m(i, j)));
  }
  return out;
}

LElem eval_base_poly(const ExtField& l, const FqPoly& a, const LElem& x) {
  LElem acc = l.zero();
  for (std::size_t i = a.c.size(); i-- > 0;) acc = l.add(l.mul(acc, x), l.from_base(a.c[i]));
  return acc;
}

Fq::Elem z_leading(const Form& g) { return g.c[form::index(g.deg, 0, 0)]; }

}  // namespace

Form fermat(const Fq& k, int d) {
  Form f = form::zero(k, d);
  f.c[form::index(d, d, 0)] = k.one();
  f.c[form::index(d, 0, d)] = k.one();
  f.c[form::index(d, 0, 0)] = k.one();
  return f;
}

ExtFieldPtr trivial_field(const Fq& k) {
  return std::make_shared<const ExtField>(k, upoly::x_power(k, 1));
}

int CurvePoint::chart() const {
  for (int i = 0; i < 3; ++i)
    if (!field->is_zero(x[i])) return i;
  throw std::logic_error("CurvePoint: all coordinates vanish");
}

std::string CurvePoint::key() const {
  std::ostringstream os;
  for (auto c : field->modulus().c) os << c << ',';
  os << '|';
  for (const auto& xi : x) {
    for (auto c : xi) os << c << ',';
    os << ';';
  }
  return os.str();
}

bool CurvePoint::operator==(const CurvePoint& o) const {
  return x == o.x && upoly::equal(field->base(), field->modulus(), o.field->modulus());
}

CurvePoint rational_point(const Fq& k, const std::array<Fq::Elem, 3>& v) {
  auto l = trivial_field(k);
  return make_point(k, *l, {l->from_base(v[0]), l->from_base(v[1]), l->from_base(v[2])});
}

CurvePoint make_point(const Fq& k, const ExtField& l, std::array<ExtField::Elem, 3> v) {
  int chart = -1;
  for (int i = 0; i < 3; ++i)
    if (!l.is_zero(v[i])) {
      chart = i;
      break;
    }
  if (chart < 0) throw std::invalid_argument("make_point: zero vector");
  const auto inv = l.inv(v[chart]);
  for (auto& c : v) c = l.mul(c, inv);
  const int a = chart == 0 ? 1 : 0, b = chart == 2 ? 1 : 2;
  const LElem& u = v[a];
  const LElem& w = v[b];
  if (l.in_base(u) && l.in_base(w)) {
    auto t = trivial_field(k);
    CurvePoint p{t, {}};
    for (int i = 0; i < 3; ++i) p.x[i] = t->from_base(v[i][0]);
    return p;
  }
  const std::size_t e = generated_degree(k, l, u, w);
  const std::uint64_t q = k.order();
  const std::uint64_t limit = std::min<std::uint64_t>(q * q, 1u << 20);
  for (std::uint64_t n = 0; n < limit; ++n) {
    const auto c1 = static_cast<Fq::Elem>(n % q), c2 = static_cast<Fq::Elem>(n / q);
    LElem prim = l.add(u, l.scale(w, c1));
    if (c2) prim = l.add(prim, l.scale(l.mul(u, w), c2));
    auto [pb, top] = power_basis(k, l, prim);
    if (pb.cols() != e) continue;
    auto mcoef = linalg::solve(k, pb, top);
    auto ucoef = linalg::solve(k, pb, u);
    auto wcoef = linalg::solve(k, pb, w);
    if (!mcoef || !ucoef || !wcoef) throw std::logic_error("make_point: coordinates outside K(w)");
    std::vector<Fq::Elem> m(e + 1);
    for (std::size_t i = 0; i < e; ++i) m[i] = k.neg((*mcoef)[i]);
    m[e] = k.one();
    auto field = std::make_shared<const ExtField>(k, upoly::make(k, m));
    CurvePoint p{field, {}};
    p.x[chart] = field->one();
    p.x[a] = *ucoef;
    p.x[b] = *wcoef;
    return p;
  }
  throw std::runtime_error("make_point: no primitive element found");
}

std::vector<CurvePoint> common_zeros(const Fq& k, const std::vector<Form>& forms,
                                     std::uint64_t seed) {
  if (forms.size() < 2) throw std::invalid_argument("common_zeros: need at least two forms");
  if (form::is_zero(k, forms[0]) || form::is_zero(k, forms[1]))
    throw std::invalid_argument("common_zeros: zero form");
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  for (int attempt = 0; attempt < 60; ++attempt) {
    const Matrix<Fq> m = random_invertible(k, rng);
    std::vector<Form> t;
    for (const auto& g : forms) t.push_back(form::compose_linear(k, g, m));
    if (z_leading(t[0]) == 0 || z_leading(t[1]) == 0) continue;
    // Both forms have degree > 0 here unless one is a nonzero constant.
    if (t[0].deg == 0 || t[1].deg == 0) return {};
    auto r = resultant(k, form::as_bivariate(k, t[0], 2, 0), form::as_bivariate(k, t[1], 2, 0));
    if (r.is_zero()) throw std::invalid_argument("common_zeros: the forms share a factor");

    std::vector<CurvePoint> out;
    // Zeros on the line y = 0 (x = 1 there, since (0:0:1) is not a zero).
    FqPoly g0 = form::restrict_to_line(k, t[0], {1, 0, 0}, {0, 0, 1});
    for (std::size_t i = 1; i < t.size(); ++i)
      g0 = upoly::gcd(k, g0, form::restrict_to_line(k, t[i], {1, 0, 0}, {0, 0, 1}));
    if (g0.degree() > 0) {
      for (const auto& fac : uni_factor(k, g0, seed)) {
        ExtField l(k, fac.poly);
        std::array<LElem, 3> v{l.one(), l.zero(), l.gen()};
        out.push_back(make_point(k, l, apply(l, m, v)));
      }
    }
    bool separated = true;
    if (r.degree() > 0) {
      for (const auto& fac : uni_factor(k, r, seed)) {
        ExtField l(k, fac.poly);
        const LElem x0 = l.gen();
        UniPoly<ExtField> gz;
        bool first = true;
        for (const auto& g : t) {
          UniPoly<ExtField> h;
          for (const auto& coef : form::as_bivariate(k, g, 2, 0))
            h.c.push_back(eval_base_poly(l, coef, x0));
          upoly::trim(l, h);
          gz = first ? h : upoly::gcd(l, gz, h);
          first = false;
        }
        gz = upoly::monic(l, gz);
        if (gz.degree() <= 0) continue;
        if (gz.degree() > 1) {
          auto der = upoly::derivative(l, gz);
          if (der.is_zero()) {
            separated = false;
            break;
          }
          gz = upoly::exact_div(l, gz, upoly::gcd(l, gz, der));
          if (gz.degree() > 1) {
            separated = false;
            break;
          }
        }
        std::array<LElem, 3> v{x0, l.one(), l.neg(gz.c[0])};
        out.push_back(make_point(k, l, apply(l, m, v)));
      }
    }
    if (!separated) continue;
    return out;
  }
  throw std::runtime_error("common_zeros: could not separate the zeros");
}

PlaneCurve make_curve(const Fq& k, const Form& f, std::uint64_t seed) {
  if (f.deg < 3) throw std::invalid_argument("make_curve: degree must be at least 3");
  if (f.c.size() != form::num_monomials(f.deg))
    throw std::invalid_argument("make_curve: coefficient count does not match the degree");
  std::array<Form, 3> partials;
  bool all_zero = true;
  for (int v = 0; v < 3; ++v) {
    partials[v] = form::partial(k, f, v);
    all_zero = all_zero && form::is_zero(k, partials[v]);
  }
  if (all_zero) throw std::invalid_argument("make_curve: partial derivatives vanish identically");
  Rng rng(seed + 101);
  for (int round = 0; round < 2; ++round) {
    Form combo;
    do {
      combo = form::zero(k, f.deg - 1);
      for (int v = 0; v < 3; ++v) combo = form::add(k, combo, form::scale(k, partials[v], k.random(rng)));
    } while (form::is_zero(k, combo));
    std::vector<CurvePoint> sing;
    try {
      sing = common_zeros(k, {f, combo, partials[0], partials[1], partials[2]}, seed + 7 * round + 1);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("make_curve: form has a repeated or common factor");
    }
    if (!sing.empty()) throw std::invalid_argument("make_curve: curve is singular");
  }
  PlaneCurve c{k, f, f.deg, 0, 0, 0};
  c.genus = (f.deg - 1) * (f.deg - 2) / 2;
  c.gonality = f.deg - 1;
  c.canonical_twist = f.deg - 3;
  return c;
}

BranchSeries branch_series(const PlaneCurve& c, const CurvePoint& p, int precision) {
  if (precision < 1) throw std::invalid_argument("branch_series: precision must be positive");
  const ExtField& l = *p.field;
  const Fq& k = c.field;
  if (!l.is_zero(form::eval(k, c.F, l, p.x)))
    throw std::invalid_argument("branch_series: point is not on the curve");
  const int chart = p.chart();
  const int a = chart == 0 ? 1 : 0, b = chart == 2 ? 1 : 2;
  BranchSeries bs;
  bs.point = p;
  bs.chart = chart;
  bs.precision = precision;
  if (!l.is_zero(form::eval(k, form::partial(k, c.F, b), l, p.x))) {
    bs.uniformizer = a;
    bs.dependent = b;
  } else if (!l.is_zero(form::eval(k, form::partial(k, c.F, a), l, p.x))) {
    bs.uniformizer = b;
    bs.dependent = a;
  } else {
    throw std::runtime_error("branch_series: both partial derivatives vanish");
  }
  const std::size_t n = precision;
  for (int v = 0; v < 3; ++v) {
    bs.coords[v].assign(n, l.zero());
    bs.coords[v][0] = p.x[v];
  }
  if (n > 1) bs.coords[bs.uniformizer][1] = l.one();
  const Form fd = form::partial(k, c.F, bs.dependent);
  // Newton iteration doubles the number of correct coefficients per step.
  std::size_t prec = 1;
  while (prec < n) {
    prec = std::min(2 * prec, n);
    auto phi = eval_along(k, c.F, l, bs.coords, prec);
    auto dphi = eval_along(k, fd, l, bs.coords, prec);
    auto corr = series_mul(l, phi, series_inv(l, dphi, prec), prec);
    for (std::size_t i = 0; i < prec; ++i)
      bs.coords[bs.dependent][i] = l.sub(bs.coords[bs.dependent][i], corr[i]);
  }
  return bs;
}

std::vector<ExtField::Elem> form_along(const PlaneCurve& c, const BranchSeries& b, const Form& g,
                                       int n) {
  if (n > b.precision) throw std::invalid_argument("form_along: precision exceeds the series");
  return eval_along(c.field, g, *b.point.field, b.coords, n);
}

int ord_at(const PlaneCurve& c, const Form& g, const CurvePoint& p) {
  if (form::is_zero(c.field, g)) throw std::invalid_argument("ord_at: zero form");
  const int bound = c.degree * g.deg + 1;
  int n = std::min(bound, 64);
  for (;;) {
    auto b = branch_series(c, p, n);
    auto s = form_along(c, b, g, n);
    for (int i = 0; i < n; ++i)
      if (!p.field->is_zero(s[i])) return i;
    if (n >= bound) break;
    n = bound;
  }
  throw std::invalid_argument("ord_at: the curve equation divides the form");
}

Matrix<Fq> vanishing_conditions(const PlaneCurve& c, const BranchSeries& b, int n, int m) {
  const ExtField& l = *b.point.field;
  const std::size_t j = l.degree();
  Matrix<Fq> out = Matrix<Fq>::zeros(c.field, static_cast<std::size_t>(n) * j, form::num_monomials(m));
  if (n <= 0) return out;
  if (n > b.precision) throw std::invalid_argument("vanishing_conditions: precision exceeds the series");
  std::array<std::vector<Series>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    Series one(n, l.zero());
    one[0] = l.one();
    pw[v].push_back(std::move(one));
    Series cv(b.coords[v].begin(), b.coords[v].begin() + n);
    for (int e = 1; e <= m; ++e) pw[v].push_back(series_mul(l, pw[v].back(), cv, n));
  }
  const auto& mons = form::monomials(m);
  for (std::size_t col = 0; col < mons.size(); ++col) {
    auto s = series_mul(l, pw[0][mons[col].a], pw[1][mons[col].b], n);
    s = series_mul(l, s, pw[2][mons[col].c], n);
    for (int kk = 0; kk < n; ++kk)
      for (std::size_t r = 0; r < j; ++r) out(kk * j + r, col) = s[kk][r];
  }
  return out;
}

std::vector<CurvePoint> all_rational_points(const PlaneCurve& c) {
  const Fq& k = c.field;
  std::vector<CurvePoint> out;
  for (std::uint64_t a = 0; a < k.order(); ++a) {
    const auto x0 = static_cast<Fq::Elem>(a);
    auto h = form::restrict_to_line(k, c.F, {x0, 0, 1}, {0, 1, 0});
    if (h.is_zero()) throw std::logic_error("all_rational_points: curve contains a line");
    for (auto y : roots(k, h)) out.push_back(rational_point(k, {x0, y, 1}));
  }
  auto h = form::restrict_to_line(k, c.F, {0, 1, 0}, {1, 0, 0});
  for (auto x : roots(k, h)) out.push_back(rational_point(k, {x, 1, 0}));
  if (form::eval(k, c.F, k, {1, 0, 0}) == 0) out.push_back(rational_point(k, {1, 0, 0}));
  return out;
}

std::vector<CurvePoint> rational_points(const PlaneCurve& c, std::size_t n, std::uint64_t seed) {
  const Fq& k = c.field;
  Rng rng(seed);
  if (k.order() <= 4096) {
    auto pts = all_rational_points(c);
    if (pts.size() < n)
      throw std::runtime_error("rational_points: the curve has only " + std::to_string(pts.size()) +
                               " points over the field");
    for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[draw(rng, i)]);
    pts.resize(n);
    return pts;
  }
  std::vector<CurvePoint> out;
  const std::size_t max_lines = 200 * n + 1000;
  for (std::size_t it = 0; it < max_lines && out.size() < n; ++it) {
    const auto x0 = k.random(rng);
    auto h = form::restrict_to_line(k, c.F, {x0, 0, 1}, {0, 1, 0});
    for (auto y : roots(k, h, it)) {
      auto p = rational_point(k, {x0, y, 1});
      if (std::find(out.begin(), out.end(), p) == out.end() && out.size() < n) out.push_back(p);
    }
  }
  if (out.size() < n) throw std::runtime_error("rational_points: not enough points found");
  return out;
}

Divisor intersection_divisor(const PlaneCurve& c, const Form& g, std::uint64_t seed) {
  if (form::is_zero(c.field, g)) throw std::invalid_argument("intersection_divisor: zero form");
  Divisor d;
  if (g.deg == 0) return d;
  std::vector<CurvePoint> pts;
  try {
    pts = common_zeros(c.field, {c.F, g}, seed);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("intersection_divisor: the curve equation divides the form");
  }
  int total = 0;
  for (auto& p : pts) {
    const int m = ord_at(c, g, p);
    total += m * static_cast<int>(p.degree());
    d.terms.push_back({std::move(p), m});
  }
  if (total != c.degree * g.deg)
    throw std::logic_error("intersection_divisor: multiplicities do not add up to the Bezout number");
  return d;
}

}  // namespace plcert
