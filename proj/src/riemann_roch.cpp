#include "plcert/riemann_roch.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace plcert {

namespace {

struct Split {
  std::vector<DivisorTerm> pos, neg;  // neg holds positive multiplicities
  int deg_pos = 0, deg_neg = 0;
};

Split split(const Divisor& d) {
  Split s;
  for (const auto& t : d.terms) {
    const int j = static_cast<int>(t.point.degree());
    if (t.mult > 0) {
      s.pos.push_back(t);
      s.deg_pos += t.mult * j;
    } else if (t.mult < 0) {
      s.neg.push_back({t.point, -t.mult});
      s.deg_neg += -t.mult * j;
    }
  }
  return s;
}

// Rows expressing ord_P(G) >= n_P for every term, on forms of degree m.
Matrix<Fq> conditions(const PlaneCurve& c, const std::vector<DivisorTerm>& terms, int m) {
  Matrix<Fq> out(0, form::num_monomials(m), 0);
  for (const auto& t : terms) {
    auto b = branch_series(c, t.point, t.mult);
    auto rows = vanishing_conditions(c, b, t.mult, m);
    for (std::size_t i = 0; i < rows.rows(); ++i) out.append_row(rows.row(i));
  }
  return out;
}

std::vector<Form> kernel_forms(const Fq& k, const Matrix<Fq>& cond, int m) {
  std::vector<Form> out;
  if (m < 0) return out;
  if (cond.rows() == 0) {
    for (const auto& e : form::monomials(m)) out.push_back(form::monomial(k, e.a, e.b, e.c, k.one()));
    return out;
  }
  for (auto& v : linalg::kernel(k, cond)) out.push_back(Form{m, std::move(v)});
  return out;
}

linalg::Echelon<Fq> f_multiples(const PlaneCurve& c, int m) {
  Matrix<Fq> rows = form::multiples_matrix(c.field, c.F, m);
  if (rows.rows() == 0) rows = Matrix<Fq>(0, form::num_monomials(m), 0);
  return linalg::Echelon<Fq>(c.field, rows);
}

bool is_f_multiple(const PlaneCurve& c, const Form& g) {
  if (g.deg < c.degree) return form::is_zero(c.field, g);
  return f_multiples(c, g.deg).contains(g.c);
}

Form random_combination(const Fq& k, const std::vector<Form>& forms, Rng& rng) {
  Form r = form::zero(k, forms.front().deg);
  for (const auto& g : forms) r = form::add(k, r, form::scale(k, g, k.random(rng)));
  return r;
}

// Reduce forms modulo F and keep an echelonized independent set.
std::vector<Form> reduce_independent(const PlaneCurve& c, const std::vector<Form>& forms, int m) {
  std::vector<Form> out;
  if (forms.empty()) return out;
  auto ef = f_multiples(c, m);
  Matrix<Fq> red(0, form::num_monomials(m), 0);
  for (auto g : forms) {
    ef.reduce(g.c);
    red.append_row(g.c);
  }
  const auto piv = linalg::rref(c.field, red);
  for (std::size_t r = 0; r < piv.size(); ++r) out.push_back(Form{m, red.row(r)});
  return out;
}

// Span of F * S_{t-d} + G0 * (forms of degree t - a vanishing on B).
linalg::Echelon<Fq> target_span(const PlaneCurve& c, const Form& g0, const std::vector<DivisorTerm>& b,
                                int t) {
  const Fq& k = c.field;
  Matrix<Fq> rows(0, form::num_monomials(t), 0);
  auto fm = form::multiples_matrix(k, c.F, t);
  for (std::size_t i = 0; i < fm.rows(); ++i) rows.append_row(fm.row(i));
  const int n = t - g0.deg;
  if (n >= 0)
    for (const auto& x : kernel_forms(k, conditions(c, b, n), n)) rows.append_row(form::mul(k, g0, x).c);
  return linalg::Echelon<Fq>(k, rows);
}

bool vanishes_at(const PlaneCurve& c, const Form& g, const CurvePoint& p) {
  return p.field->is_zero(form::eval(c.field, g, *p.field, p.x));
}

}  // namespace

Divisor normalize(const Divisor& d) {
  std::map<std::string, DivisorTerm> acc;
  for (const auto& t : d.terms) {
    auto [it, inserted] = acc.try_emplace(t.point.key(), t);
    if (!inserted) it->second.mult += t.mult;
  }
  Divisor out{d.hyperplane, {}};
  for (auto& [key, t] : acc)
    if (t.mult != 0) out.terms.push_back(std::move(t));
  return out;
}

Divisor add(const Divisor& a, const Divisor& b) {
  Divisor r = a;
  r.hyperplane += b.hyperplane;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return normalize(r);
}

Divisor negate(const Divisor& a) {
  Divisor r = a;
  r.hyperplane = -r.hyperplane;
  for (auto& t : r.terms) t.mult = -t.mult;
  return r;
}

Divisor subtract(const Divisor& a, const Divisor& b) { return add(a, negate(b)); }

Divisor point_divisor(const CurvePoint& p, int mult) { return Divisor{0, {{p, mult}}}; }

Divisor hyperplane_divisor(int h) { return Divisor{h, {}}; }

Divisor canonical_divisor(const PlaneCurve& c) { return Divisor{c.canonical_twist, {}}; }

int degree(const PlaneCurve& c, const Divisor& d) {
  int deg = d.hyperplane * c.degree;
  for (const auto& t : d.terms) deg += t.mult * static_cast<int>(t.point.degree());
  return deg;
}

int multiplicity(const Divisor& d, const CurvePoint& p) {
  int m = 0;
  for (const auto& t : d.terms)
    if (t.point == p) m += t.mult;
  return m;
}

int scheme_length(const PlaneCurve& c, const Form& g0, const std::vector<Form>& extras) {
  return scheme_length_over(c.field, c.F, g0, extras);
}

SectionSpace rr_space(const PlaneCurve& c, const Divisor& d, const RROptions& opt) {
  const Fq& k = c.field;
  SectionSpace s;
  s.divisor = normalize(d);
  const Split sp = split(s.divisor);
  const Form one = form::monomial(k, 0, 0, 0, k.one());
  s.anchor = one;
  s.companion = one;
  if (sp.pos.empty()) {
    s.m = s.divisor.hyperplane;
    if (s.m >= 0) s.basis = reduce_independent(c, kernel_forms(k, conditions(c, sp.neg, s.m), s.m), s.m);
    return s;
  }

  // Smallest anchor degree admitting a form through A that is nonzero on C.
  int a = 0;
  for (;; ++a) {
    auto ker = kernel_forms(k, conditions(c, sp.pos, a), a);
    if (ker.size() > form::num_monomials(a - c.degree)) break;
  }
  a += opt.extra_anchor_degree;

  Rng rng(opt.seed * 0x2545f4914f6cdd1dULL + 3);
  for (int attempt = 0; attempt < 12; ++attempt) {
    const int ag = a + attempt / 3;
    auto kg = kernel_forms(k, conditions(c, sp.pos, ag), ag);
    Form g0 = random_combination(k, kg, rng);
    if (is_f_multiple(c, g0)) continue;
    for (int ap = ag; ap <= ag + 2; ++ap) {
      auto kh = kernel_forms(k, conditions(c, sp.pos, ap), ap);
      for (int tries = 0; tries < 4; ++tries) {
        Form h = random_combination(k, kh, rng);
        if (is_f_multiple(c, h)) continue;
        bool ok = true;
        for (const auto& t : sp.neg)
          if (vanishes_at(c, h, t.point)) ok = false;
        if (!ok || scheme_length(c, g0, {h}) != sp.deg_pos) continue;

        s.anchor = g0;
        s.companion = h;
        s.m = s.divisor.hyperplane + ag;
        if (s.m < 0) return s;
        const int t = s.m + ap;
        auto target = target_span(c, g0, sp.neg, t);
        const auto& mons = form::monomials(s.m);
        Matrix<Fq> map = Matrix<Fq>::zeros(k, form::num_monomials(t), mons.size());
        for (std::size_t j = 0; j < mons.size(); ++j) {
          auto v = form::shift(k, h, mons[j]).c;
          target.reduce(v);
          for (std::size_t i = 0; i < v.size(); ++i) map(i, j) = v[i];
        }
        std::vector<Form> ker;
        for (auto& v : linalg::kernel(k, map)) ker.push_back(Form{s.m, std::move(v)});
        s.basis = reduce_independent(c, ker, s.m);
        return s;
      }
    }
  }
  throw std::runtime_error("rr_space: could not find an admissible anchor pair");
}

int h0(const PlaneCurve& c, const Divisor& d, std::uint64_t seed) {
  return static_cast<int>(rr_space(c, d, {seed, 0}).h0());
}

int h1(const PlaneCurve& c, const Divisor& d, std::uint64_t seed) {
  return h0(c, subtract(canonical_divisor(c), d), seed);
}

bool contains(const PlaneCurve& c, const SectionSpace& s, const Form& g) {
  if (g.deg != s.m) return false;
  if (is_f_multiple(c, g)) return true;
  const Split sp = split(s.divisor);
  if (sp.pos.empty()) {
    for (const auto& t : sp.neg)
      if (ord_at(c, g, t.point) < t.mult) return false;
    return true;
  }
  const int t = s.m + s.companion.deg;
  auto target = target_span(c, s.anchor, sp.neg, t);
  return target.contains(form::mul(c.field, g, s.companion).c);
}

int section_order(const PlaneCurve& c, const SectionSpace& s, const Form& g, const CurvePoint& p) {
  const int mult = multiplicity(s.divisor, p);
  int r = ord_at(c, g, p) + mult;
  if (s.anchor.deg > 0) r -= ord_at(c, s.anchor, p);
  return r;
}

int base_degree(const PlaneCurve& c, const SectionSpace& s, const std::vector<Form>& sections) {
  if (sections.empty()) throw std::invalid_argument("base_degree: no sections");
  const int len = scheme_length(c, sections.front(),
                                std::vector<Form>(sections.begin() + 1, sections.end()));
  return len - (c.degree * s.m - degree(c, s.divisor));
}

Divisor base_locus(const PlaneCurve& c, const SectionSpace& s, std::optional<std::vector<Form>> sections) {
  const std::vector<Form>& gens = sections ? *sections : s.basis;
  if (gens.empty()) throw std::invalid_argument("base_locus: the linear system is empty");
  const int deg = base_degree(c, s, gens);
  Divisor out;
  if (deg == 0) return out;
  auto min_order = [&](const CurvePoint& p) {
    int m = section_order(c, s, gens.front(), p);
    for (std::size_t i = 1; i < gens.size(); ++i) m = std::min(m, section_order(c, s, gens[i], p));
    return m;
  };
  int found = 0;
  std::vector<std::string> seen;
  for (const auto& t : s.divisor.terms) {
    seen.push_back(t.point.key());
    const int m = min_order(t.point);
    if (m > 0) {
      out.terms.push_back({t.point, m});
      found += m * static_cast<int>(t.point.degree());
    }
  }
  if (found < deg) {
    std::vector<Form> eqs{c.F};
    eqs.insert(eqs.end(), gens.begin(), gens.end());
    for (const auto& p : common_zeros(c.field, eqs, s.m)) {
      if (std::find(seen.begin(), seen.end(), p.key()) != seen.end()) continue;
      const int m = min_order(p);
      if (m > 0) {
        out.terms.push_back({p, m});
        found += m * static_cast<int>(p.degree());
      }
    }
  }
  if (found != deg) throw std::logic_error("base_locus: located points disagree with the length count");
  return normalize(out);
}

long long rho(long long g, long long r, long long d) { return g - (r + 1) * (g - d + r); }

}  // namespace plcert
