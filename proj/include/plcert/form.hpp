#ifndef PLCERT_FORM_HPP
#define PLCERT_FORM_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "plcert/ext.hpp"
#include "plcert/gf.hpp"
#include "plcert/matrix.hpp"
#include "plcert/unipoly.hpp"

namespace plcert {

/// Homogeneous trivariate polynomial of degree `deg`, dense in graded-lex
/// order with x > y > z: x^n, x^{n-1}y, x^{n-1}z, x^{n-2}y^2, ...
template <class F>
struct FormT {
  int deg = 0;
  std::vector<typename F::Elem> c;
};

using Form = FormT<Fq>;

struct Exponents {
  int a, b, c;  // powers of x, y, z
};

inline Fq::Elem embed(const Fq&, Fq::Elem a) { return a; }
inline ExtField::Elem embed(const ExtField& L, Fq::Elem a) { return L.from_base(a); }
inline Fq::Elem scale_base(const Fq& f, Fq::Elem v, Fq::Elem s) { return f.mul(v, s); }
inline ExtField::Elem scale_base(const ExtField& L, const ExtField::Elem& v, Fq::Elem s) {
  return L.scale(v, s);
}

namespace form {

inline std::size_t num_monomials(int n) {
  return n < 0 ? 0 : static_cast<std::size_t>((n + 1) * (n + 2) / 2);
}

inline std::size_t index(int n, int a, int b) {
  const int c = n - a - b;
  const int e = n - a;
  return static_cast<std::size_t>(e * (e + 1) / 2 + c);
}

/// Exponent list of degree n in graded-lex order.
const std::vector<Exponents>& monomials(int n);

template <class F>
FormT<F> zero(const F& f, int n) {
  return FormT<F>{n, std::vector<typename F::Elem>(num_monomials(n), f.zero())};
}

template <class F>
FormT<F> monomial(const F& f, int a, int b, int c, typename F::Elem coef) {
  FormT<F> g = zero(f, a + b + c);
  g.c[index(g.deg, a, b)] = coef;
  return g;
}

/// x, y, z as linear forms (var = 0, 1, 2).
template <class F>
FormT<F> variable(const F& f, int var) {
  return monomial(f, var == 0, var == 1, var == 2, f.one());
}

template <class F>
bool is_zero(const F& f, const FormT<F>& g) {
  for (const auto& v : g.c)
    if (!f.is_zero(v)) return false;
  return true;
}

template <class F>
bool equal(const F& f, const FormT<F>& g, const FormT<F>& h) {
  if (g.deg != h.deg) return false;
  for (std::size_t i = 0; i < g.c.size(); ++i)
    if (!f.eq(g.c[i], h.c[i])) return false;
  return true;
}

template <class F>
FormT<F> add(const F& f, const FormT<F>& g, const FormT<F>& h) {
  if (g.deg != h.deg) throw std::invalid_argument("form::add: degree mismatch");
  FormT<F> r = g;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.add(r.c[i], h.c[i]);
  return r;
}

template <class F>
FormT<F> sub(const F& f, const FormT<F>& g, const FormT<F>& h) {
  if (g.deg != h.deg) throw std::invalid_argument("form::sub: degree mismatch");
  FormT<F> r = g;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.sub(r.c[i], h.c[i]);
  return r;
}

template <class F>
FormT<F> scale(const F& f, const FormT<F>& g, const typename F::Elem& s) {
  FormT<F> r = g;
  for (auto& v : r.c) v = f.mul(v, s);
  return r;
}

template <class F>
FormT<F> mul(const F& f, const FormT<F>& g, const FormT<F>& h) {
  FormT<F> r = zero(f, g.deg + h.deg);
  const auto& mg = monomials(g.deg);
  const auto& mh = monomials(h.deg);
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    if (f.is_zero(g.c[i])) continue;
    for (std::size_t j = 0; j < h.c.size(); ++j) {
      if (f.is_zero(h.c[j])) continue;
      const std::size_t k = index(r.deg, mg[i].a + mh[j].a, mg[i].b + mh[j].b);
      r.c[k] = f.add(r.c[k], f.mul(g.c[i], h.c[j]));
    }
  }
  return r;
}

/// Multiply by the monomial x^a y^b z^c.
template <class F>
FormT<F> shift(const F& f, const FormT<F>& g, const Exponents& e) {
  FormT<F> r = zero(f, g.deg + e.a + e.b + e.c);
  const auto& mg = monomials(g.deg);
  for (std::size_t i = 0; i < g.c.size(); ++i)
    r.c[index(r.deg, mg[i].a + e.a, mg[i].b + e.b)] = g.c[i];
  return r;
}

template <class F>
FormT<F> power(const F& f, const FormT<F>& g, int n) {
  FormT<F> r = monomial(f, 0, 0, 0, f.one());
  for (int i = 0; i < n; ++i) r = mul(f, r, g);
  return r;
}

/// Partial derivative with respect to variable var.
template <class F>
FormT<F> partial(const F& f, const FormT<F>& g, int var) {
  if (g.deg == 0) return zero(f, 0);
  FormT<F> r = zero(f, g.deg - 1);
  const auto& mg = monomials(g.deg);
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    int e[3] = {mg[i].a, mg[i].b, mg[i].c};
    if (e[var] == 0 || f.is_zero(g.c[i])) continue;
    const auto coef = f.mul(g.c[i], f.from_int(e[var]));
    --e[var];
    const std::size_t k = index(r.deg, e[0], e[1]);
    r.c[k] = f.add(r.c[k], coef);
  }
  return r;
}

/// Evaluate a form with coefficients in K at a point with coordinates in L.
template <class F, class L>
typename L::Elem eval(const F& f, const FormT<F>& g, const L& l,
                      const std::array<typename L::Elem, 3>& pt) {
  const int n = g.deg;
  std::array<std::vector<typename L::Elem>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].reserve(n + 1);
    pw[v].push_back(l.one());
    for (int i = 1; i <= n; ++i) pw[v].push_back(l.mul(pw[v].back(), pt[v]));
  }
  typename L::Elem acc = l.zero();
  const auto& mg = monomials(n);
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    if (f.is_zero(g.c[i])) continue;
    auto term = l.mul(l.mul(pw[0][mg[i].a], pw[1][mg[i].b]), pw[2][mg[i].c]);
    if constexpr (std::is_same_v<F, L>)
      acc = l.add(acc, l.mul(term, g.c[i]));
    else
      acc = l.add(acc, scale_base(l, term, g.c[i]));
  }
  return acc;
}

/// Lift K-coefficients into an extension.
inline FormT<ExtField> lift(const ExtField& l, const Form& g) {
  FormT<ExtField> r{g.deg, {}};
  r.c.reserve(g.c.size());
  for (auto v : g.c) r.c.push_back(l.from_base(v));
  return r;
}

/// g(M v): substitute x_i -> sum_j M(i,j) x_j.
template <class F>
FormT<F> compose_linear(const F& f, const FormT<F>& g, const Matrix<F>& m) {
  std::array<FormT<F>, 3> lin;
  for (int i = 0; i < 3; ++i) {
    lin[i] = zero(f, 1);
    for (int j = 0; j < 3; ++j) lin[i].c[index(1, j == 0, j == 1)] = m(i, j);
  }
  std::array<std::vector<FormT<F>>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(monomial(f, 0, 0, 0, f.one()));
    for (int e = 1; e <= g.deg; ++e) pw[i].push_back(mul(f, pw[i].back(), lin[i]));
  }
  FormT<F> r = zero(f, g.deg);
  const auto& mg = monomials(g.deg);
  for (std::size_t k = 0; k < g.c.size(); ++k) {
    if (f.is_zero(g.c[k])) continue;
    auto t = mul(f, mul(f, pw[0][mg[k].a], pw[1][mg[k].b]), pw[2][mg[k].c]);
    r = add(f, r, scale(f, t, g.c[k]));
  }
  return r;
}

/// Polynomial in variable `main` whose coefficients are univariate in
/// variable `aux`, with the remaining variable set to 1.
template <class F>
std::vector<UniPoly<F>> as_bivariate(const F& f, const FormT<F>& g, int main, int aux) {
  std::vector<UniPoly<F>> out(g.deg + 1);
  for (auto& p : out) p.c.assign(g.deg + 1, f.zero());
  const auto& mg = monomials(g.deg);
  for (std::size_t k = 0; k < g.c.size(); ++k) {
    const int e[3] = {mg[k].a, mg[k].b, mg[k].c};
    out[e[main]].c[e[aux]] = f.add(out[e[main]].c[e[aux]], g.c[k]);
  }
  for (auto& p : out) upoly::trim(f, p);
  return out;
}

/// Univariate restriction t -> g(A + t B).
template <class F>
UniPoly<F> restrict_to_line(const F& f, const FormT<F>& g,
                            const std::array<typename F::Elem, 3>& a,
                            const std::array<typename F::Elem, 3>& b) {
  std::array<UniPoly<F>, 3> lin;
  for (int i = 0; i < 3; ++i) lin[i] = upoly::make(f, {a[i], b[i]});
  std::array<std::vector<UniPoly<F>>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(upoly::constant(f, f.one()));
    for (int e = 1; e <= g.deg; ++e) pw[i].push_back(upoly::mul(f, pw[i].back(), lin[i]));
  }
  UniPoly<F> r;
  const auto& mg = monomials(g.deg);
  for (std::size_t k = 0; k < g.c.size(); ++k) {
    if (f.is_zero(g.c[k])) continue;
    auto t = upoly::mul(f, upoly::mul(f, pw[0][mg[k].a], pw[1][mg[k].b]), pw[2][mg[k].c]);
    r = upoly::add(f, r, upoly::scale(f, t, g.c[k]));
  }
  return r;
}

/// Forms of degree n spanned by F * (all monomials of degree n - deg F),
/// as coefficient rows.
template <class F>
Matrix<F> multiples_matrix(const F& f, const FormT<F>& g, int n) {
  Matrix<F> m(0, num_monomials(n), f.zero());
  if (n < g.deg) return m;
  for (const auto& e : monomials(n - g.deg)) m.append_row(shift(f, g, e).c);
  return m;
}

}  // namespace form
}  // namespace plcert

#endif  // PLCERT_FORM_HPP
