#ifndef PLCERT_RIEMANN_ROCH_HPP
#define PLCERT_RIEMANN_ROCH_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <optional>
#include <vector>

#include "plcert/curve.hpp"

namespace plcert {

/// Merge repeated points, drop zero terms, sort by point key.
Divisor normalize(const Divisor& d);
Divisor add(const Divisor& a, const Divisor& b);
Divisor negate(const Divisor& a);
Divisor subtract(const Divisor& a, const Divisor& b);
Divisor point_divisor(const CurvePoint& p, int mult = 1);
Divisor hyperplane_divisor(int h);
/// K_C as the twist O(d - 3).
Divisor canonical_divisor(const PlaneCurve& c);
int degree(const PlaneCurve& c, const Divisor& d);
/// Multiplicity of p in the explicit part of d.
int multiplicity(const Divisor& d, const CurvePoint& p);

/// H^0(C, O(D)) realized inside forms of degree m.
///
/// Write D = hH + A - B with A, B effective and disjoint. For A = 0 the
/// sections are degree-h forms vanishing on B. Otherwise an anchor G0 of
/// degree a through A gives O(A) = O(a)(-R) with R = div(G0) - A, and a
/// companion h0 through A, whose residual R' is disjoint from R and from B,
/// turns "div G >= R + B" into the linear condition
///   G * h0 in F * S + G0 * (forms vanishing on B)
/// in degree m + deg h0, where m = h + a. R itself is never computed.
/// Basis forms are reduced modulo multiples of F.
struct SectionSpace {
  Divisor divisor;  // normalized
  int m = 0;
  Form anchor;     // G0; the constant 1 when A = 0
  Form companion;  // h0; the constant 1 when A = 0
  std::vector<Form> basis;

  std::size_t h0() const { return basis.size(); }
};

struct RROptions {
  std::uint64_t seed = 0;
  int extra_anchor_degree = 0;  // raise deg G0 above the minimum
};

SectionSpace rr_space(const PlaneCurve& c, const Divisor& d, const RROptions& opt = {});
int h0(const PlaneCurve& c, const Divisor& d, std::uint64_t seed = 0);
/// h0(K - D).
int h1(const PlaneCurve& c, const Divisor& d, std::uint64_t seed = 0);

/// True when the degree-m form G is a section of the space (up to F).
bool contains(const PlaneCurve& c, const SectionSpace& s, const Form& g);

/// Order at p of the section represented by G (the divisor of the section
/// in |D|, not of G itself).
int section_order(const PlaneCurve& c, const SectionSpace& s, const Form& g, const CurvePoint& p);

/// Length of the zero-dimensional scheme F = G0 = extras = 0, i.e.
/// sum over curve points of min(ord G0, ord extras...). G0 must not be
/// divisible by F.
int scheme_length(const PlaneCurve& c, const Form& g0, const std::vector<Form>& extras);

/// The same count with every form over an arbitrary field (used for
/// pencils defined over a residue field).
template <class F>
int scheme_length_over(const F& f, const FormT<F>& curve, const FormT<F>& g0,
                       const std::vector<FormT<F>>& extras) {
  if (g0.deg >= curve.deg) {
    auto m = form::multiples_matrix(f, curve, g0.deg);
    const auto r = linalg::rank(f, m);
    m.append_row(g0.c);
    if (linalg::rank(f, m) == r) throw std::invalid_argument("scheme_length: anchor vanishes on the curve");
  } else if (form::is_zero(f, g0)) {
    throw std::invalid_argument("scheme_length: zero anchor");
  }
  int top = 0;
  for (const auto& e : extras) top = std::max(top, e.deg);
  const int t = curve.deg + g0.deg + top - 2;
  if (t < 0) return 0;
  Matrix<F> rows(0, form::num_monomials(t), f.zero());
  auto append = [&](const FormT<F>& g) {
    auto m = form::multiples_matrix(f, g, t);
    for (std::size_t i = 0; i < m.rows(); ++i) rows.append_row(m.row(i));
  };
  append(curve);
  append(g0);
  for (const auto& e : extras) append(e);
  return static_cast<int>(form::num_monomials(t) - linalg::rank(f, rows));
}

/// Degree of the base divisor of the span of the given sections of s.
int base_degree(const PlaneCurve& c, const SectionSpace& s, const std::vector<Form>& sections);

/// Base divisor of the complete linear system |D| (or of the given
/// sections). Throws std::invalid_argument when there are no sections.
Divisor base_locus(const PlaneCurve& c, const SectionSpace& s,
                   std::optional<std::vector<Form>> sections = std::nullopt);

/// Brill-Noether number g - (r + 1)(g - d + r).
long long rho(long long g, long long r, long long d);

}  // namespace plcert

#endif  // PLCERT_RIEMANN_ROCH_HPP
