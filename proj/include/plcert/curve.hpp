#ifndef PLCERT_CURVE_HPP
#define PLCERT_CURVE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "plcert/ext.hpp"
#include "plcert/form.hpp"
#include "plcert/gf.hpp"

namespace plcert {

/// Smooth plane curve F = 0 over K.
struct PlaneCurve {
  Fq field;
  Form F;
  int degree = 0;
  int genus = 0;
  int gonality = 0;
  int canonical_twist = 0;  // K_C = O(d - 3)
};

/// Certifies smoothness (twice, under independent random coordinate changes)
/// and fills in the numerical data. Throws std::invalid_argument when F is
/// singular, has a repeated or common factor, or has identically vanishing
/// partial derivatives.
PlaneCurve make_curve(const Fq& k, const Form& f, std::uint64_t seed = 0);

/// x^d + y^d + z^d.
Form fermat(const Fq& k, int d);

/// A closed point of P^2_K, stored over its residue field. Points are
/// canonical: the first nonzero coordinate is 1, and for degree > 1 the
/// residue field is K[t]/(m) where m is the minimal polynomial of a fixed
/// deterministic combination of the affine coordinates. Two CurvePoints
/// describe the same closed point iff they compare equal.
struct CurvePoint {
  ExtFieldPtr field;
  std::array<ExtField::Elem, 3> x;

  unsigned degree() const { return field->degree(); }
  int chart() const;
  std::string key() const;
  bool operator==(const CurvePoint& o) const;
};

/// The residue field of rational points: K[t]/(t).
ExtFieldPtr trivial_field(const Fq& k);

/// Canonicalize a point given over some extension L of K. The coordinates
/// need not generate L.
CurvePoint make_point(const Fq& k, const ExtField& l, std::array<ExtField::Elem, 3> v);
CurvePoint rational_point(const Fq& k, const std::array<Fq::Elem, 3>& v);

/// Local parametrization of the curve at a point: in the affine chart of
/// the point one coordinate is the uniformizer (value + t) and another is a
/// power series in t, truncated at t^precision.
struct BranchSeries {
  CurvePoint point;
  int chart = 0;
  int uniformizer = 0;
  int dependent = 0;
  int precision = 0;
  std::array<std::vector<ExtField::Elem>, 3> coords;  // projective coordinates as series
};

BranchSeries branch_series(const PlaneCurve& c, const CurvePoint& p, int precision);

/// G restricted to the branch, truncated at t^n (n <= precision).
std::vector<ExtField::Elem> form_along(const PlaneCurve& c, const BranchSeries& b, const Form& g,
                                       int n);

/// Valuation of G at p; throws std::invalid_argument when F divides G.
int ord_at(const PlaneCurve& c, const Form& g, const CurvePoint& p);

/// K-linear conditions "ord_p(G) >= n" on forms G of degree m: n * deg(p)
/// rows, one column per monomial.
Matrix<Fq> vanishing_conditions(const PlaneCurve& c, const BranchSeries& b, int n, int m);

/// Up to n distinct K-rational points, shuffled deterministically.
/// Throws std::runtime_error if the curve has fewer than n points over K.
std::vector<CurvePoint> rational_points(const PlaneCurve& c, std::size_t n, std::uint64_t seed);

/// Every K-rational point (enumeration over the lines x = a z and z = 0).
std::vector<CurvePoint> all_rational_points(const PlaneCurve& c);

/// Distinct common projective zeros over the algebraic closure of a list of
/// forms, as closed points. The first two forms drive the elimination and
/// must not share a factor (std::invalid_argument otherwise).
std::vector<CurvePoint> common_zeros(const Fq& k, const std::vector<Form>& forms,
                                     std::uint64_t seed);

struct DivisorTerm {
  CurvePoint point;
  int mult = 0;
};

/// h * (line section) + sum of mult * point. Keeping the hyperplane class
/// symbolic lets canonical and twisted divisors avoid explicit support.
struct Divisor {
  int hyperplane = 0;
  std::vector<DivisorTerm> terms;
};

/// The divisor of G on C (all terms, no hyperplane part). Multiplicities
/// come from ord_at and their weighted sum is checked against Bezout.
Divisor intersection_divisor(const PlaneCurve& c, const Form& g, std::uint64_t seed = 0);

}  // namespace plcert

#endif  // PLCERT_CURVE_HPP
