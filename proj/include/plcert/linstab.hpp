#ifndef PLCERT_LINSTAB_HPP
#define PLCERT_LINSTAB_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "plcert/rational.hpp"
#include "plcert/riemann_roch.hpp"

namespace plcert {

/// A linear series V inside a complete system |D|.
struct LinearSeries {
  SectionSpace space;
  std::vector<Form> basis;  // V, as degree-m forms of the space
  int rank = 0;             // dim V - 1
  int degree_L = 0;         // deg D
  int base_degree = 0;      // degree of the base divisor of V
  int degree = 0;           // degree of the line bundle generated by V
  bool generating = false;  // base point free
};

/// V = span of the given coefficient vectors (in the basis of S), or all of
/// H^0 when no selection is given. Throws std::invalid_argument for a
/// dependent selection or dim V < 2.
LinearSeries make_series(const PlaneCurve& c, const SectionSpace& s,
                         const std::optional<std::vector<std::vector<Fq::Elem>>>& selection = std::nullopt);

/// mu(M_{V,L}) = -deg L / rank; requires a generating pair.
Rational slope_M(const LinearSeries& v);

struct SingularPoint {
  CurvePoint point;
  int multiplicity = 0;
  bool ordinary = true;  // tangent cone squarefree
};

struct ImageModel {
  Form equation;  // image curve, degree e
  int degree = 0;
  int map_degree = 0;  // e * map_degree = deg L
  std::vector<SingularPoint> singular;
  int max_multiplicity = 1;
  bool singular_computed = false;
};

/// Image of C under a rank-2 generating series, by interpolation through
/// sampled image points (Bezout-sufficient in number), validated on 32
/// held-out samples. Throws std::runtime_error when the degree found does
/// not divide deg L or the interpolation kernel is not one-dimensional.
ImageModel image_curve(const PlaneCurve& c, const LinearSeries& v, std::uint64_t seed = 0);

/// Singular points of an image curve with multiplicities (lowest degree of
/// the local Taylor expansion) and the ordinary flag.
std::vector<SingularPoint> singular_points(const Fq& k, const Form& g, std::uint64_t seed = 0);
/// Fills model.singular and model.max_multiplicity.
void analyze_singularities(const Fq& k, ImageModel& model, std::uint64_t seed = 0);

/// Multiplicity of the plane curve g at a point: the lowest total degree in
/// the Taylor expansion of g at p. Returns 0 off the curve.
int point_multiplicity(const Fq& k, const Form& g, const CurvePoint& p, bool* ordinary = nullptr);

/// (e-1)(e-2)/2 - sum of deg(p) m(m-1)/2 over the singular points.
int genus_from_singularities(const ImageModel& model);

/// Degree of the base divisor of the pencil spanned by two sections of V
/// (forms of the space). deg L' = deg L - result.
int pencil_base_degree(const PlaneCurve& c, const LinearSeries& v, const Form& s1, const Form& s2);

/// The pencil of V obtained by projecting the image from q (the sections
/// sum l_i G_i with l a line through q), over the residue field of q.
int projection_pencil_base_degree(const PlaneCurve& c, const LinearSeries& v, const CurvePoint& q);

enum class Verdict { Stable, Semistable, Unstable };
const char* to_string(Verdict v);

/// The multiplicity criterion: compares 2 * max multiplicity with deg L.
Verdict classify(int max_multiplicity, int degree_L);

struct StabilityVerdict {
  Verdict verdict = Verdict::Stable;
  Rational threshold;  // deg L / 2
  int max_multiplicity = 1;
  std::optional<SingularPoint> witness;  // the worst point when not Stable
  std::optional<int> witness_pencil_base;
};

/// Linear (semi)stability of a birational rank-2 generating series by the
/// image-multiplicity criterion: stable iff every point of the image has
/// multiplicity < deg L / 2, semistable iff <=.
StabilityVerdict linear_stability_verdict(const PlaneCurve& c, const LinearSeries& v, ImageModel& model,
                                          std::uint64_t seed = 0);

}  // namespace plcert

#endif  // PLCERT_LINSTAB_HPP
