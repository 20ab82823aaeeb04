#ifndef PLCERT_SYZYGY_HPP
#define PLCERT_SYZYGY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "plcert/linstab.hpp"

namespace plcert {

/// V (x) H^0(B) -> H^0(L (x) B), G_i (x) l_j -> G_i l_j. Source index of
/// G_i (x) l_j is i * dim H^0(B) + j.
struct MultiplicationMap {
  std::size_t source_dim = 0;
  SectionSpace target;
  Matrix<Fq> matrix{0, 0, 0};  // target coordinates x source
  std::size_t rank = 0;
  std::vector<std::vector<Fq::Elem>> kernel;
};

/// Both spaces must come without positive points (trivial anchors): products
/// of their forms are then sections of the tensor divisor. Throws
/// std::logic_error when the target dimension disagrees with Riemann-Roch or a
/// product leaves the target.
MultiplicationMap mult_map(const PlaneCurve& c, const LinearSeries& v, const SectionSpace& aux,
                           std::uint64_t seed = 0);

/// Thrown when h0(K - B - L) > 0; the caller resamples.
struct GenericityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyzygyCertificate {
  std::vector<Form> a;  // a_i, sections of B
  std::vector<Form> g;  // G_i, the basis of V
  Rational mu_sub;      // slope of B^*: -deg B
  Rational mu_m;        // slope of M_{V,L}: -deg L / rank
  std::string verdict;  // "NotSemistable"
};

/// sum a_i G_i, expanded.
Form syzygy_sum(const Fq& k, const std::vector<Form>& a, const std::vector<Form>& g);

/// True when the forms have no common factor of positive degree. Decided by
/// resultants: G_1 and a random combination of the others are coprime iff
/// Res_z vanishes identically after a change of coordinates that makes both
/// monic in z. A false "shared" answer needs every random combination to fail.
bool no_common_factor(const Fq& k, const std::vector<Form>& forms, std::uint64_t seed = 0);

/// The destabilizing syzygy of M_L from B = O(1). Requires rank 2 and a
/// generating series with trivial anchor.
SyzygyCertificate destabilizer_certificate(const PlaneCurve& c, const LinearSeries& v, std::uint64_t seed = 0);

/// Re-checks a certificate by expansion only.
bool check_certificate(const PlaneCurve& c, const SyzygyCertificate& cert, int degree_L, int rank,
                       int degree_B);

enum class PencilStatus { Destabilizing, Boundary, NotDestabilizing };
const char* to_string(PencilStatus s);

struct PencilComparison {
  int generated_degree = 0;  // e
  Rational mu_pencil;        // -e
  Rational mu_series;        // -deg L / rank
  PencilStatus status = PencilStatus::NotDestabilizing;
};

PencilComparison compare_pencil(int generated_degree, int degree_L, int rank);

/// A pencil W inside V and its sub-object M_{W,L'}: destabilizing when
/// -e > -deg L / rank.
PencilComparison pencil_to_destabilizer(const PlaneCurve& c, const LinearSeries& v, const Form& s1,
                                        const Form& s2);

}  // namespace plcert

#endif  // PLCERT_SYZYGY_HPP
