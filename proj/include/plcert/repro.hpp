#ifndef PLCERT_REPRO_HPP
#define PLCERT_REPRO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plcert/syzygy.hpp"

namespace plcert {

struct PipelineConfig {
  std::uint32_t prime = 31;
  unsigned ext = 1;
  std::string curve = "fermat7";          // or a path to a curve JSON file
  std::optional<std::vector<std::int64_t>> coefficients;  // graded-lex, overrides curve
  std::uint64_t seed = 0;
  std::uint64_t max_tries = 1000000;
  std::string out;
};

/// One accepted divisor of the search and the try count at which it was found.
struct SearchHit {
  Divisor d;
  std::vector<CurvePoint> points;
  std::uint64_t tries = 0;  // cumulative tries of this search when accepted
};

/// Deterministic stream of 13-point divisors D with h0(K - D) = 3: samples
/// 13 distinct K-points, accepts when the quartic evaluation matrix has rank
/// exactly 12.
class W113Search {
 public:
  W113Search(const PlaneCurve& c, std::uint64_t seed);
  /// Next hit, or nullopt once the cumulative try count reaches max_tries.
  std::optional<SearchHit> next(std::uint64_t max_tries);
  std::uint64_t tries() const { return tries_; }
  const std::vector<CurvePoint>& pool() const { return pool_; }

 private:
  const PlaneCurve* c_;
  std::vector<CurvePoint> pool_;
  Rng rng_;
  std::uint64_t tries_ = 0;
};

/// The first hit; throws std::runtime_error when max_tries is exhausted.
SearchHit search_w113(const PlaneCurve& c, std::uint64_t seed, std::uint64_t max_tries);

/// Rank of the 13 x 15 matrix of quartic monomials at the points.
std::size_t quartic_evaluation_rank(const PlaneCurve& c, const std::vector<CurvePoint>& pts);

/// L = K - D as the complete series of quartics through D. Throws
/// std::runtime_error when h0 != 3.
LinearSeries build_L(const PlaneCurve& c, const Divisor& d, std::uint64_t seed = 0);

struct Certification {
  Divisor d;
  LinearSeries l;
  ImageModel image;
  StabilityVerdict stability;
  int h0_L = 0, h0_B = 0, h0_LB = 0, h0_KBL = 0;
  int degree_B = 0;
  std::size_t kernel_dim = 0;
  SyzygyCertificate syzygy;
};

struct CertifyResult {
  bool accepted = false;
  int gate = 0;  // first failing gate, 1..6; 0 when accepted
  std::string reason;
  std::optional<Certification> cert;
};

/// Gates, in order: (1) base point free, (2) birational image of degree
/// deg L, (3) Stable multiplicity verdict, (4) h0(K - B - L) = 0,
/// (5) h0(L + B) = 8, (6) destabilizing syzygy.
CertifyResult certify(const PlaneCurve& c, const Divisor& d, const LinearSeries& l, std::uint64_t seed = 0);

}  // namespace plcert

#endif  // PLCERT_REPRO_HPP
