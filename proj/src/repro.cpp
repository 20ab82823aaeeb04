#include "plcert/repro.hpp"

#include <stdexcept>

namespace plcert {

W113Search::W113Search(const PlaneCurve& c, std::uint64_t seed)
    : c_(&c), rng_(seed * 0xd1b54a32d192ed03ULL + 1) {
  pool_ = c.field.order() <= 4096 ? all_rational_points(c) : rational_points(c, 4096, seed);
  if (pool_.size() < 13) throw std::invalid_argument("search_w113: fewer than 13 rational points");
}

std::optional<SearchHit> W113Search::next(std::uint64_t max_tries) {
  while (tries_ < max_tries) {
    ++tries_;
    std::vector<std::size_t> idx;
    while (idx.size() < 13) {
      const std::size_t i = draw(rng_, pool_.size());
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    std::vector<CurvePoint> pts;
    for (auto i : idx) pts.push_back(pool_[i]);
    if (quartic_evaluation_rank(*c_, pts) != 12) continue;
    SearchHit hit;
    for (const auto& p : pts) hit.d.terms.push_back({p, 1});
    hit.d = normalize(hit.d);
    for (const auto& t : hit.d.terms) hit.points.push_back(t.point);
    hit.tries = tries_;
    return hit;
  }
  return std::nullopt;
}

SearchHit search_w113(const PlaneCurve& c, std::uint64_t seed, std::uint64_t max_tries) {
  W113Search s(c, seed);
  auto hit = s.next(max_tries);
  if (!hit) throw std::runtime_error("search_w113: max_tries exhausted");
  return *hit;
}

std::size_t quartic_evaluation_rank(const PlaneCurve& c, const std::vector<CurvePoint>& pts) {
  const Fq& k = c.field;
  const auto& mons = form::monomials(4);
  Matrix<Fq> m = Matrix<Fq>::zeros(k, pts.size(), mons.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].degree() != 1) throw std::invalid_argument("quartic_evaluation_rank: points must be rational");
    std::array<Fq::Elem, 3> x{pts[i].x[0][0], pts[i].x[1][0], pts[i].x[2][0]};
    for (std::size_t j = 0; j < mons.size(); ++j)
      m(i, j) = k.mul(k.mul(k.pow(x[0], mons[j].a), k.pow(x[1], mons[j].b)), k.pow(x[2], mons[j].c));
  }
  return linalg::rank(k, m);
}

LinearSeries build_L(const PlaneCurve& c, const Divisor& d, std::uint64_t seed) {
  auto s = rr_space(c, subtract(canonical_divisor(c), d), {seed, 0});
  if (s.h0() != 3) throw std::runtime_error("build_L: h0(K - D) != 3");
  return make_series(c, s);
}

CertifyResult certify(const PlaneCurve& c, const Divisor& d, const LinearSeries& l, std::uint64_t seed) {
  CertifyResult r;
  auto reject = [&](int gate, std::string why) {
    r.gate = gate;
    r.reason = std::move(why);
    return r;
  };
  Certification cert;
  cert.d = d;
  cert.l = l;
  cert.h0_L = static_cast<int>(l.space.h0());
  if (!l.generating) return reject(1, "base locus is not empty");

  try {
    cert.image = image_curve(c, l, seed);
  } catch (const std::runtime_error& e) {
    return reject(2, e.what());
  }
  if (cert.image.map_degree != 1 || cert.image.degree != l.degree_L)
    return reject(2, "image is not birational of degree deg L");

  cert.stability = linear_stability_verdict(c, l, cert.image, seed);
  if (cert.stability.verdict != Verdict::Stable)
    return reject(3, std::string("linear verdict is ") + to_string(cert.stability.verdict));

  const Divisor b = hyperplane_divisor(1);
  cert.degree_B = degree(c, b);
  cert.h0_B = h0(c, b, seed);
  cert.h0_KBL = h0(c, subtract(subtract(canonical_divisor(c), b), l.space.divisor), seed);
  if (cert.h0_KBL != 0) return reject(4, "h0(K - B - L) > 0");

  const Divisor lb = add(l.space.divisor, b);
  cert.h0_LB = h0(c, lb, seed);
  if (cert.h0_LB != degree(c, lb) + 1 - c.genus) return reject(5, "h0(L + B) differs from deg + 1 - g");

  try {
    auto mm = mult_map(c, l, rr_space(c, b, {seed, 0}), seed);
    cert.kernel_dim = mm.kernel.size();
    cert.syzygy = destabilizer_certificate(c, l, seed);
  } catch (const std::exception& e) {
    return reject(6, e.what());
  }
  r.accepted = true;
  r.cert = std::move(cert);
  return r;
}

}  // namespace plcert
