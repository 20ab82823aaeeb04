#include "plcert/syzygy.hpp"

#include "plcert/resultant.hpp"

namespace plcert {

namespace {

Matrix<Fq> random_invertible(const Fq& k, Rng& rng) {
  for (;;) {
    Matrix<Fq> m = Matrix<Fq>::zeros(k, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = k.random(rng);
    if (linalg::rank(k, m) == 3) return m;
  }
}

// Exact test; the change of coordinates only has to make both forms monic in z.
bool coprime(const Fq& k, const Form& g, const Form& h, Rng& rng) {
  if (g.deg == 0 || h.deg == 0) return true;
  for (int tries = 0; tries < 200; ++tries) {
    const auto m = random_invertible(k, rng);
    const Form tg = form::compose_linear(k, g, m), th = form::compose_linear(k, h, m);
    if (tg.c[form::index(g.deg, 0, 0)] == 0 || th.c[form::index(h.deg, 0, 0)] == 0) continue;
    return !resultant(k, form::as_bivariate(k, tg, 2, 0), form::as_bivariate(k, th, 2, 0)).is_zero();
  }
  throw std::runtime_error("no_common_factor: field too small for a monic change of coordinates");
}

bool zero_on_curve(const PlaneCurve& c, const Form& g) {
  if (form::is_zero(c.field, g)) return true;
  if (g.deg < c.degree) return false;
  auto m = form::multiples_matrix(c.field, c.F, g.deg);
  linalg::Echelon<Fq> e(c.field, m);
  return e.contains(g.c);
}

bool trivially_anchored(const SectionSpace& s) {
  for (const auto& t : s.divisor.terms)
    if (t.mult > 0) return false;
  return true;
}

}  // namespace

MultiplicationMap mult_map(const PlaneCurve& c, const LinearSeries& v, const SectionSpace& aux,
                           std::uint64_t seed) {
  if (!trivially_anchored(v.space) || !trivially_anchored(aux))
    throw std::invalid_argument("mult_map: both spaces need divisors of the form hH - B");
  const Fq& k = c.field;
  MultiplicationMap out;
  out.source_dim = v.basis.size() * aux.h0();
  const Divisor td = add(v.space.divisor, aux.divisor);
  out.target = rr_space(c, td, {seed, 0});
  const int tm = out.target.m;
  const int expected = degree(c, td) + 1 - c.genus + h1(c, td, seed + 1);
  if (static_cast<int>(out.target.h0()) != expected)
    throw std::logic_error("mult_map: target dimension disagrees with Riemann-Roch");

  linalg::Echelon<Fq> fm(k, form::multiples_matrix(k, c.F, tm));
  Matrix<Fq> basis = Matrix<Fq>::zeros(k, form::num_monomials(tm), out.target.h0());
  for (std::size_t j = 0; j < out.target.h0(); ++j)
    for (std::size_t i = 0; i < basis.rows(); ++i) basis(i, j) = out.target.basis[j].c[i];

  out.matrix = Matrix<Fq>::zeros(k, out.target.h0(), out.source_dim);
  std::size_t col = 0;
  for (const auto& g : v.basis) {
    for (const auto& l : aux.basis) {
      auto prod = form::mul(k, g, l).c;
      fm.reduce(prod);
      auto coords = linalg::solve(k, basis, prod);
      if (!coords) throw std::logic_error("mult_map: a product is not a section of the target");
      for (std::size_t i = 0; i < coords->size(); ++i) out.matrix(i, col) = (*coords)[i];
      ++col;
    }
  }
  out.rank = linalg::rank(k, out.matrix);
  out.kernel = linalg::kernel(k, out.matrix);
  return out;
}

Form syzygy_sum(const Fq& k, const std::vector<Form>& a, const std::vector<Form>& g) {
  if (a.size() != g.size() || a.empty()) throw std::invalid_argument("syzygy_sum: length mismatch");
  Form s = form::zero(k, a[0].deg + g[0].deg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Form t = form::mul(k, a[i], g[i]);
    if (t.deg != s.deg) throw std::invalid_argument("syzygy_sum: inhomogeneous terms");
    s = form::add(k, s, t);
  }
  return s;
}

bool no_common_factor(const Fq& k, const std::vector<Form>& forms, std::uint64_t seed) {
  std::vector<Form> nz;
  for (const auto& g : forms)
    if (!form::is_zero(k, g)) nz.push_back(g);
  if (nz.empty()) return false;
  for (const auto& g : nz)
    if (g.deg == 0) return true;
  if (nz.size() == 1) return false;
  for (std::size_t i = 2; i < nz.size(); ++i)
    if (nz[i].deg != nz[1].deg) throw std::invalid_argument("no_common_factor: mixed degrees");
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 11);
  for (int tries = 0; tries < 20; ++tries) {
    Form h = form::zero(k, nz[1].deg);
    for (std::size_t i = 1; i < nz.size(); ++i) h = form::add(k, h, form::scale(k, nz[i], k.random(rng)));
    if (form::is_zero(k, h)) continue;
    if (coprime(k, nz[0], h, rng)) return true;
  }
  return false;
}

SyzygyCertificate destabilizer_certificate(const PlaneCurve& c, const LinearSeries& v, std::uint64_t seed) {
  if (v.rank != 2 || !v.generating)
    throw std::invalid_argument("destabilizer_certificate: needs a generating series of rank 2");
  const Fq& k = c.field;
  const Divisor b = hyperplane_divisor(1);
  if (h0(c, subtract(subtract(canonical_divisor(c), b), v.space.divisor), seed) > 0)
    throw GenericityFailure("destabilizer_certificate: h0(K - B - L) > 0");
  const auto aux = rr_space(c, b, {seed, 0});
  const auto mm = mult_map(c, v, aux, seed);
  if (mm.kernel.empty()) throw std::logic_error("destabilizer_certificate: empty kernel");

  SyzygyCertificate cert;
  cert.g = v.basis;
  const auto& kv = mm.kernel.front();
  for (std::size_t i = 0; i < v.basis.size(); ++i) {
    Form ai = form::zero(k, aux.m);
    for (std::size_t j = 0; j < aux.h0(); ++j)
      ai = form::add(k, ai, form::scale(k, aux.basis[j], kv[i * aux.h0() + j]));
    cert.a.push_back(ai);
  }
  cert.mu_sub = Rational(-degree(c, b));
  cert.mu_m = Rational(-v.degree_L, v.rank);
  cert.verdict = cert.mu_sub > cert.mu_m ? "NotSemistable" : "Inconclusive";
  if (!zero_on_curve(c, syzygy_sum(k, cert.a, cert.g)))
    throw std::logic_error("destabilizer_certificate: kernel vector fails the identity");
  if (!no_common_factor(k, cert.g, seed))
    throw std::runtime_error("destabilizer_certificate: the basis forms share a factor");
  if (cert.verdict != "NotSemistable")
    throw std::runtime_error("destabilizer_certificate: B^* does not destabilize");
  return cert;
}

bool check_certificate(const PlaneCurve& c, const SyzygyCertificate& cert, int degree_L, int rank,
                       int degree_B) {
  const Fq& k = c.field;
  if (cert.a.size() != cert.g.size() || cert.a.empty()) return false;
  bool any = false;
  for (const auto& a : cert.a) any = any || !form::is_zero(k, a);
  if (!any) return false;
  try {
    if (!zero_on_curve(c, syzygy_sum(k, cert.a, cert.g))) return false;
    if (!no_common_factor(k, cert.g)) return false;
  } catch (const std::invalid_argument&) {
    return false;
  }
  return cert.mu_sub == Rational(-degree_B) && cert.mu_m == Rational(-degree_L, rank) &&
         cert.mu_sub > cert.mu_m && cert.verdict == "NotSemistable";
}

const char* to_string(PencilStatus s) {
  switch (s) {
    case PencilStatus::Destabilizing: return "Destabilizing";
    case PencilStatus::Boundary: return "Boundary";
    case PencilStatus::NotDestabilizing: return "NotDestabilizing";
  }
  return "?";
}

PencilComparison compare_pencil(int generated_degree, int degree_L, int rank) {
  if (rank < 1) throw std::invalid_argument("compare_pencil: rank must be positive");
  PencilComparison r;
  r.generated_degree = generated_degree;
  r.mu_pencil = Rational(-generated_degree);
  r.mu_series = Rational(-degree_L, rank);
  r.status = r.mu_pencil > r.mu_series    ? PencilStatus::Destabilizing
             : r.mu_pencil == r.mu_series ? PencilStatus::Boundary
                                          : PencilStatus::NotDestabilizing;
  return r;
}

PencilComparison pencil_to_destabilizer(const PlaneCurve& c, const LinearSeries& v, const Form& s1,
                                        const Form& s2) {
  return compare_pencil(v.degree_L - pencil_base_degree(c, v, s1, s2), v.degree_L, v.rank);
}

}  // namespace plcert
