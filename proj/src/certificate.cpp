#include "plcert/certificate.hpp"

#include <fstream>
#include <set>

namespace plcert {

using nlohmann::json;

namespace {

json encode_elem(const Fq& k, Fq::Elem a) {
  if (k.is_prime_field()) return a;
  return k.coords(a);
}

std::uint32_t residue(const Fq& k, const json& j) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0 || j.get<std::int64_t>() >= k.characteristic())
    throw SchemaError("field element out of range");
  return static_cast<std::uint32_t>(j.get<std::int64_t>());
}

Fq::Elem decode_elem(const Fq& k, const json& j) {
  if (k.is_prime_field()) return residue(k, j);
  if (!j.is_array() || j.size() != k.degree()) throw SchemaError("extension element has the wrong length");
  std::vector<std::uint32_t> c;
  for (const auto& v : j) c.push_back(residue(k, v));
  return k.from_coords(c);
}

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field: ") + key);
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return at(j, key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("wrong type for field: ") + key);
  }
}

LinearSeries series_from_forms(const PlaneCurve& c, const SectionSpace& s, const std::vector<Form>& forms) {
  const Fq& k = c.field;
  Matrix<Fq> a = Matrix<Fq>::zeros(k, form::num_monomials(s.m), s.h0());
  for (std::size_t j = 0; j < s.h0(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = s.basis[j].c[i];
  linalg::Echelon<Fq> fm(k, form::multiples_matrix(k, c.F, s.m));
  std::vector<std::vector<Fq::Elem>> sel;
  for (auto g : forms) {
    if (g.deg != s.m) throw std::invalid_argument("form of the wrong degree");
    fm.reduce(g.c);
    auto x = linalg::solve(k, a, g.c);
    if (!x) throw std::invalid_argument("form is not a section");
    sel.push_back(*x);
  }
  return make_series(c, s, sel);
}

// Zero on the curve, decided exactly: a form of degree n not divisible by F
// has at most d * n zeros on C, so vanishing at more distinct points
// (counted with residue degree) proves F | g.
bool vanishes_on_curve(const PlaneCurve& c, const std::vector<Form>& comps, const Form& g, std::uint64_t seed) {
  const Fq& k = c.field;
  const long bound = static_cast<long>(c.degree) * g.deg * comps.front().deg;
  long covered = 0;
  std::set<std::string> seen;
  Rng rng(seed + 404);
  for (int lines = 0; covered <= bound; ++lines) {
    if (lines > 100000) throw std::runtime_error("vanishes_on_curve: sampling stalled");
    std::array<Fq::Elem, 3> a{k.random(rng), k.random(rng), k.random(rng)};
    std::array<Fq::Elem, 3> b{k.random(rng), k.random(rng), k.random(rng)};
    auto r = form::restrict_to_line(k, c.F, a, b);
    if (r.degree() < 1) continue;
    for (const auto& fac : uni_factor(k, r, lines)) {
      if (fac.poly.degree() > 12) continue;
      ExtField l(k, fac.poly);
      std::array<ExtField::Elem, 3> pt;
      for (int i = 0; i < 3; ++i) pt[i] = l.add(l.from_base(a[i]), l.scale(l.gen(), b[i]));
      const auto p = make_point(k, l, pt);
      if (!seen.insert(p.key()).second) continue;
      std::array<ExtField::Elem, 3> u;
      for (int i = 0; i < 3; ++i) u[i] = form::eval(k, comps[i], *p.field, p.x);
      if (!p.field->is_zero(form::eval(k, g, *p.field, u))) return false;
      covered += static_cast<long>(p.degree());
    }
  }
  return true;
}

int delta_sum(const std::vector<SingularPoint>& s) {
  int d = 0;
  for (const auto& p : s) d += static_cast<int>(p.point.degree()) * p.multiplicity * (p.multiplicity - 1) / 2;
  return d;
}

}  // namespace

json encode_field(const Fq& k) {
  return json{{"p", k.characteristic()}, {"k", k.degree()}, {"modulus", k.modulus()}};
}

Fq decode_field(const json& j) {
  const auto p = get<std::uint32_t>(j, "p");
  const auto deg = get<unsigned>(j, "k");
  auto mod = get<std::vector<std::uint32_t>>(j, "modulus");
  if (mod.size() != deg + 1) throw SchemaError("field modulus does not match k");
  try {
    return Fq::from_modulus(p, mod);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

json encode_form(const Fq& k, const Form& g) {
  json c = json::array();
  for (auto v : g.c) c.push_back(encode_elem(k, v));
  return json{{"degree", g.deg}, {"coefficients", c}};
}

Form decode_form(const Fq& k, const json& j) {
  const int deg = get<int>(j, "degree");
  const auto& c = at(j, "coefficients");
  if (deg < 0 || !c.is_array() || c.size() != form::num_monomials(deg))
    throw SchemaError("form coefficient count does not match its degree");
  Form g = form::zero(k, deg);
  for (std::size_t i = 0; i < c.size(); ++i) g.c[i] = decode_elem(k, c[i]);
  return g;
}

json encode_point(const Fq& k, const CurvePoint& p) {
  json mod = json::array();
  for (auto v : p.field->modulus().c) mod.push_back(encode_elem(k, v));
  json xs = json::array();
  for (const auto& x : p.x) {
    json e = json::array();
    for (auto v : x) e.push_back(encode_elem(k, v));
    xs.push_back(e);
  }
  return json{{"modulus", mod}, {"coords", xs}};
}

CurvePoint decode_point(const Fq& k, const json& j) {
  const auto& mod = at(j, "modulus");
  const auto& xs = at(j, "coords");
  if (!mod.is_array() || mod.size() < 2 || !xs.is_array() || xs.size() != 3)
    throw SchemaError("malformed point");
  FqPoly m;
  for (const auto& v : mod) m.c.push_back(decode_elem(k, v));
  if (m.c.back() != k.one()) throw SchemaError("point modulus must be monic");
  std::shared_ptr<const ExtField> l;
  if (m.c.size() == 2 && m.c[0] == 0) {
    l = trivial_field(k);
  } else {
    const auto fac = uni_factor(k, m, 0);
    if (fac.size() != 1 || fac[0].multiplicity != 1)
      throw SchemaError("point modulus is not irreducible");
    l = std::make_shared<const ExtField>(k, m);
  }
  std::array<ExtField::Elem, 3> x;
  for (int i = 0; i < 3; ++i) {
    if (!xs[i].is_array() || xs[i].size() != l->degree()) throw SchemaError("point coordinate of the wrong length");
    for (const auto& v : xs[i]) x[i].push_back(decode_elem(k, v));
  }
  bool all_zero = true;
  for (const auto& v : x) all_zero = all_zero && l->is_zero(v);
  if (all_zero) throw SchemaError("point with all coordinates zero");
  CurvePoint p = make_point(k, *l, x);
  return p;
}

json encode_rational(const Rational& r) { return json{{"num", r.num}, {"den", r.den}}; }

Rational decode_rational(const json& j) {
  const auto num = get<std::int64_t>(j, "num");
  const auto den = get<std::int64_t>(j, "den");
  if (den <= 0) throw SchemaError("rational with non-positive denominator");
  Rational r(num, den);
  if (r.num != num || r.den != den) throw SchemaError("rational not in lowest terms");
  return r;
}

json encode_divisor(const Fq& k, const Divisor& d) {
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back(json{{"point", encode_point(k, t.point)}, {"mult", t.mult}});
  return json{{"hyperplane", d.hyperplane}, {"terms", terms}};
}

Divisor decode_divisor(const Fq& k, const json& j) {
  Divisor d;
  d.hyperplane = get<int>(j, "hyperplane");
  const auto& terms = at(j, "terms");
  if (!terms.is_array()) throw SchemaError("divisor terms must be an array");
  for (const auto& t : terms) d.terms.push_back({decode_point(k, at(t, "point")), get<int>(t, "mult")});
  return d;
}

json certificate_json(const PlaneCurve& c, const Certification& cert, const SearchInfo& info) {
  const Fq& k = c.field;
  json basis = json::array();
  for (const auto& g : cert.l.basis) basis.push_back(encode_form(k, g));
  json sing = json::array();
  for (const auto& s : cert.image.singular)
    sing.push_back(json{{"point", encode_point(k, s.point)}, {"multiplicity", s.multiplicity}, {"ordinary", s.ordinary}});
  json a = json::array(), g = json::array();
  for (const auto& f : cert.syzygy.a) a.push_back(encode_form(k, f));
  for (const auto& f : cert.syzygy.g) g.push_back(encode_form(k, f));
  return json{
      {"version", kCertificateVersion},
      {"field", encode_field(k)},
      {"curve", encode_form(k, c.F)},
      {"genus", c.genus},
      {"divisor", encode_divisor(k, cert.d)},
      {"L", {{"degree", cert.l.degree_L}, {"rank", cert.l.rank}, {"basis", basis}}},
      {"B", {{"degree", cert.degree_B}}},
      {"h0", {{"L", cert.h0_L}, {"B", cert.h0_B}, {"L+B", cert.h0_LB}, {"K-B-L", cert.h0_KBL}}},
      {"base_locus_empty", cert.l.generating},
      {"image",
       {{"equation", encode_form(k, cert.image.equation)},
        {"degree", cert.image.degree},
        {"map_degree", cert.image.map_degree},
        {"max_multiplicity", cert.image.max_multiplicity},
        {"delta", delta_sum(cert.image.singular)},
        {"singular", sing}}},
      {"stability",
       {{"verdict", to_string(cert.stability.verdict)},
        {"threshold", encode_rational(cert.stability.threshold)},
        {"max_multiplicity", cert.stability.max_multiplicity}}},
      {"multiplication_map",
       {{"source", cert.l.basis.size() * static_cast<std::size_t>(cert.h0_B)},
        {"target", cert.h0_LB},
        {"kernel_dim", cert.kernel_dim}}},
      {"syzygy",
       {{"a", a},
        {"g", g},
        {"mu_sub", encode_rational(cert.syzygy.mu_sub)},
        {"mu_m", encode_rational(cert.syzygy.mu_m)},
        {"verdict", cert.syzygy.verdict}}},
      {"slopes", {{"B_dual", encode_rational(cert.syzygy.mu_sub)}, {"M_L", encode_rational(cert.syzygy.mu_m)}}},
      {"search", {{"curve", info.curve}, {"seed", info.seed}, {"tries", info.tries}}},
  };
}

std::string VerifyReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
  return "";
}

VerifyReport verify_certificate(const json& j) {
  VerifyReport rep;
  auto check = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };
  auto finish = [&] {
    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.ok;
    return rep;
  };
  if (!j.is_object()) throw SchemaError("certificate must be a JSON object");
  if (!check("version", get<std::string>(j, "version") == kCertificateVersion)) return finish();

  const Fq k = decode_field(at(j, "field"));
  const Form f = decode_form(k, at(j, "curve"));
  PlaneCurve c;
  try {
    c = make_curve(k, f);
  } catch (const std::invalid_argument& e) {
    check("curve smooth", false, e.what());
    return finish();
  }
  check("genus", get<int>(j, "genus") == c.genus);

  // Membership and shape of D.
  const Divisor d = decode_divisor(k, at(j, "divisor"));
  bool on_curve = true, rational = true, reduced = true;
  std::set<std::string> keys;
  for (const auto& t : d.terms) {
    on_curve = on_curve && t.point.field->is_zero(form::eval(k, c.F, *t.point.field, t.point.x));
    rational = rational && t.point.degree() == 1;
    reduced = reduced && t.mult == 1 && keys.insert(t.point.key()).second;
  }
  if (!check("divisor points on curve", on_curve)) return finish();
  check("divisor shape", d.hyperplane == 0 && rational && reduced && degree(c, d) == 13,
        "13 distinct rational points");

  // L = K - D and the h0 ledger.
  const auto& jl = at(j, "L");
  const auto& jh = at(j, "h0");
  const auto s = rr_space(c, subtract(canonical_divisor(c), d));
  check("h0(L)", static_cast<int>(s.h0()) == get<int>(jh, "L"), std::to_string(s.h0()));
  check("deg L", get<int>(jl, "degree") == degree(c, s.divisor) && degree(c, s.divisor) == 15);
  const Divisor b = hyperplane_divisor(1);
  const int deg_b = degree(c, b);
  check("deg B", get<int>(at(j, "B"), "degree") == deg_b);
  check("h0(B)", get<int>(jh, "B") == h0(c, b));
  const Divisor lb = add(s.divisor, b);
  const int h0_lb = h0(c, lb);
  check("h0(L+B)", get<int>(jh, "L+B") == h0_lb, std::to_string(h0_lb));
  const int h0_kbl = h0(c, subtract(subtract(canonical_divisor(c), b), s.divisor));
  check("h0(K-B-L)", get<int>(jh, "K-B-L") == h0_kbl && h0_kbl == 0, std::to_string(h0_kbl));

  std::vector<Form> basis;
  const auto& jb = at(jl, "basis");
  if (!jb.is_array()) throw SchemaError("L.basis must be an array");
  for (const auto& g : jb) basis.push_back(decode_form(k, g));
  LinearSeries v;
  try {
    v = series_from_forms(c, s, basis);
  } catch (const std::invalid_argument& e) {
    check("L basis spans H0(L)", false, e.what());
    return finish();
  }
  if (!check("L basis spans H0(L)", v.basis.size() == s.h0())) return finish();
  check("rank", get<int>(jl, "rank") == v.rank && v.rank == 2);
  check("base locus", get<bool>(j, "base_locus_empty") == v.generating && v.generating);
  if (!v.generating) return finish();

  // Image curve: recomputed and compared; the equation is also checked on C.
  const auto& ji = at(j, "image");
  const Form eq = decode_form(k, at(ji, "equation"));
  ImageModel model;
  try {
    model = image_curve(c, v, 0);
  } catch (const std::runtime_error& e) {
    check("image", false, e.what());
    return finish();
  }
  check("image equation", form::equal(k, model.equation, eq));
  check("image equation vanishes on the image", vanishes_on_curve(c, v.basis, eq, 0));
  check("image degree", get<int>(ji, "degree") == model.degree && model.degree == v.degree_L);
  check("map degree", get<int>(ji, "map_degree") == model.map_degree && model.map_degree == 1);

  // Singular list: every entry checked, then three pencil spot-checks.
  std::vector<SingularPoint> listed;
  const auto& js = at(ji, "singular");
  if (!js.is_array()) throw SchemaError("image.singular must be an array");
  for (const auto& e : js)
    listed.push_back({decode_point(k, at(e, "point")), get<int>(e, "multiplicity"), get<bool>(e, "ordinary")});
  bool entries_ok = true;
  int max_m = 1;
  std::set<std::string> seen;
  for (const auto& sp : listed) {
    bool ordinary = true;
    const int m = point_multiplicity(k, eq, sp.point, &ordinary);
    entries_ok = entries_ok && m == sp.multiplicity && m >= 2 && ordinary == sp.ordinary && ordinary &&
                 seen.insert(sp.point.key()).second;
    max_m = std::max(max_m, m);
  }
  check("singular points", entries_ok);
  const int delta = delta_sum(listed);
  const int arith = (model.degree - 1) * (model.degree - 2) / 2;
  check("genus cross-check", get<int>(ji, "delta") == delta && arith - delta == c.genus,
        std::to_string(arith) + " - " + std::to_string(delta));
  check("max multiplicity", get<int>(ji, "max_multiplicity") == max_m);
  bool pencils = true;
  Rng rng(get<std::uint64_t>(at(j, "search"), "seed") + 99);
  std::vector<std::size_t> idx(listed.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < idx.size() && i < 3; ++i) {
    std::swap(idx[i], idx[i + draw(rng, idx.size() - i)]);
    const auto& sp = listed[idx[i]];
    if (sp.point.degree() > 8) continue;  // keep the residue fields small
    pencils = pencils && projection_pencil_base_degree(c, v, sp.point) == sp.multiplicity;
  }
  check("pencil spot-checks", pencils);

  const auto& jst = at(j, "stability");
  const Verdict verdict = classify(max_m, v.degree_L);
  check("stability verdict", get<std::string>(jst, "verdict") == to_string(verdict) && verdict == Verdict::Stable);
  check("stability threshold", decode_rational(at(jst, "threshold")) == Rational(v.degree_L, 2));
  check("stability multiplicity", get<int>(jst, "max_multiplicity") == max_m);

  // Syzygy by expansion.
  const auto& jz = at(j, "syzygy");
  SyzygyCertificate syz;
  for (const auto& e : at(jz, "a")) syz.a.push_back(decode_form(k, e));
  for (const auto& e : at(jz, "g")) syz.g.push_back(decode_form(k, e));
  syz.mu_sub = decode_rational(at(jz, "mu_sub"));
  syz.mu_m = decode_rational(at(jz, "mu_m"));
  syz.verdict = get<std::string>(jz, "verdict");
  bool same_g = syz.g.size() == basis.size();
  for (std::size_t i = 0; same_g && i < basis.size(); ++i) same_g = form::equal(k, syz.g[i], basis[i]);
  bool linear = syz.a.size() == 3;
  for (const auto& a : syz.a) linear = linear && a.deg == 1;
  check("syzygy forms", same_g && linear);
  check("syzygy identity", linear && same_g && check_certificate(c, syz, v.degree_L, v.rank, deg_b));
  const auto& jsl = at(j, "slopes");
  const Rational mu_b = decode_rational(at(jsl, "B_dual")), mu_ml = decode_rational(at(jsl, "M_L"));
  check("slopes", mu_b == Rational(-deg_b) && mu_ml == Rational(-v.degree_L, v.rank) && mu_b > mu_ml &&
                      mu_b == syz.mu_sub && mu_ml == syz.mu_m,
        mu_b.str() + " > " + mu_ml.str());

  const auto& jm = at(j, "multiplication_map");
  const auto mm = mult_map(c, v, rr_space(c, b));
  check("multiplication map", get<std::size_t>(jm, "source") == mm.source_dim &&
                                  get<int>(jm, "target") == static_cast<int>(mm.target.h0()) &&
                                  get<std::size_t>(jm, "kernel_dim") == mm.kernel.size() && !mm.kernel.empty());

  // The search replays to the same divisor.
  const auto& jsr = at(j, "search");
  const auto tries = get<std::uint64_t>(jsr, "tries");
  W113Search search(c, get<std::uint64_t>(jsr, "seed"));
  bool replay = false;
  while (auto hit = search.next(tries)) {
    if (hit->tries == tries) {
      replay = hit->d.terms.size() == d.terms.size();
      for (std::size_t i = 0; replay && i < d.terms.size(); ++i) replay = hit->d.terms[i].point == d.terms[i].point;
    }
  }
  check("search replay", replay);
  const std::string label = get<std::string>(jsr, "curve");
  const bool is_fermat = c.degree == 7 && form::equal(k, c.F, fermat(k, 7));
  check("curve label", label == (is_fermat ? "fermat7" : "custom"));
  return finish();
}

PlaneCurve pipeline_curve(const Fq& k, const PipelineConfig& cfg) {
  if (cfg.coefficients) {
    const auto n = cfg.coefficients->size();
    int deg = 0;
    while (form::num_monomials(deg) < n) ++deg;
    if (form::num_monomials(deg) != n) throw std::invalid_argument("curve: coefficient count is not triangular");
    Form g = form::zero(k, deg);
    for (std::size_t i = 0; i < n; ++i) g.c[i] = k.from_int((*cfg.coefficients)[i]);
    return make_curve(k, g);
  }
  if (cfg.curve != "fermat7") throw std::invalid_argument("curve: unknown curve name " + cfg.curve);
  if (k.characteristic() == 7) throw std::invalid_argument("curve: fermat7 needs p != 7");
  return make_curve(k, fermat(k, 7));
}

ReproduceResult reproduce(const PipelineConfig& cfg) {
  if (cfg.max_tries < 1) throw std::invalid_argument("reproduce: max_tries must be >= 1");
  ReproduceResult res;
  res.rejections.assign(7, 0);
  for (unsigned ext = cfg.ext; ext <= 2 * cfg.ext; ext += cfg.ext) {
    const Fq k = Fq::build(cfg.prime, ext);
    const PlaneCurve c = pipeline_curve(k, cfg);
    if (c.degree != 7) throw std::invalid_argument("reproduce: the construction needs a plane septic");
    W113Search search(c, cfg.seed);
    res.ext_used = ext;
    while (auto hit = search.next(cfg.max_tries)) {
      const auto l = build_L(c, hit->d, cfg.seed);
      const auto r = certify(c, hit->d, l, cfg.seed);
      if (!r.accepted) {
        ++res.rejections[r.gate];
        continue;
      }
      res.ok = true;
      res.tries = hit->tries;
      const bool is_fermat = form::equal(k, c.F, fermat(k, 7));
      res.certificate = certificate_json(c, *r.cert, {is_fermat ? "fermat7" : "custom", cfg.seed, hit->tries});
      return res;
    }
    res.tries = search.tries();
  }
  res.message = "max_tries exhausted";
  return res;
}

}  // namespace plcert
