// Command-line front end. Exit codes: 0 success/pass, 1 rejection/fail,
// 2 usage or input error.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "plcert/certificate.hpp"

using namespace plcert;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Fq field_of(const json& j) {
  if (!j.contains("field")) return Fq::build(31, 1);
  const auto& f = j["field"];
  if (f.contains("modulus")) return decode_field(f);
  return Fq::build(f.at("p").get<std::uint32_t>(), f.value("k", 1u));
}

PlaneCurve curve_of(const Fq& k, const json& j) {
  if (!j.contains("curve") || j["curve"] == "fermat7") return make_curve(k, fermat(k, 7));
  return make_curve(k, decode_form(k, j["curve"]));
}

// Points may be given in the certificate encoding or as [x, y, z] for a
// rational point.
Divisor divisor_of(const Fq& k, const json& j) {
  if (!j.contains("divisor")) throw UsageError("input has no divisor");
  const auto& d = j["divisor"];
  Divisor out;
  out.hyperplane = d.value("hyperplane", 0);
  for (const auto& t : d.value("terms", json::array())) {
    const auto& p = t.at("point");
    CurvePoint pt = p.is_array() ? rational_point(k, {k.from_int(p.at(0).get<std::int64_t>()),
                                                      k.from_int(p.at(1).get<std::int64_t>()),
                                                      k.from_int(p.at(2).get<std::int64_t>())})
                                 : decode_point(k, p);
    out.terms.push_back({pt, t.value("mult", 1)});
  }
  return normalize(out);
}

bool on_curve(const PlaneCurve& c, const Divisor& d) {
  for (const auto& t : d.terms)
    if (!t.point.field->is_zero(form::eval(c.field, c.F, *t.point.field, t.point.x))) return false;
  return true;
}

LinearSeries series_of(const PlaneCurve& c, const json& j) {
  const Divisor d = divisor_of(c.field, j);
  if (!on_curve(c, d)) throw UsageError("divisor has a point off the curve");
  auto s = rr_space(c, d);
  if (j.contains("selection")) {
    std::vector<std::vector<Fq::Elem>> sel;
    for (const auto& row : j["selection"]) {
      std::vector<Fq::Elem> v;
      for (const auto& x : row) v.push_back(c.field.from_int(x.get<std::int64_t>()));
      sel.push_back(v);
    }
    return make_series(c, s, sel);
  }
  return make_series(c, s);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plane curve linear series: Riemann-Roch spaces, linear stability, syzygy certificates"};
  app.require_subcommand(1);

  // curve check
  auto* curve_cmd = app.add_subcommand("curve", "Curve utilities");
  auto* check_cmd = curve_cmd->add_subcommand("check", "Validate a smooth plane curve");
  curve_cmd->require_subcommand(1);
  std::uint32_t cprime = 31;
  unsigned cext = 1;
  std::string curve_name = "fermat7";
  check_cmd->add_option("--prime", cprime, "Field characteristic");
  check_cmd->add_option("--ext", cext, "Extension degree");
  check_cmd->add_option("--curve", curve_name, "fermat7 or a JSON file with a curve form");

  std::string rr_file, stab_file, syz_file, verify_file;
  auto* rr_cmd = app.add_subcommand("rr", "Riemann-Roch space of a divisor");
  rr_cmd->add_option("--divisor", rr_file, "Instance JSON (field, curve, divisor)")->required();
  auto* stab_cmd = app.add_subcommand("stability", "Linear stability of a rank-2 series");
  stab_cmd->add_option("--series", stab_file, "Instance JSON (field, curve, divisor, optional selection)")->required();
  auto* syz_cmd = app.add_subcommand("syzygy", "Destabilizing syzygy from B = O(1)");
  syz_cmd->add_option("--series", syz_file, "Instance JSON (field, curve, divisor, optional selection)")->required();

  PipelineConfig cfg;
  std::string curve_arg = "fermat7";
  auto* rep_cmd = app.add_subcommand("reproduce", "Search, certify and emit a certificate");
  rep_cmd->add_option("--prime", cfg.prime, "Field characteristic")->check(CLI::PositiveNumber);
  rep_cmd->add_option("--ext", cfg.ext, "Extension degree")->check(CLI::PositiveNumber);
  rep_cmd->add_option("--curve", curve_arg, "fermat7 or a JSON file with a curve form");
  rep_cmd->add_option("--seed", cfg.seed, "Search seed");
  rep_cmd->add_option("--max-tries", cfg.max_tries, "Search budget")->check(CLI::PositiveNumber);
  rep_cmd->add_option("--out", cfg.out, "Certificate output path (stdout when omitted)");

  auto* ver_cmd = app.add_subcommand("verify", "Re-check a certificate from scratch");
  ver_cmd->add_option("certificate", verify_file, "Certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check_cmd->parsed()) {
      const Fq k = Fq::build(cprime, cext);
      json out{{"field", encode_field(k)}};
      try {
        const auto c = curve_name == "fermat7" ? curve_of(k, json::object()) : curve_of(k, read_json(curve_name));
        out["smooth"] = true;
        out["degree"] = c.degree;
        out["genus"] = c.genus;
        out["gonality"] = c.gonality;
        if (k.order() <= 4096) out["rational_points"] = all_rational_points(c).size();
        print(out);
        return 0;
      } catch (const std::invalid_argument& e) {
        out["smooth"] = false;
        out["reason"] = e.what();
        print(out);
        return 1;
      }
    }
    if (rr_cmd->parsed()) {
      const json in = read_json(rr_file);
      const Fq k = field_of(in);
      const auto c = curve_of(k, in);
      const Divisor d = divisor_of(k, in);
      if (!on_curve(c, d)) throw UsageError("divisor has a point off the curve");
      const auto s = rr_space(c, d);
      const int a = static_cast<int>(s.h0()), b = h1(c, d);
      json basis = json::array();
      for (const auto& g : s.basis) basis.push_back(encode_form(k, g));
      json out{{"degree", degree(c, d)}, {"h0", a}, {"h1", b}, {"genus", c.genus},
               {"riemann_roch", a - b == degree(c, d) + 1 - c.genus}, {"forms_degree", s.m}, {"basis", basis}};
      if (a > 0) out["base_degree"] = degree(c, base_locus(c, s));
      print(out);
      return 0;
    }
    if (stab_cmd->parsed()) {
      const json in = read_json(stab_file);
      const Fq k = field_of(in);
      const auto c = curve_of(k, in);
      const auto v = series_of(c, in);
      json out{{"degree_L", v.degree_L}, {"rank", v.rank}, {"generating", v.generating}};
      if (v.generating) out["slope_M"] = encode_rational(slope_M(v));
      if (v.rank != 2 || !v.generating) {
        out["verdict"] = nullptr;
        out["reason"] = "the multiplicity criterion needs a generating series of rank 2";
        print(out);
        return 1;
      }
      auto model = image_curve(c, v);
      out["image"] = {{"degree", model.degree}, {"map_degree", model.map_degree}};
      if (model.map_degree != 1) {
        out["verdict"] = nullptr;
        out["reason"] = "the map is not birational";
        print(out);
        return 1;
      }
      const auto verdict = linear_stability_verdict(c, v, model);
      out["image"]["max_multiplicity"] = model.max_multiplicity;
      out["image"]["singular_points"] = model.singular.size();
      out["verdict"] = to_string(verdict.verdict);
      out["threshold"] = encode_rational(verdict.threshold);
      print(out);
      return 0;
    }
    if (syz_cmd->parsed()) {
      const json in = read_json(syz_file);
      const Fq k = field_of(in);
      const auto c = curve_of(k, in);
      const auto v = series_of(c, in);
      try {
        const auto cert = destabilizer_certificate(c, v);
        json a = json::array(), g = json::array();
        for (const auto& f : cert.a) a.push_back(encode_form(k, f));
        for (const auto& f : cert.g) g.push_back(encode_form(k, f));
        print(json{{"a", a}, {"g", g}, {"mu_sub", encode_rational(cert.mu_sub)},
                   {"mu_m", encode_rational(cert.mu_m)}, {"verdict", cert.verdict}});
        return 0;
      } catch (const GenericityFailure& e) {
        print(json{{"verdict", nullptr}, {"reason", e.what()}});
        return 1;
      }
    }
    if (rep_cmd->parsed()) {
      if (curve_arg != "fermat7") {
        const json in = read_json(curve_arg);
        const auto& f = in.contains("curve") ? in["curve"] : in;
        cfg.coefficients = f.at("coefficients").get<std::vector<std::int64_t>>();
      }
      cfg.curve = curve_arg;
      const auto t0 = std::chrono::steady_clock::now();
      ReproduceResult res;
      try {
        res = reproduce(cfg);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid configuration: ") + e.what());
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << "tries " << res.tries << ", rejections by gate:";
      for (int g = 1; g <= 6; ++g) std::cerr << " " << res.rejections[g];
      std::cerr << ", " << secs << " s\n";
      if (!res.ok) {
        std::cerr << "reproduce: " << res.message << "\n";
        return 1;
      }
      if (cfg.out.empty()) {
        print(res.certificate);
      } else {
        std::ofstream(cfg.out) << res.certificate.dump(2) << "\n";
        std::cerr << "wrote " << cfg.out << "\n";
      }
      return 0;
    }
    if (ver_cmd->parsed()) {
      const auto rep = verify_certificate(read_json(verify_file));
      for (const auto& c : rep.checks)
        std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
      std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
      return rep.pass ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
