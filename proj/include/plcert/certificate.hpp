#ifndef PLCERT_CERTIFICATE_HPP
#define PLCERT_CERTIFICATE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "plcert/repro.hpp"

namespace plcert {

inline constexpr const char* kCertificateVersion = "plcert-cert/1";

/// Thrown for malformed certificates (missing fields, wrong types, bad sizes).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchInfo {
  std::string curve = "fermat7";
  std::uint64_t seed = 0;
  std::uint64_t tries = 0;
};

nlohmann::json certificate_json(const PlaneCurve& c, const Certification& cert, const SearchInfo& info);

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  bool pass = false;
  std::vector<CheckLine> checks;
  std::string first_failure() const;
};

/// Recomputes every claim from (field, curve, D). Throws SchemaError.
VerifyReport verify_certificate(const nlohmann::json& j);

// Encoding helpers, shared with the CLI.
nlohmann::json encode_form(const Fq& k, const Form& g);
Form decode_form(const Fq& k, const nlohmann::json& j);
nlohmann::json encode_point(const Fq& k, const CurvePoint& p);
CurvePoint decode_point(const Fq& k, const nlohmann::json& j);
nlohmann::json encode_rational(const Rational& r);
Rational decode_rational(const nlohmann::json& j);
nlohmann::json encode_field(const Fq& k);
Fq decode_field(const nlohmann::json& j);
nlohmann::json encode_divisor(const Fq& k, const Divisor& d);
Divisor decode_divisor(const Fq& k, const nlohmann::json& j);

struct ReproduceResult {
  bool ok = false;
  nlohmann::json certificate;
  std::uint64_t tries = 0;
  std::vector<int> rejections;  // count per gate 1..6, index 0 unused
  unsigned ext_used = 1;
  std::string message;
};

/// search_w113 -> build_L -> certify, looping on rejections. Escalates once
/// to the degree-2k extension when the search exhausts max_tries.
ReproduceResult reproduce(const PipelineConfig& cfg);

/// The curve named by the configuration ("fermat7" or explicit coefficients).
PlaneCurve pipeline_curve(const Fq& k, const PipelineConfig& cfg);

}  // namespace plcert

#endif  // PLCERT_CERTIFICATE_HPP
