#pragma once

// Serialization of check reports to CSV and JSON. Output is deterministic:
// entries keep their given order and floating-point values are printed with
// 17 significant digits so that round-tripping preserves every bit.

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ssepdual/checks.hpp"

namespace ssepdual {

inline std::string format_double(double x) {
  std::ostringstream os;
  if (std::isnan(x)) return "nan";
  os << std::setprecision(17) << x;
  return os.str();
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<CheckReport>& reports) {
  os << "check_name,N,rates,residual,tolerance,passed,details\n";
  for (const auto& r : reports) {
    os << detail::csv_escape(r.name) << "," << r.N << "," << detail::csv_escape(r.rates) << ","
       << format_double(r.residual) << "," << format_double(r.tolerance) << ","
       << (r.passed ? "true" : "false") << "," << detail::csv_escape(r.details) << "\n";
  }
}

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check_name"] = r.name;
  j["N"] = r.N;
  j["rates"] = r.rates;
  if (std::isnan(r.residual)) j["residual"] = nullptr;
  else j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["details"] = r.details;
  return j;
}

inline void write_json(std::ostream& os, const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json root;
  root["reports"] = nlohmann::ordered_json::array();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    root["reports"].push_back(to_json(r));
    if (!r.passed) ++failed;
  }
  root["total"] = reports.size();
  root["failed"] = failed;
  os << root.dump(2) << "\n";
}

/// Human-oriented one-line-per-check rendering used by the terminal paths.
inline void write_text(std::ostream& os, const std::vector<CheckReport>& reports) {
  std::size_t failed = 0;
  for (const auto& r : reports) {
    os << (r.passed ? "PASS" : "FAIL") << "  " << r.name;
    if (r.N > 0) os << " (N=" << r.N << ")";
    os << "  residual=" << format_double(r.residual) << "  tol=" << format_double(r.tolerance);
    if (!r.details.empty()) os << "  [" << r.details << "]";
    os << "\n";
    if (!r.passed) ++failed;
  }
  os << reports.size() - failed << "/" << reports.size() << " checks passed\n";
}

}  // namespace ssepdual
