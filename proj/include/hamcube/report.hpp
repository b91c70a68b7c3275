#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hamcube/numeric.hpp"

namespace hamcube {

enum class CheckStatus { Pass, Fail, Report };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Report: return "report";
  }
  return "?";
}

/* One inequality instance.  For pass/fail checks the status is decided by
 * slack = rhs - lhs against tol = 1e-9 * max(1, |lhs|, |rhs|); report-only
 * checks carry unspecified universal constants and are never asserted. */
struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  CheckStatus status = CheckStatus::Report;
  std::map<std::string, std::string> params;  // sorted keys -> deterministic output

  static double tolerance(double lhs, double rhs) {
    return 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  }

  static CheckResult pass_fail(std::string name, double lhs, double rhs,
                               std::map<std::string, std::string> params = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.status = r.slack >= -tolerance(lhs, rhs) ? CheckStatus::Pass : CheckStatus::Fail;
    r.params = std::move(params);
    return r;
  }

  static CheckResult report(std::string name, double lhs, double rhs,
                            std::map<std::string, std::string> params = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.status = CheckStatus::Report;
    r.params = std::move(params);
    return r;
  }
};

namespace detail {

inline void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

}  // namespace detail

/* Byte-deterministic report serialization: sorted param keys, fixed float
 * formatting (17 significant digits), no locale dependence. */
inline std::string check_to_json(const CheckResult& r) {
  std::string out = "{\"check\":";
  detail::append_json_string(out, r.name);
  out += ",\"status\":\"";
  out += status_name(r.status);
  out += "\",\"lhs\":" + format_double(r.lhs);
  out += ",\"rhs\":" + format_double(r.rhs);
  out += ",\"slack\":" + format_double(r.slack);
  out += ",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    if (!first) out += ',';
    first = false;
    detail::append_json_string(out, k);
    out += ':';
    detail::append_json_string(out, v);
  }
  out += "}}";
  return out;
}

inline std::string report_to_json(const std::vector<CheckResult>& checks, std::uint64_t seed) {
  int pass = 0, fail = 0, report = 0;
  std::string out = "{\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i) out += ',';
    out += check_to_json(checks[i]);
    switch (checks[i].status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++fail; break;
      case CheckStatus::Report: ++report; break;
    }
  }
  out += "],\"summary\":{\"pass\":" + std::to_string(pass) + ",\"fail\":" + std::to_string(fail) +
         ",\"report\":" + std::to_string(report) + ",\"seed\":" + std::to_string(seed) + "}}\n";
  return out;
}

}  // namespace hamcube
