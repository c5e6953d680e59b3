#pragma once

// Verification reports and their JSON form. JSON is emitted with a fixed
// field order and 17 significant digits so that identical runs produce
// identical bytes and every double survives a parse.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rootscope/numkit.hpp"

namespace rootscope {

using Json = nlohmann::ordered_json;

struct CheckResult {
  std::string check;
  std::string algebra;
  std::optional<Vec> root;  // covector, absent for algebra-wide checks
  std::size_t trials = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::optional<std::string> function_kind;
  std::optional<double> max_delta;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct Report {
  std::vector<CheckResult> entries;

  bool pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  void add(CheckResult r) { entries.push_back(std::move(r)); }
  void append(const Report& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }

  friend bool operator==(const Report&, const Report&) = default;
};

inline Json to_json(const CheckResult& r) {
  Json j;
  j["check"] = r.check;
  j["algebra"] = r.algebra;
  j["root"] = r.root ? Json(*r.root) : Json(nullptr);
  j["trials"] = r.trials;
  j["max_residual"] = r.max_residual;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  if (r.function_kind) j["function_kind"] = *r.function_kind;
  if (r.max_delta) j["max_delta"] = *r.max_delta;
  return j;
}

inline CheckResult check_from_json(const Json& j) {
  CheckResult r;
  r.check = j.at("check").get<std::string>();
  r.algebra = j.at("algebra").get<std::string>();
  if (!j.at("root").is_null()) r.root = j.at("root").get<Vec>();
  r.trials = j.at("trials").get<std::size_t>();
  r.max_residual = j.at("max_residual").get<double>();
  r.tol = j.at("tol").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("function_kind")) r.function_kind = j.at("function_kind").get<std::string>();
  if (j.contains("max_delta")) r.max_delta = j.at("max_delta").get<double>();
  return r;
}

inline Json to_json(const Report& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) entries.push_back(to_json(e));
  return entries;
}

inline Report report_from_json(const Json& j) {
  Report r;
  for (const auto& e : j) r.entries.push_back(check_from_json(e));
  return r;
}

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void dump(const Json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(d * indent), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += Json(key).dump();
        out += indent >= 0 ? ": " : ":";
        dump(value, indent, depth + 1, out);
      }
      pad(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // numeric arrays stay on one line
      bool flat = true;
      for (const auto& v : j) flat = flat && v.is_number();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) pad(depth + 1);
        dump(v, indent, depth + 1, out);
      }
      if (!flat) pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Deterministic serialization with 17 significant digits for floats.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::string out;
  detail::dump(j, indent, 0, out);
  out += '\n';
  return out;
}

}  // namespace rootscope
