#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chebpert/harness.hpp"

namespace chebpert {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// nlohmann's dump() prints the shortest round-trip form; reports want a fixed
// 17 significant digits, so floats are emitted by hand.
void emit(const Json& j, std::ostream& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(it.key()).dump() << ": ";
        emit(it.value(), out, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out << ", ";
        first = false;
        emit(v, out, depth + 1);
      }
      out << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out << format_number(v);
      } else {
        out << "null";
      }
      return;
    }
    default:
      out << j.dump();
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json optional_bool(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string report_to_json(const ExperimentReport& r) {
  Json config = Json::object();
  for (const auto& [k, v] : r.config_echo) config[k] = v;

  Json columns = Json::object();
  columns["n"] = r.n_list;
  columns["err_recur"] = r.err_recur;
  columns["err_a"] = r.err_a;
  columns["err_b"] = r.err_b;
  columns["err_interval"] = r.err_interval;
  columns["err_exterior"] = r.err_exterior;
  columns["eps_n"] = r.eps;

  Json slopes = Json::object();
  for (const char* name : {"err_recur", "err_a", "err_b", "err_interval", "err_exterior", "eps_n"}) {
    const auto it = r.fitted_slopes.find(name);
    slopes[name] = it == r.fitted_slopes.end() ? Json(nullptr) : optional_number(it->second);
  }

  Json pass = Json::object();
  pass["overall"] = r.pass;
  pass["recur_rate"] = optional_bool(r.recur_rate_ok);
  pass["interval_ratio"] = optional_bool(r.interval_ratio_ok);
  pass["interval_ratio_spread"] = r.interval_ratio_spread;
  pass["bands"] = {{"slope_slack", kSlopeSlack}, {"ratio_band", kRatioBand}, {"noise_floor", kNoiseFloor}};
  pass["run"] = {{"weight_label", r.weight_label},
                 {"kind", r.kind},
                 {"m", r.m},
                 {"nquad", r.nquad},
                 {"szego_degree", r.szego_degree},
                 {"interval_grid", kIntervalGridSize},
                 {"exterior_points", kExteriorPoints},
                 {"exterior_radius", kExteriorRadius}};
  pass["warnings"] = r.warnings;

  Json doc = Json::object();
  doc["config"] = std::move(config);
  doc["columns"] = std::move(columns);
  doc["slopes"] = std::move(slopes);
  doc["pass"] = std::move(pass);

  std::ostringstream out;
  emit(doc, out, 0);
  out << "\n";
  return out.str();
}

std::string extension_summary_json(const ExtensionField& f) {
  Json doc = Json::object();
  doc["weight_label"] = f.weight_label;
  doc["params"] = {{"n", f.params.n}, {"r", f.params.r}, {"R", f.params.R}, {"grid", f.params.grid}};
  doc["cutoff"] = "quintic smoothstep in |phi|";
  doc["eps_n"] = f.eps_n;
  doc["bound_scale"] = f.bound_scale;
  doc["bound_ratio"] = f.bound_ratio;
  doc["max_abs_dbar_L"] = f.max_abs_dbar_L;
  doc["interval_defect"] = f.interval_defect;
  doc["l_n_error"] = f.l_n_error;
  doc["l_n_sup"] = f.l_n_sup;
  doc["l_n_outer"] = f.l_n_outer;
  doc["lambda_norm"] = f.lambda_norm;
  doc["lambda_prime_norm"] = f.lambda_prime_norm;
  doc["fd_relative_change"] = f.fd_relative_change;
  doc["outside_nonzero"] = f.outside_nonzero;
  doc["samples"] = {{"upper", f.upper.size()}, {"lower", f.lower.size()}};
  std::ostringstream out;
  emit(doc, out, 0);
  out << "\n";
  return out.str();
}

std::string report_to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "n,err_recur,err_a,err_b,err_interval,err_exterior,eps_n\n";
  for (std::size_t i = 0; i < r.n_list.size(); ++i) {
    out << r.n_list[i] << ',' << format_number(r.err_recur[i]) << ',' << format_number(r.err_a[i]) << ','
        << format_number(r.err_b[i]) << ',' << format_number(r.err_interval[i]) << ','
        << format_number(r.err_exterior[i]) << ',' << format_number(r.eps[i]) << '\n';
  }
  return out.str();
}

}  // namespace chebpert
