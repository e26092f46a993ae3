#include "chebpert/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <cmath>
#include <numbers>

#include "chebpert/errors.hpp"
#include "chebpert/parallel.hpp"

namespace chebpert {

IntervalPrediction predict_interval(const WeightSpec& w, const SzegoData& sd, Kind kind, const RecurrenceTable& t,
                                    int n, double x) {
  if (!(std::abs(x) <= 1.0)) throw InvalidArgument("predict_interval: |x| > 1");
  IntervalPrediction out;
  out.predicted = std::cos(n * std::acos(x) + sd.theta(x) + theta_i(kind, x));
  const double s_inf = kind.s_inf() * sd.s_inf();
  out.actual = 0.5 * eval_scaled_monic(t, n, x) * s_inf * std::sqrt(w.rho(x) * kind.v_abs(x));
  return out;
}

ExteriorPrediction predict_exterior(const SzegoData& sd, Kind kind, const RecurrenceTable& t, int n,
                                    std::complex<double> z) {
  if (!(phi_abs(z) >= kExteriorMinPhi)) {
    throw InvalidArgument("predict_exterior: |phi(z)| must be >= 1.5");
  }
  ExteriorPrediction out;
  out.predicted = szego_Si(kind, z) * sd.S(z) / (kind.s_inf() * sd.s_inf());
  out.actual = eval_exterior_ratio(t, n, z);
  return out;
}

RateFit fit_rate(std::span<const int> ns, std::span<const double> errs) {
  if (ns.size() != errs.size()) throw InvalidArgument("fit_rate: n and error lists differ in length");
  std::vector<double> lx;
  std::vector<double> ly;
  RateFit fit;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(errs[i] > 0.0) || !std::isfinite(errs[i])) {
      ++fit.excluded;
      continue;
    }
    lx.push_back(std::log(static_cast<double>(ns[i])));
    ly.push_back(std::log(errs[i]));
  }
  if (lx.size() < 4) {
    throw InsufficientDataError("fit_rate: " + std::to_string(lx.size()) + " usable points, need at least 4");
  }
  const auto count = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  fit.slope = sxy / sxx;
  fit.points_used = lx.size();
  return fit;
}

std::vector<std::complex<double>> exterior_circle() {
  std::vector<std::complex<double>> z(kExteriorPoints);
  for (std::size_t k = 0; k < kExteriorPoints; ++k) {
    z[k] = std::polar(kExteriorRadius, std::numbers::pi * (2.0 * k + 1.0) / static_cast<double>(kExteriorPoints));
  }
  return z;
}

// ---------------------------------------------------------------------------
// configuration

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("cannot parse '" + std::string(text) + "' as an integer for " + std::string(what));
  }
  return v;
}

double parse_real(std::string_view text, std::string_view what) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("cannot parse '" + std::string(text) + "' as a number in " + std::string(what));
  }
  return v;
}

// Imaginary coefficient with an optional bare sign: "", "+" and "-" stand for +-1.
double parse_imaginary(std::string_view text, std::string_view what) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text, what);
}

std::complex<double> parse_complex(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw ParseError("empty entry in complex list");
  if (token.back() != 'i') return {parse_real(token, token), 0.0};
  const std::string_view body = token.substr(0, token.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imaginary(body, token)};
  return {parse_real(body.substr(0, split), token), parse_imaginary(body.substr(split), token)};
}

}  // namespace

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_complex(text.substr(0, comma)));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  if (out.empty()) throw ParseError("empty complex list");
  return out;
}

std::vector<int> parse_n_list(std::string_view text) {
  text = trim(text);
  std::vector<int> ns;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const long long lo = parse_integer(text.substr(0, dots), "n");
    const long long hi = parse_integer(text.substr(dots + 2), "n");
    if (lo < 1 || hi < lo) throw ParseError("n range must satisfy 1 <= lo <= hi");
    for (long long v = lo; v <= hi; v *= 2) ns.push_back(static_cast<int>(v));
  } else {
    while (!text.empty()) {
      const auto comma = text.find(',');
      ns.push_back(static_cast<int>(parse_integer(text.substr(0, comma), "n")));
      text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
  }
  if (ns.empty()) throw ParseError("empty n list");
  return ns;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  bool have_weight = false;
  bool have_kind = false;
  bool have_n = false;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    for (const auto& [k, _] : cfg.echo) {
      if (k == key) throw ParseError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    if (key == "weight") {
      cfg.weight = value;
      have_weight = true;
    } else if (key == "kind") {
      cfg.kind = static_cast<int>(parse_integer(value, "kind"));
      have_kind = true;
    } else if (key == "n") {
      cfg.n_list = parse_n_list(value);
      have_n = true;
    } else if (key == "nquad") {
      const long long q = parse_integer(value, "nquad");
      if (q < 0) throw ParseError("nquad must be nonnegative");
      cfg.nquad = static_cast<std::size_t>(q);
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    cfg.echo.emplace_back(key, value);
  }
  if (!have_weight || !have_kind || !have_n) throw ParseError("config needs the keys weight, kind and n");
  return cfg;
}

// ---------------------------------------------------------------------------

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const WeightSpec w = WeightSpec::parse(config.weight);
  const Kind kind = Kind::from_index(config.kind);
  const std::vector<int>& ns = config.n_list;
  if (ns.empty()) throw InvalidArgument("run_experiment: empty n list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 2) throw InvalidArgument("run_experiment: every n must be >= 2");
    if (i > 0 && ns[i] <= ns[i - 1]) throw InvalidArgument("run_experiment: n list must be strictly increasing");
  }

  const int n_max = ns.back();
  const SzegoData sd = SzegoData::build(w);
  const RecurrenceTable t = stieltjes_recurrence(w, kind, n_max, config.nquad);

  ExperimentReport rep;
  rep.weight_label = w.label();
  rep.kind = kind.index();
  rep.m = w.m();
  rep.nquad = t.n_quad;
  rep.szego_degree = sd.degree();
  rep.n_list = ns;
  rep.config_echo = config.echo;
  rep.eps = epsilon_n(w, ns);

  const std::size_t count = ns.size();
  rep.err_recur.assign(count, 0.0);
  rep.err_a.assign(count, 0.0);
  rep.err_b.assign(count, 0.0);
  rep.err_interval.assign(count, 0.0);
  rep.err_exterior.assign(count, 0.0);

  const std::vector<double> grid = cheb_nodes(kIntervalGridSize);
  const std::vector<std::complex<double>> circle = exterior_circle();
  parallel_for(count, [&](std::size_t i) {
    const int n = ns[i];
    rep.err_a[i] = std::abs(t.a(n) - 0.5);
    rep.err_b[i] = std::abs(t.b[static_cast<std::size_t>(n)]);
    rep.err_recur[i] = std::max(rep.err_a[i], rep.err_b[i]);
    double e_int = 0.0;
    for (double x : grid) {
      const IntervalPrediction p = predict_interval(w, sd, kind, t, n, x);
      e_int = std::max(e_int, std::abs(p.actual - p.predicted));
    }
    rep.err_interval[i] = e_int;
    double e_ext = 0.0;
    for (const auto& z : circle) {
      const ExteriorPrediction p = predict_exterior(sd, kind, t, n, z);
      e_ext = std::max(e_ext, std::abs(p.actual / p.predicted - 1.0));
    }
    rep.err_exterior[i] = e_ext;
  });

  const std::pair<const char*, const std::vector<double>*> columns[] = {
      {"err_recur", &rep.err_recur},       {"err_a", &rep.err_a},   {"err_b", &rep.err_b},
      {"err_interval", &rep.err_interval}, {"err_exterior", &rep.err_exterior}, {"eps_n", &rep.eps}};
  for (const auto& [name, col] : columns) {
    std::optional<double> slope;
    const double peak = *std::max_element(col->begin(), col->end());
    if (peak > kNoiseFloor) {
      try {
        const RateFit fit = fit_rate(ns, *col);
        slope = fit.slope;
        if (fit.excluded > 0) {
          rep.warnings.push_back(std::string(name) + ": " + std::to_string(fit.excluded) +
                                 " non-positive entries excluded from the fit");
        }
      } catch (const InsufficientDataError& e) {
        rep.warnings.push_back(std::string(name) + ": " + e.what());
      }
    }
    rep.fitted_slopes[name] = slope;
  }

  const auto& s_recur = rep.fitted_slopes["err_recur"];
  const auto& s_eps = rep.fitted_slopes["eps_n"];
  if (s_recur && s_eps) rep.recur_rate_ok = *s_recur <= *s_eps + kSlopeSlack;

  // err_interval <= C eps_n with C stable: spread of the ratio over the run.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool usable = rep.fitted_slopes["err_interval"].has_value();
  for (std::size_t i = 0; i < count && usable; ++i) {
    if (!(rep.eps[i] > 0.0) || !(rep.err_interval[i] > 0.0)) {
      usable = false;
      break;
    }
    const double ratio = rep.err_interval[i] / rep.eps[i];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  if (usable) {
    rep.interval_ratio_spread = hi / lo;
    rep.interval_ratio_ok = rep.interval_ratio_spread <= kRatioBand;
  }
  rep.pass = rep.recur_rate_ok.value_or(true) && rep.interval_ratio_ok.value_or(true);
  return rep;
}

}  // namespace chebpert
