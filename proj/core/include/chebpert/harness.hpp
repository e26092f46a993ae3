#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chebpert/dbar_extension.hpp"
#include "chebpert/orthopoly.hpp"
#include "chebpert/szego.hpp"
#include "chebpert/weights.hpp"

namespace chebpert {

struct IntervalPrediction {
  double predicted = 0.0;  ///< cos(n arccos x + theta(x) + theta_i(x))
  double actual = 0.0;     ///< 2^{n-1} (S_i S)(inf) sqrt(rho |v_i|) P_n(x)
};

struct ExteriorPrediction {
  std::complex<double> predicted;  ///< (S_i S)(z) / (S_i S)(inf)
  std::complex<double> actual;     ///< P_n(z) (2/phi(z))^n
};

[[nodiscard]] IntervalPrediction predict_interval(const WeightSpec& w, const SzegoData& sd, Kind kind,
                                                  const RecurrenceTable& t, int n, double x);

inline constexpr double kExteriorMinPhi = 1.5;

/// Throws InvalidArgument when |phi(z)| < 1.5.
[[nodiscard]] ExteriorPrediction predict_exterior(const SzegoData& sd, Kind kind, const RecurrenceTable& t, int n,
                                                  std::complex<double> z);

struct RateFit {
  double slope = 0.0;
  std::size_t points_used = 0;
  std::size_t excluded = 0;  ///< non-positive errors dropped from the fit
};

/// Least-squares slope of log(err) against log(n). Non-positive errors are
/// dropped; fewer than 4 remaining points throw InsufficientDataError.
[[nodiscard]] RateFit fit_rate(std::span<const int> ns, std::span<const double> errs);

inline constexpr std::size_t kIntervalGridSize = 512;
inline constexpr std::size_t kExteriorPoints = 16;
inline constexpr double kExteriorRadius = 2.0;
/// Error columns whose entries all sit at or below this are not fitted.
inline constexpr double kNoiseFloor = 1e-12;
inline constexpr double kSlopeSlack = 0.5;
inline constexpr double kRatioBand = 50.0;

/// The 16 exterior sample points 2 exp(i pi (2k+1)/16).
[[nodiscard]] std::vector<std::complex<double>> exterior_circle();

/// Experiment settings. Keys match the command-line flag names; `echo` keeps
/// the key/value pairs exactly as read.
struct ExperimentConfig {
  std::string weight;
  int kind = 1;
  std::vector<int> n_list;
  std::size_t nquad = 0;  ///< 0 selects the default
  std::string out;
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Flat "key = value" text, one pair per line, '#' starts a comment.
/// Keys: weight, kind, n, nquad, out.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);
/// "8,16,32" or "32..512" (powers of two between the bounds).
[[nodiscard]] std::vector<int> parse_n_list(std::string_view text);

struct ExperimentReport {
  std::string weight_label;
  int kind = 1;
  int m = 3;
  std::size_t nquad = 0;
  std::size_t szego_degree = 0;
  std::vector<int> n_list;
  std::vector<double> err_recur;  ///< max(|a_n - 1/2|, |b_n|)
  std::vector<double> err_a;
  std::vector<double> err_b;
  std::vector<double> err_interval;
  std::vector<double> err_exterior;
  std::vector<double> eps;
  std::map<std::string, std::optional<double>> fitted_slopes;
  std::vector<std::string> warnings;

  std::optional<bool> recur_rate_ok;      ///< slope(err_recur) <= slope(eps) + 0.5
  std::optional<bool> interval_ratio_ok;  ///< max/min of err_interval/eps <= 50
  double interval_ratio_spread = 0.0;
  bool pass = true;

  std::vector<std::pair<std::string, std::string>> config_echo;
};

/// Error columns for one (weight, kind) pair over n_list.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentConfig& config);

/// {config, columns, slopes, pass}; numbers with 17 significant digits.
[[nodiscard]] std::string report_to_json(const ExperimentReport& report);
/// n, err_recur, err_a, err_b, err_interval, err_exterior, eps_n.
[[nodiscard]] std::string report_to_csv(const ExperimentReport& report);

/// Scalar diagnostics of an extension field as JSON, same number format as reports.
[[nodiscard]] std::string extension_summary_json(const ExtensionField& field);

/// Comma-separated complex numbers such as "2,1.5+0.5i,-2i,i".
[[nodiscard]] std::vector<std::complex<double>> parse_complex_list(std::string_view text);

/// "%.17g", with nan/inf spelled out.
[[nodiscard]] std::string format_number(double v);

}  // namespace chebpert
