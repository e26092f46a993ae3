#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chebpert/dbar_extension.hpp"
#include "chebpert/errors.hpp"
#include "chebpert/harness.hpp"
#include "chebpert/orthopoly.hpp"
#include "chebpert/szego.hpp"
#include "chebpert/weights.hpp"

namespace fs = std::filesystem;
using namespace chebpert;

namespace {

/// Exit status for a run that completed but whose checks did not pass.
constexpr int kChecksFailed = 3;

std::string num(double v) { return format_number(v); }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw InvalidArgument("failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

int run_recurrence(const std::string& weight, int kind, int nmax, std::size_t nquad, const std::string& out) {
  const WeightSpec w = WeightSpec::parse(weight);
  const RecurrenceTable t = stieltjes_recurrence(w, Kind::from_index(kind), nmax, nquad);
  std::ostringstream csv;
  csv << "n,a_n,b_n,h_n\n";
  for (int n = 0; n <= t.n_max; ++n) {
    csv << n << ',' << num(t.a(n)) << ',' << num(t.b[static_cast<std::size_t>(n)]) << ',' << num(t.h(n)) << '\n';
  }
  emit(csv.str(), out);
  return 0;
}

int run_szego(const std::string& weight, const std::string& at, std::size_t grid, const std::string& out) {
  const WeightSpec w = WeightSpec::parse(weight);
  const SzegoData sd = SzegoData::build(w);
  if (!sd.resolved()) {
    throw ResolutionError("log rho is not resolved by " + std::to_string(kSzegoMaxNodes) +
                          " Chebyshev nodes (tail ratio " + num(sd.tail_ratio()) + ")");
  }
  std::ostringstream csv;
  if (!at.empty()) {
    csv << "re_z,im_z,re_S,im_S,abs_phi\n";
    for (const Complex z : parse_complex_list(at)) {
      const Complex s = sd.S(z);
      csv << num(z.real()) << ',' << num(z.imag()) << ',' << num(s.real()) << ',' << num(s.imag()) << ','
          << num(phi_abs(z)) << '\n';
    }
  } else {
    csv << "x,theta,re_S_plus,im_S_plus\n";
    for (const double x : cheb_nodes(grid)) {
      const Complex s = sd.S_boundary(x, Side::plus);
      csv << num(x) << ',' << num(sd.theta(x)) << ',' << num(s.real()) << ',' << num(s.imag()) << '\n';
    }
  }
  emit(csv.str(), out);
  return 0;
}

int run_asymptotics(const std::string& weight, int kind, const std::string& ns, std::size_t nquad,
                    const std::string& out) {
  ExperimentConfig cfg;
  cfg.weight = weight;
  cfg.kind = kind;
  cfg.n_list = parse_n_list(ns);
  cfg.nquad = nquad;
  const ExperimentReport r = run_experiment(cfg);
  std::ostringstream csv;
  csv << "n,err_interval,err_exterior,err_a,err_b,eps_n\n";
  for (std::size_t i = 0; i < r.n_list.size(); ++i) {
    csv << r.n_list[i] << ',' << num(r.err_interval[i]) << ',' << num(r.err_exterior[i]) << ',' << num(r.err_a[i])
        << ',' << num(r.err_b[i]) << ',' << num(r.eps[i]) << '\n';
  }
  emit(csv.str(), out);
  return 0;
}

int run_verify(const std::string& config_path, std::string out_dir) {
  const ExperimentConfig cfg = parse_config(read_file(config_path));
  if (out_dir.empty()) out_dir = cfg.out.empty() ? "." : cfg.out;
  fs::create_directories(out_dir);
  const ExperimentReport r = run_experiment(cfg);
  write_file(fs::path(out_dir) / "report.json", report_to_json(r));
  write_file(fs::path(out_dir) / "errors.csv", report_to_csv(r));
  std::cerr << "verify " << r.weight_label << " kind " << r.kind << ": " << (r.pass ? "PASS" : "FAIL") << '\n';
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return r.pass ? 0 : kChecksFailed;
}

int run_extension(const std::string& weight, const ExtensionParams& p, const std::string& out_dir) {
  const WeightSpec w = WeightSpec::parse(weight);
  const ExtensionField f = L_field(w, p);
  fs::create_directories(out_dir);
  {
    std::ofstream upper(fs::path(out_dir) / "extension_upper.csv", std::ios::binary);
    write_field_csv(upper, f.upper);
    std::ofstream lower(fs::path(out_dir) / "extension_lower.csv", std::ios::binary);
    write_field_csv(lower, f.lower);
    if (!upper || !lower) throw InvalidArgument("failed writing field CSVs under '" + out_dir + "'");
  }
  const std::string summary = extension_summary_json(f);
  write_file(fs::path(out_dir) / "extension_summary.json", summary);
  std::cout << summary;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal polynomials for perturbed Chebyshev weights"};
  app.require_subcommand(1);

  std::string weight;
  int kind = 1;
  int nmax = 0;
  std::size_t nquad = 0;
  std::string out;
  std::string at;
  std::size_t grid = 0;
  std::string ns;
  std::string config_path;
  ExtensionParams ext;

  const auto kind_check = CLI::Range(1, 4);

  auto* rec = app.add_subcommand("recurrence", "Recurrence coefficients a_n, b_n and norms h_n as CSV");
  rec->add_option("--weight", weight, "Weight, e.g. exp:alpha=1")->required();
  rec->add_option("--kind", kind, "Chebyshev kind 1..4")->required()->check(kind_check);
  rec->add_option("--nmax", nmax, "Largest n")->required()->check(CLI::PositiveNumber);
  rec->add_option("--nquad", nquad, "Quadrature nodes (default 8 nmax, power of two, >= 1024)");
  rec->add_option("--out", out, "Output file (default stdout)");

  auto* sz = app.add_subcommand("szego", "Szego function off the interval or phase on it, as CSV");
  sz->add_option("--weight", weight, "Weight")->required();
  auto* at_opt = sz->add_option("--at", at, "Complex points, e.g. 2,1.5+0.5i,-2i");
  auto* grid_opt = sz->add_option("--interval-grid", grid, "Chebyshev grid size on [-1, 1]")
                       ->check(CLI::PositiveNumber);
  at_opt->excludes(grid_opt);
  sz->add_option("--out", out, "Output file (default stdout)");

  auto* asy = app.add_subcommand("asymptotics", "Asymptotic error columns as CSV");
  asy->add_option("--weight", weight, "Weight")->required();
  asy->add_option("--kind", kind, "Chebyshev kind 1..4")->required()->check(kind_check);
  asy->add_option("--n", ns, "Degrees, e.g. 32,64,128 or 32..512")->required();
  asy->add_option("--nquad", nquad, "Quadrature nodes (default from the largest n)");
  asy->add_option("--out", out, "Output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Run an experiment config; writes report.json and errors.csv");
  ver->add_option("--config", config_path, "Config file of key = value lines")->required()->check(CLI::ExistingFile);
  ver->add_option("--out", out, "Output directory (default: the config's out key, else .)");

  auto* ex = app.add_subcommand("extension", "Sample the dbar-controlled extension of 1/rho");
  ex->add_option("--weight", weight, "Weight")->required();
  ex->add_option("--n", ext.n, "Degree of l_n (> 2m)")->capture_default_str();
  ex->add_option("--r", ext.r, "Support ellipse parameter")->capture_default_str();
  ex->add_option("--R", ext.R, "Outer ellipse parameter")->capture_default_str();
  ex->add_option("--grid", ext.grid, "Grid points per unit length")->capture_default_str();
  ex->add_option("--out", out, "Output directory")->default_str(".");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rec) return run_recurrence(weight, kind, nmax, nquad, out);
    if (*sz) {
      if (at.empty() && grid == 0) throw InvalidArgument("szego needs --at or --interval-grid");
      return run_szego(weight, at, grid, out);
    }
    if (*asy) return run_asymptotics(weight, kind, ns, nquad, out);
    if (*ver) return run_verify(config_path, out);
    if (*ex) return run_extension(weight, ext, out.empty() ? "." : out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
