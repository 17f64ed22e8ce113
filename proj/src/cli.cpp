#include "bandlab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bandlab/basis.hpp"
#include "bandlab/concentration.hpp"
#include "bandlab/density.hpp"
#include "bandlab/fekete.hpp"
#include "bandlab/kernels.hpp"
#include "bandlab/manifold.hpp"
#include "bandlab/quadrature.hpp"
#include "bandlab/rng.hpp"
#include "bandlab/sampling.hpp"

namespace bandlab::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Numeric CSV field; refuses to let NaN/Inf reach disk.
std::string num(double v) {
  if (!std::isfinite(v)) throw numerical_integrity_error("non-finite value in output");
  return fmt(v);
}

// Separation constants may carry the documented +inf sentinel
// (single-point levels); rendered as the token "inf".
std::string num_or_inf(double v) {
  if (std::isnan(v)) throw numerical_integrity_error("NaN in output");
  return std::isinf(v) ? "inf" : fmt(v);
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Collects output files, then writes the run manifest.
class Outputs {
 public:
  Outputs(std::string dir, json config) : dir_(std::move(dir)), config_(std::move(config)) {
    start_ = std::chrono::steady_clock::now();
  }

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir_);
    const fs::path path = fs::path(dir_) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error("cannot write " + path.string());
    os << content;
    os.close();
    char digest[24];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    files_.push_back({name, content.size(), digest});
  }

  void stage(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    stages_.push_back({name, std::chrono::duration<double>(now - start_).count()});
    start_ = now;
  }

  void finish(const std::string& subcommand) {
    json manifest;
    manifest["tool"] = "bandlab";
    manifest["version"] = kVersion;
    manifest["subcommand"] = subcommand;
    manifest["config"] = config_;
    json stages = json::array();
    for (const auto& [name, seconds] : stages_)
      stages.push_back({{"name", name}, {"seconds", seconds}});
    manifest["stages"] = stages;
    json outs = json::array();
    for (const auto& f : files_)
      outs.push_back({{"path", f.name}, {"bytes", f.bytes}, {"fnv1a64", f.digest}});
    manifest["outputs"] = outs;
    write("manifest.json", manifest.dump(2) + "\n");
  }

 private:
  struct FileEntry {
    std::string name;
    std::size_t bytes;
    std::string digest;
  };
  std::string dir_;
  json config_;
  std::vector<FileEntry> files_;
  std::vector<std::pair<std::string, double>> stages_;
  std::chrono::steady_clock::time_point start_;
};

struct CommonOptions {
  std::string manifold = "torus2";
  std::vector<double> bandwidths{20.0, 40.0};
  std::vector<double> radius_scales{6.0, 8.0, 10.0};
  double eps = 0.2;
  double rho = 0.2;
  double nu = 1.0;
  std::vector<double> gammas{0.1, 0.5, 0.9};
  double annulus = 0.0;
  unsigned seed = 42;
  std::string out_dir = "out";
  std::string family_in;
  std::string family_out;
  // kernel options
  std::string filter = "smooth";
  int order = 3;
  double filter_eps = 0.3;
  // fekete options
  int candidates = 0;
  int exchange_rounds = 16;
  double dilation_eps = 0.3;
  // admissibility
  std::vector<double> c_grid;
};

json config_snapshot(const CLI::App& app) {
  json cfg;
  cfg["_command_line"] = app.config_to_str(true, false);
  return cfg;
}

TriangularFamily load_or_grid(const SpectralManifold& m, const CommonOptions& opt) {
  if (!opt.family_in.empty()) {
    std::ifstream is(opt.family_in);
    if (!is) throw error("cannot read family file " + opt.family_in);
    return read_family(is);
  }
  return make_grid_family(m, opt.bandwidths, opt.nu);
}

std::string family_to_string(const TriangularFamily& family) {
  std::ostringstream os;
  write_family(os, family);
  return os.str();
}

// ---------------------------------------------------------------- spectrum
void run_spectrum(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  const double sigma_m = 2.0 * std::pow(M_PI, m.dimension() / 2.0) /
                         (m.dimension() * std::tgamma(m.dimension() / 2.0));
  std::ostringstream csv, plot;
  csv << "L,k_L,lambda_max,weyl_ratio\n";
  json summary;
  json levels = json::array();
  for (double L : opt.bandwidths) {
    const EigenBasis basis(m, L);
    const double lambda_max = basis.size() > 0 ? basis.frequency(basis.size() - 1) : 0.0;
    const double weyl = basis.size() * std::pow(2.0 * M_PI, m.dimension()) /
                        (m.volume() * sigma_m * std::pow(L, m.dimension()));
    csv << num(L) << ',' << basis.size() << ',' << num(lambda_max) << ',' << num(weyl) << '\n';
    plot << num(L) << ' ' << basis.size() << '\n';
    levels.push_back({{"L", L}, {"k_L", basis.size()}, {"lambda_max", lambda_max},
                      {"weyl_ratio", weyl}});
  }
  summary["manifold"] = m.name();
  summary["levels"] = levels;
  out.stage("spectrum");
  out.write("spectrum.csv", csv.str());
  out.write("spectrum_kL.dat", plot.str());
  out.write("summary.json", summary.dump(2) + "\n");
}

// ------------------------------------------------------------------ kernel
KernelSpec parse_filter(const CommonOptions& opt) {
  if (opt.filter == "sharp") return KernelSpec::sharp();
  if (opt.filter == "riesz") return KernelSpec::bochner_riesz(opt.order);
  if (opt.filter == "smooth") return KernelSpec::smooth(opt.filter_eps);
  if (opt.filter == "smooth2") return KernelSpec::smooth_squared(opt.filter_eps);
  throw config_error("unknown filter \"" + opt.filter + "\"");
}

void run_kernel(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  const KernelSpec spec = parse_filter(opt);
  const DecayFit fit = decay_fit(m, spec, opt.bandwidths, opt.order);
  const auto pairs = decay_probe_pairs(m);

  std::ostringstream csv, plot;
  csv << "L,d,kernel_value,bound_value\n";
  for (double L : opt.bandwidths) {
    const EigenBasis basis(m, L);
    double c_l = 0.0;
    for (const auto& [lv, c] : fit.per_bandwidth)
      if (lv == L) c_l = c;
    for (const auto& [z, w] : pairs) {
      const double d = m.distance(z, w);
      const double kv = kernel_value(basis, spec, z, w);
      const double bound =
          c_l * std::pow(L, m.dimension()) / std::pow(1.0 + L * d, opt.order);
      csv << num(L) << ',' << num(d) << ',' << num(kv) << ',' << num(bound) << '\n';
      if (L == opt.bandwidths.back()) plot << num(d) << ' ' << num(std::fabs(kv)) << '\n';
    }
  }
  json summary;
  summary["filter"] = opt.filter;
  summary["order"] = fit.order;
  summary["fitted_constant"] = fit.fitted_constant;
  json per = json::array();
  for (const auto& [lv, c] : fit.per_bandwidth) per.push_back({{"L", lv}, {"C_N", c}});
  summary["per_bandwidth"] = per;
  out.stage("kernel");
  out.write("kernel.csv", csv.str());
  out.write("kernel_decay.dat", plot.str());
  out.write("summary.json", summary.dump(2) + "\n");
}

// -------------------------------------------------------------------- mz
void run_mz(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  const TriangularFamily family = load_or_grid(m, opt);
  const SeparationReport sep = separation_report(m, family);
  const FamilyBounds bounds = family_bounds(m, family);

  std::ostringstream csv, plot;
  csv << "L,k_L,m_L,A,B,B_over_A,a,b,s,eta\n";
  for (std::size_t i = 0; i < bounds.frame.size(); ++i) {
    const auto& fb = bounds.frame[i];
    const auto& rb = bounds.riesz[i];
    const auto& lv = sep.levels[i];
    csv << num(fb.bandwidth) << ',' << fb.dimension << ',' << fb.m_points << ',' << num(fb.lower)
        << ',' << num(fb.upper) << ',' << num_or_inf(fb.condition()) << ',' << num(rb.lower) << ','
        << num(rb.upper) << ',' << num_or_inf(lv.separation) << ',' << num(lv.mesh) << '\n';
    plot << num(fb.bandwidth) << ' ' << num_or_inf(fb.condition()) << '\n';
  }
  json summary;
  summary["empirically_mz"] = bounds.empirically_mz();
  summary["frame_spread"] = std::isfinite(bounds.frame_spread())
                                ? json(bounds.frame_spread())
                                : json("inf");
  out.stage("mz");
  out.write("mz.csv", csv.str());
  out.write("mz_condition.dat", plot.str());
  out.write("summary.json", summary.dump(2) + "\n");
  if (!opt.family_out.empty()) out.write(opt.family_out, family_to_string(family));
}

// ----------------------------------------------------------------- interp
void run_interp(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  const TriangularFamily family = load_or_grid(m, opt);

  std::ostringstream csv, plot;
  csv << "L,k_L,m_L,residual,norm_sq,recovery_error,degenerate\n";
  json levels = json::array();
  for (std::size_t li = 0; li < family.levels.size(); ++li) {
    const double L = family.levels[li];
    const EigenBasis basis(m, L);
    const auto& pts = family.points[li];
    // node data sampled from a seeded random band-limited function
    Rng rng(opt.seed);
    Eigen::VectorXd truth(basis.size());
    for (int i = 0; i < basis.size(); ++i) truth[i] = rng.normal();
    Eigen::VectorXd values(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j)
      values[static_cast<Eigen::Index>(j)] = truth.dot(basis.evaluate_all(pts[j]));
    const Interpolant itp = min_norm_interpolant(basis, pts, values);
    // recovered eigenbasis coefficients: beta = Phi^T c
    const Eigen::MatrixXd phi = basis.evaluate_matrix(pts);
    const Eigen::VectorXd beta = phi.transpose() * itp.coefficients;
    const double recovery =
        static_cast<int>(pts.size()) == basis.size() ? (beta - truth).cwiseAbs().maxCoeff()
                                                     : std::nan("");
    csv << num(L) << ',' << basis.size() << ',' << pts.size() << ',' << num(itp.residual) << ','
        << num(itp.norm_sq) << ',' << (std::isnan(recovery) ? "" : num(recovery)) << ','
        << (itp.degenerate ? 1 : 0) << '\n';
    plot << num(L) << ' ' << num(itp.residual) << '\n';
    levels.push_back({{"L", L},
                      {"residual", itp.residual},
                      {"norm_sq", itp.norm_sq},
                      {"degenerate", itp.degenerate}});
  }
  json summary;
  summary["levels"] = levels;
  out.stage("interp");
  out.write("interp.csv", csv.str());
  out.write("interp_residual.dat", plot.str());
  out.write("summary.json", summary.dump(2) + "\n");
}

// ----------------------------------------------------------- concentration
void run_concentration(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  TriangularFamily family;
  const bool with_family = !opt.family_in.empty();
  if (with_family) {
    std::ifstream is(opt.family_in);
    if (!is) throw error("cannot read family file " + opt.family_in);
    family = read_family(is);
  }
  PlateauOptions popt;
  popt.dilation = opt.rho;
  popt.annulus_width = opt.annulus;
  const PlateauReport report = plateau_scan(m, with_family ? &family : nullptr, opt.bandwidths,
                                            opt.radius_scales, opt.eps, opt.gammas, popt);

  std::ostringstream csv;
  csv << "L,R,eps,T1,T2,T1_minus_T2,trace_ratio";
  for (double g : opt.gammas) csv << ",count_gt_" << fmt(g);
  csv << ",N_L,n_L\n";
  for (const auto& cell : report.cells) {
    csv << num(cell.bandwidth) << ',' << num(cell.radius_scale) << ',' << num(opt.eps) << ','
        << num(cell.t1) << ',' << num(cell.t2) << ',' << num(cell.t1 - cell.t2) << ','
        << num(cell.trace_ratio);
    for (int c : cell.counts) csv << ',' << c;
    csv << ',' << cell.family_outer << ',' << cell.family_inner << '\n';
  }

  // per-bandwidth plot files plus log-log growth exponents of T1 - T2 in R
  json fits = json::array();
  for (double L : opt.bandwidths) {
    std::ostringstream plot;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& cell : report.cells) {
      if (cell.bandwidth != L) continue;
      plot << num(cell.radius_scale) << ' ' << num(cell.t1 - cell.t2) << '\n';
      if (cell.t1 - cell.t2 > 0) {
        const double x = std::log(cell.radius_scale), y = std::log(cell.t1 - cell.t2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
      }
    }
    char name[64];
    std::snprintf(name, sizeof(name), "concentration_growth_L%g.dat", L);
    out.write(name, plot.str());
    const double slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    fits.push_back({{"L", L}, {"exponent", slope}});
  }

  json summary;
  summary["eps"] = opt.eps;
  summary["rho"] = report.dilation;
  summary["t"] = report.annulus_width;
  summary["growth_exponents"] = fits;
  summary["growth_spread"] = report.growth_spread;
  out.stage("concentration");
  out.write("concentration.csv", csv.str());
  out.write("summary.json", summary.dump(2) + "\n");
}

// ---------------------------------------------------------------- density
void run_density(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  const TriangularFamily family = load_or_grid(m, opt);
  const DensityReport report =
      density_estimate(m, family, opt.bandwidths, opt.radius_scales);

  std::ostringstream csv, plot_min, plot_max;
  csv << "L,R,min_ratio,max_ratio\n";
  const double l_last = report.bandwidths.back();
  for (const auto& cell : report.grid) {
    csv << num(cell.bandwidth) << ',' << num(cell.radius_scale) << ',' << num(cell.min_ratio)
        << ',' << num(cell.max_ratio) << '\n';
    if (cell.bandwidth == l_last) {
      plot_min << num(cell.radius_scale) << ' ' << num(cell.min_ratio) << '\n';
      plot_max << num(cell.radius_scale) << ' ' << num(cell.max_ratio) << '\n';
    }
  }
  json summary;
  summary["dminus"] = report.lower_estimate;
  summary["dplus"] = report.upper_estimate;
  summary["dminus_r_first"] = report.lower_estimate_r_first;
  summary["dplus_r_first"] = report.upper_estimate_r_first;
  summary["grid_meta"] = {{"L", report.bandwidths},
                          {"R", report.radius_scales},
                          {"aggregation", "extrema over the two largest grid values per axis"}};
  out.stage("density");
  out.write("density.csv", csv.str());
  out.write("density_min.dat", plot_min.str());
  out.write("density_max.dat", plot_max.str());
  out.write("summary.json", summary.dump(2) + "\n");
}

// ----------------------------------------------------------------- fekete
void run_fekete(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  TriangularFamily family;
  family.provenance = "fekete";
  std::ostringstream csv, plot;
  csv << "L,k_L,log_abs_det,separation,lagrange_sup,exchange_swaps\n";
  json levels = json::array();
  for (double L : opt.bandwidths) {
    FeketeOptions fopt;
    fopt.candidate_count = opt.candidates;
    fopt.exchange_rounds = opt.exchange_rounds;
    fopt.seed = opt.seed;
    const FeketeResult res = approximate_fekete(m, L, fopt);
    family.add(L, res.nodes);
    csv << num(L) << ',' << res.nodes.size() << ',' << num(res.log_abs_det) << ','
        << num_or_inf(res.separation) << ',' << num(res.lagrange_sup) << ','
        << res.exchange_swaps << '\n';
    plot << num(L) << ' ' << num_or_inf(res.separation) << '\n';
    levels.push_back({{"L", L},
                      {"k_L", res.nodes.size()},
                      {"log_abs_det", res.log_abs_det},
                      {"separation", res.separation},
                      {"lagrange_sup", res.lagrange_sup},
                      {"candidates", res.candidate_descriptor},
                      {"exchange_swaps", res.exchange_swaps}});
  }
  json summary;
  summary["levels"] = levels;
  out.stage("fekete");
  out.write("fekete.csv", csv.str());
  out.write("fekete_separation.dat", plot.str());
  out.write(opt.family_out.empty() ? "fekete_nodes.txt" : opt.family_out,
            family_to_string(family));
  out.write("summary.json", summary.dump(2) + "\n");
}

// --------------------------------------------------------------- equidist
void run_equidist(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  TriangularFamily family;
  if (!opt.family_in.empty()) {
    std::ifstream is(opt.family_in);
    if (!is) throw error("cannot read family file " + opt.family_in);
    family = read_family(is);
  } else {
    family.provenance = "fekete";
    for (double L : opt.bandwidths) {
      FeketeOptions fopt;
      fopt.candidate_count = opt.candidates;
      fopt.exchange_rounds = opt.exchange_rounds;
      fopt.seed = opt.seed;
      family.add(L, approximate_fekete(m, L, fopt).nodes);
    }
  }
  const EquidistReport report = equidistribution_test(m, family, opt.bandwidths);

  std::ostringstream csv, plot;
  std::size_t nf = 0;
  for (const auto& lv : report.levels) nf = std::max(nf, lv.moment_errors.size());
  csv << "L,discrepancy,mass_error";
  for (std::size_t f = 1; f <= nf; ++f) csv << ",moment_err_" << f;
  csv << '\n';
  for (const auto& lv : report.levels) {
    csv << num(lv.bandwidth) << ',' << num(lv.cap_discrepancy) << ',' << num(lv.mass_error);
    for (double e : lv.moment_errors) csv << ',' << num(e);
    csv << '\n';
    plot << num(lv.bandwidth) << ' ' << num(lv.cap_discrepancy) << '\n';
  }
  json summary;
  json jlevels = json::array();
  for (const auto& lv : report.levels)
    jlevels.push_back({{"L", lv.bandwidth},
                       {"discrepancy", lv.cap_discrepancy},
                       {"mass_error", lv.mass_error},
                       {"moment_errors", lv.moment_errors}});
  summary["levels"] = jlevels;
  out.stage("equidist");
  out.write("equidist.csv", csv.str());
  out.write("equidist_discrepancy.dat", plot.str());
  out.write("summary.json", summary.dump(2) + "\n");
}

// -------------------------------------------------------------- admissible
void run_admissible(const CommonOptions& opt, Outputs& out) {
  const SpectralManifold m = SpectralManifold::parse(opt.manifold);
  const double L = opt.bandwidths.back();
  const ProductPropertyResult res =
      product_property_check(m, L, opt.eps, opt.c_grid, opt.seed);

  std::ostringstream csv, plot;
  csv << "C,residual\n";
  for (const auto& [c, r] : res.residual_per_constant) {
    csv << num(c) << ',' << num(r) << '\n';
    plot << num(c) << ' ' << num(r) << '\n';
  }
  json summary;
  summary["manifold"] = m.name();
  summary["L"] = L;
  summary["eps"] = opt.eps;
  if (std::isfinite(res.constant)) {
    summary["C"] = res.constant;
    summary["residual"] = res.residual_at_constant;
  } else {
    summary["C"] = "inf";
  }
  out.stage("admissible");
  out.write("admissible.csv", csv.str());
  out.write("admissible_residual.dat", plot.str());
  out.write("summary.json", summary.dump(2) + "\n");
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--manifold", opt.manifold, "manifold: circle | torus2 | sphere2 | product(a,b)");
  cmd->add_option("--L", opt.bandwidths, "bandwidth grid")->expected(-1);
  cmd->add_option("--R", opt.radius_scales, "radius scale grid (balls of radius R/L)")->expected(-1);
  cmd->add_option("--eps", opt.eps, "smooth cutoff / dilation parameter");
  cmd->add_option("--rho", opt.rho, "bandwidth dilation for the interpolation lemma");
  cmd->add_option("--nu", opt.nu, "grid oversampling factor");
  cmd->add_option("--gamma", opt.gammas, "eigenvalue count thresholds")->expected(-1);
  cmd->add_option("--t", opt.annulus, "annulus width (0 = 3/s default)");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--family-in", opt.family_in, "read the point family from this file");
  cmd->add_option("--family-out", opt.family_out, "write the point family to this file");
  cmd->add_option("--filter", opt.filter, "kernel filter: sharp | riesz | smooth | smooth2");
  cmd->add_option("--N", opt.order, "Bochner-Riesz / decay order");
  cmd->add_option("--filter-eps", opt.filter_eps, "smooth filter width");
  cmd->add_option("--candidates", opt.candidates, "Fekete candidate count (0 = 4 k_L)");
  cmd->add_option("--exchange-rounds", opt.exchange_rounds, "Fekete exchange passes");
  cmd->add_option("--dilation", opt.dilation_eps, "Fekete dilation epsilon");
  cmd->add_option("--C-grid", opt.c_grid, "admissibility constant grid")->expected(-1);
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "bandlab: sampling, interpolation, concentration and Fekete experiments\n"
      "for band-limited spaces on compact manifolds.\n\n"
      "Exit codes: 0 ok, 2 config error, 3 precondition violation,\n"
      "4 singular configuration, 5 numerical integrity, 6 missing level, 7 I/O."};
  app.set_config("--config", "", "flat key=value config file (# comments); flags override");
  app.require_subcommand(1);

  CommonOptions opt;
  add_common(&app, opt);  // shared flags; config keys are flat key=value
  const char* names[] = {"spectrum", "kernel", "mz", "interp", "concentration",
                         "density", "fekete", "equidist", "admissible"};
  const char* descr[] = {"eigenspace dimensions and Weyl ratios",
                         "kernel decay profiles and fitted constants",
                         "Marcinkiewicz-Zygmund / Riesz bounds of a family",
                         "minimal-norm interpolation diagnostics",
                         "concentration operator spectra and traces",
                         "Beurling-Landau density estimates",
                         "approximate Fekete points",
                         "equidistribution of a point family",
                         "product property constant"};
  for (int i = 0; i < 9; ++i) app.add_subcommand(names[i], descr[i])->fallthrough(true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (opt.bandwidths.empty() || opt.radius_scales.empty() || opt.gammas.empty())
      throw config_error("grids must be nonempty");
    Outputs out(opt.out_dir, config_snapshot(app));
    if (sub == "spectrum") run_spectrum(opt, out);
    else if (sub == "kernel") run_kernel(opt, out);
    else if (sub == "mz") run_mz(opt, out);
    else if (sub == "interp") run_interp(opt, out);
    else if (sub == "concentration") run_concentration(opt, out);
    else if (sub == "density") run_density(opt, out);
    else if (sub == "fekete") run_fekete(opt, out);
    else if (sub == "equidist") run_equidist(opt, out);
    else if (sub == "admissible") run_admissible(opt, out);
    out.finish(sub);
    return kOk;
  } catch (const std::exception& e) {
    int code = kIoError;
    const char* type = "error";
    if (dynamic_cast<const config_error*>(&e) ||
        dynamic_cast<const unimplemented_manifold_error*>(&e)) {
      code = kConfigError;
      type = "config";
    } else if (dynamic_cast<const radius_too_large_error*>(&e) ||
               dynamic_cast<const bandwidth_too_small_error*>(&e)) {
      code = kPreconditionError;
      type = "precondition";
    } else if (dynamic_cast<const singular_configuration_error*>(&e) ||
               dynamic_cast<const enlarge_candidates_error*>(&e)) {
      code = kSingularError;
      type = "singular";
    } else if (dynamic_cast<const numerical_integrity_error*>(&e)) {
      code = kIntegrityError;
      type = "integrity";
    } else if (dynamic_cast<const missing_level_error*>(&e)) {
      code = kMissingLevelError;
      type = "missing_level";
    }
    json err;
    err["error"] = {{"type", type}, {"message", e.what()}, {"exit_code", code}};
    std::fputs((err.dump(2) + "\n").c_str(), stdout);
    return code;
  }
}

}  // namespace bandlab::cli
