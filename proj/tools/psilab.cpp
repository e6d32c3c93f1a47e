// psilab: deterministic CSV front end for the Riesz-mean / zeta-zero
// laboratory. Exit codes: 0 pass, 1 verification fail, 2 usage, 3 resource,
// 4 data file.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "psilab/approx.hpp"
#include "psilab/arith.hpp"
#include "psilab/csvio.hpp"
#include "psilab/euler.hpp"
#include "psilab/fit.hpp"
#include "psilab/formula.hpp"
#include "psilab/version.hpp"
#include "psilab/zeros.hpp"
#include "psilab/zeta.hpp"

namespace {

using namespace psilab;

constexpr const char* kDefaultZeros = "data/zeros/zeta_zeros_2000.txt";

std::string default_zeros_path() {
  if (const char* env = std::getenv("PSILAB_ZEROS"); env && *env) return env;
  return kDefaultZeros;
}

std::string checksum_hex(uint64_t checksum) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(checksum));
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0) || !(hi >= lo) || points < 1)
    throw std::invalid_argument("grid needs 0 < min <= max and points >= 1");
  std::vector<double> xs;
  if (points == 1) {
    xs.push_back(lo);
    return xs;
  }
  for (int i = 0; i < points; ++i)
    xs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) /
                                            static_cast<double>(points - 1)));
  return xs;
}

struct Options {
  // shared
  std::string zeros_path = default_zeros_path();
  int precision_bits = 53;
  // riesz
  int k = 2;
  double x = 0;
  bool x_set = false;
  double x_max = 0;
  bool x_max_set = false;
  double x_step = 1.0;
  uint64_t table_size = 0;
  // verify-factorization
  double s_re = 3.0;
  double s_im = 0.0;
  int n = 0;
  bool n_set = false;
  uint64_t series_limit = 100000;
  uint64_t prime_cutoff = 100000;
  double slack = 1e-5;
  // explicit / exponent-fit grids
  std::vector<double> x_list;
  double x_min = 10.0;
  int points = 40;
  std::size_t max_zeros = 100;
  // jlambda
  double lambda = 0.5;
  std::vector<double> T_list;
  double t_min = 50.0;
  int t_points = 20;
  bool do_fit = false;
  // tail diagnostic
  double epsilon = 0.05;
  double grid_step = 50.0;
  // boundary scan
  double delta = 1.0 / 3.0;
  std::vector<double> t_list;
  double t_max = 10.0;
  // zeta
  bool derivative = false;
};

EvalParams eval_params(const Options& opt) {
  EvalParams ep;
  ep.working_precision_bits = opt.precision_bits;
  return ep;
}

uint64_t auto_table_size(const std::vector<double>& xs, uint64_t requested) {
  if (requested != 0) return requested;
  double m = 1;
  for (double x : xs) m = std::max(m, x);
  return static_cast<uint64_t>(std::floor(m));
}

int cmd_riesz(const Options& opt) {
  std::vector<double> xs;
  if (opt.x_set) xs.push_back(opt.x);
  if (opt.x_max_set) {
    if (!(opt.x_step > 0))
      throw std::invalid_argument("--step must be positive");
    for (double x = opt.x_step; x <= opt.x_max + 1e-9; x += opt.x_step)
      xs.push_back(x);
  }
  if (xs.empty())
    throw std::invalid_argument("riesz needs --x or --x-max (with --step)");
  for (double x : xs)
    if (x > kExactRieszLimit)
      throw resource_error(
          "exact Riesz column is limited to x <= " +
          fmt_double(kExactRieszLimit) + "; got x = " + fmt_double(x));

  ArithTable table = build_arith_table(auto_table_size(xs, opt.table_size));

  RunManifest man;
  man.command = "riesz";
  man.add("k", static_cast<long long>(opt.k));
  if (opt.x_set) man.add("x", opt.x);
  if (opt.x_max_set) {
    man.add("x_max", opt.x_max);
    man.add("step", opt.x_step);
  }
  man.add("table_size", static_cast<long long>(table.limit));
  man.precision_bits = 53;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"x", "S_k_exact_num", "S_k_exact_den", "S_k_float"});
  for (double x : xs) {
    const mpq_class s = riesz_mean(opt.k, mpq_class(x), table);
    const FloatVal f = riesz_mean_float(opt.k, x, table);
    csv.row({fmt_double(x), s.get_num().get_str(), s.get_den().get_str(),
             fmt_double(f.value)});
  }
  return 0;
}

int cmd_verify_factorization(const Options& opt) {
  const int n = opt.n_set ? opt.n : 1;
  EulerProductSpec spec;
  spec.n = n;
  spec.prime_cutoff = opt.prime_cutoff;
  const std::complex<double> s{opt.s_re, opt.s_im};

  ArithTable table = build_arith_table(opt.series_limit);
  const FactorizationReport rep =
      verify_factorization(n, s, opt.series_limit, spec, table, opt.slack);

  RunManifest man;
  man.command = "verify-factorization";
  man.add("n", static_cast<long long>(n));
  man.add("s_re", opt.s_re);
  man.add("s_im", opt.s_im);
  man.add("series_limit", static_cast<long long>(opt.series_limit));
  man.add("prime_cutoff", static_cast<long long>(opt.prime_cutoff));
  man.add("slack", opt.slack);
  man.precision_bits = 64;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"n", "s_re", "s_im", "F_re", "F_im", "dirichlet_re",
              "dirichlet_im", "abs_diff", "tolerance", "pass"});
  csv.row({std::to_string(rep.n), fmt_double(rep.s.real()),
           fmt_double(rep.s.imag()), fmt_double(rep.lhs.value.real()),
           fmt_double(rep.lhs.value.imag()), fmt_double(rep.rhs.value.real()),
           fmt_double(rep.rhs.value.imag()), fmt_double(rep.abs_diff),
           fmt_double(rep.tolerance), rep.pass ? "1" : "0"});
  return rep.pass ? 0 : 1;
}

int cmd_explicit(const Options& opt) {
  std::vector<double> xs =
      opt.x_list.empty() ? log_grid(opt.x_min, opt.x_max_set ? opt.x_max : 1e4,
                                    opt.points)
                         : opt.x_list;

  ZeroTable zeros = load_zeros(opt.zeros_path);
  TabulateParams tp;
  tp.eval = eval_params(opt);
  tabulate_zeta_prime(zeros, tp);

  FormulaConfig config;
  config.k = opt.k;
  double xmax = 1;
  for (double x : xs) xmax = std::max(xmax, x);
  config.n = opt.n_set ? opt.n : default_n(xmax);
  config.x_grid = xs;
  config.prime_cutoff = opt.prime_cutoff;
  config.zeros = &zeros;
  config.zero_count = std::min(opt.max_zeros, zeros.size() - 1);
  config.eval = eval_params(opt);

  ArithTable table = build_arith_table(auto_table_size(xs, opt.table_size));
  const CompareReport rep = compare(config, table);

  RunManifest man;
  man.command = "explicit";
  man.add("k", static_cast<long long>(opt.k));
  man.add("n", static_cast<long long>(config.n));
  man.add("prime_cutoff", static_cast<long long>(opt.prime_cutoff));
  man.add("max_zeros", static_cast<long long>(config.zero_count));
  man.add("grid_points", static_cast<long long>(xs.size()));
  man.add("table_size", static_cast<long long>(table.limit));
  man.zeros_checksum = checksum_hex(zeros.source_checksum);
  man.precision_bits = opt.precision_bits;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  if (opt.max_zeros >= zeros.size())
    csv.comment("requested zero count exceeds the table; "
                "using the largest available midpoint contour");
  if (rep.summary.experimental_k)
    csv.comment("k < 2 is experimental: no convergence-rate guarantee");
  csv.comment("T substitutes for the analytic window x^4 <= T <= x^4 + 1, "
              "which is unreachable at this scale");
  csv.header({"x", "S_k", "main", "E_k", "Y", "scaled_Y", "discrepancy",
              "T_used", "zero_count"});
  for (const RieszSample& s : rep.samples) {
    csv.row({fmt_double(s.x), fmt_double(s.s_value), fmt_double(s.main),
             fmt_double(s.residual), fmt_double(s.zero_sum),
             fmt_double(s.scaled_zero_sum), fmt_double(s.discrepancy),
             fmt_double(rep.summary.T_used),
             std::to_string(rep.summary.zeros_used)});
  }
  csv.comment("fraction_improved: " +
              fmt_double(rep.summary.fraction_improved));
  csv.comment("max_scaled_discrepancy: " +
              fmt_double(rep.summary.max_scaled_discrepancy));
  csv.comment("sign_changes_E: " + std::to_string(rep.summary.sign_changes));
  if (rep.summary.doubling_checked) {
    csv.comment("doubled_zero_count: " +
                std::to_string(rep.summary.zeros_doubled));
    csv.comment("doubling_non_increase_fraction: " +
                fmt_double(rep.summary.doubling_fraction));
  }
  return 0;
}

int cmd_jlambda(const Options& opt) {
  ZeroTable zeros = load_zeros(opt.zeros_path);
  TabulateParams tp;
  tp.eval = eval_params(opt);
  tabulate_zeta_prime(zeros, tp);

  std::vector<double> Ts = opt.T_list;
  if (Ts.empty()) {
    Ts = log_grid(opt.t_min, zeros.max_ordinate(), opt.t_points);
    // the grid's last point may round one ulp past the coverage limit
    for (double& T : Ts) T = std::min(T, zeros.max_ordinate());
  }

  RunManifest man;
  man.command = "jlambda";
  man.add("lambda", opt.lambda);
  man.add("grid_points", static_cast<long long>(Ts.size()));
  man.zeros_checksum = checksum_hex(zeros.source_checksum);
  man.precision_bits = opt.precision_bits;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"T", "J"});
  std::vector<double> fitT, fitJ;
  for (double T : Ts) {
    const double J = j_lambda(zeros, opt.lambda, T);
    csv.row({fmt_double(T), fmt_double(J)});
    if (T > 0 && J > 0) {
      fitT.push_back(T);
      fitJ.push_back(J);
    }
  }
  if (opt.do_fit && fitT.size() >= 3) {
    const PowerLawFit f = fit_power_law(fitT, fitJ);
    csv.comment("loglog_slope_J_vs_T: " + fmt_double(f.slope));
    csv.comment("loglog_slope_stderr: " + fmt_double(f.slope_stderr));
    csv.comment("loglog_r2: " + fmt_double(f.r2));
    // growth of J/T against log T, the conjectured (lambda-1)^2 exponent
    std::vector<double> u, v;
    for (std::size_t i = 0; i < fitT.size(); ++i) {
      u.push_back(std::log(std::log(fitT[i])));
      v.push_back(std::log(fitJ[i] / fitT[i]));
    }
    const PowerLawFit g = fit_linear(u, v);
    csv.comment("logT_exponent_of_J_over_T: " + fmt_double(g.slope));
  }
  return 0;
}

int cmd_exponent_fit(const Options& opt) {
  const double hi = opt.x_max_set ? opt.x_max : 1e6;
  std::vector<double> xs = opt.x_list.empty()
                               ? log_grid(opt.x_min, hi, opt.points)
                               : opt.x_list;
  ArithTable table = build_arith_table(auto_table_size(xs, opt.table_size));
  const ExponentFit fit = exponent_fit(opt.k, xs, table, opt.prime_cutoff);

  RunManifest man;
  man.command = "exponent-fit";
  man.add("k", static_cast<long long>(opt.k));
  man.add("grid_points", static_cast<long long>(xs.size()));
  man.add("prime_cutoff", static_cast<long long>(opt.prime_cutoff));
  man.add("table_size", static_cast<long long>(table.limit));
  man.precision_bits = 53;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"x", "E_k", "abs_E_k"});
  for (double x : xs) {
    const RieszSample s = residual(opt.k, x, table, opt.prime_cutoff);
    csv.row({fmt_double(x), fmt_double(s.residual),
             fmt_double(std::fabs(s.residual))});
  }
  csv.comment("slope: " + fmt_double(fit.fit.slope));
  csv.comment("slope_stderr: " + fmt_double(fit.fit.slope_stderr));
  csv.comment("r2: " + fmt_double(fit.fit.r2));
  csv.comment("excluded_zero_points: " + std::to_string(fit.excluded));
  return 0;
}

int cmd_tabulate(const Options& opt) {
  ZeroTable zeros = load_zeros(opt.zeros_path);
  TabulateParams tp;
  tp.eval = eval_params(opt);
  tabulate_zeta_prime(zeros, tp);

  RunManifest man;
  man.command = "tabulate";
  man.add("count", static_cast<long long>(zeros.size()));
  man.zeros_checksum = checksum_hex(zeros.source_checksum);
  man.precision_bits = opt.precision_bits;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"gamma", "zeta_prime_re", "zeta_prime_im", "err"});
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    csv.row({fmt_double(zeros.gamma[i]), fmt_double(zeros.zeta_prime[i].real()),
             fmt_double(zeros.zeta_prime[i].imag()),
             fmt_double(zeros.zeta_prime_err[i])});
  }
  return 0;
}

int cmd_tail_diagnostic(const Options& opt) {
  ZeroTable zeros = load_zeros(opt.zeros_path);
  TabulateParams tp;
  tp.eval = eval_params(opt);
  tabulate_zeta_prime(zeros, tp);
  const TailDiagnostic d =
      tail_diagnostic(zeros, opt.k, opt.epsilon, opt.grid_step);

  RunManifest man;
  man.command = "tail-diagnostic";
  man.add("k", static_cast<long long>(opt.k));
  man.add("epsilon", opt.epsilon);
  man.add("grid_step", opt.grid_step);
  man.zeros_checksum = checksum_hex(zeros.source_checksum);
  man.precision_bits = opt.precision_bits;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"kind", "key", "sum", "partial_sum"});
  for (std::size_t b = 0; b < d.block_sums.size(); ++b) {
    csv.row({"block", std::to_string(b), fmt_double(d.block_sums[b]),
             fmt_double(d.block_partial_sums[b])});
  }
  for (std::size_t i = 0; i < d.grid_T.size(); ++i) {
    csv.row({"grid", fmt_double(d.grid_T[i]), fmt_double(d.grid_increments[i]),
             fmt_double(d.grid_partial_sums[i])});
  }
  csv.comment("total: " + fmt_double(d.total));
  csv.comment("first_to_last_block_ratio: " +
              fmt_double(d.first_to_last_block_ratio));
  csv.comment(std::string("increments_decay: ") +
              (d.increments_decay ? "1" : "0"));
  return 0;
}

int cmd_boundary_scan(const Options& opt) {
  std::vector<double> ts = opt.t_list;
  if (ts.empty()) {
    const int pts = std::max(2, opt.points);
    for (int i = 0; i < pts; ++i)
      ts.push_back(opt.t_max * static_cast<double>(i) /
                   static_cast<double>(pts - 1));
  }
  const BoundaryScanReport rep =
      boundary_growth_scan(opt.delta, ts, opt.n, opt.prime_cutoff);

  RunManifest man;
  man.command = "boundary-scan";
  man.add("delta", opt.delta);
  man.add("n", static_cast<long long>(opt.n));
  man.add("prime_cutoff", static_cast<long long>(opt.prime_cutoff));
  man.add("samples", static_cast<long long>(ts.size()));
  man.precision_bits = 64;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"t", "abs_h", "err"});
  for (const BoundaryScanRow& r : rep.rows)
    csv.row({fmt_double(r.t), fmt_double(r.abs_h), fmt_double(r.err)});
  csv.comment("c_hat: " + fmt_double(rep.c_hat));
  return 0;
}

int cmd_zeta(const Options& opt) {
  const std::complex<double> s{opt.s_re, opt.s_im};
  const EvalParams ep = eval_params(opt);
  const ApproxComplex z = opt.derivative ? zeta_prime(s, ep) : zeta(s, ep);

  RunManifest man;
  man.command = "zeta";
  man.add("s_re", opt.s_re);
  man.add("s_im", opt.s_im);
  man.add("derivative", static_cast<long long>(opt.derivative ? 1 : 0));
  man.precision_bits = opt.precision_bits;

  CsvWriter csv(std::cout);
  csv.manifest(man);
  csv.header({"re", "im", "err", "rigorous"});
  csv.row({fmt_double(z.value.real()), fmt_double(z.value.imag()),
           fmt_double(z.err), z.rigorous ? "1" : "0"});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  Options opt;

  CLI::App app{"Riesz means of n/psi(n), certified zeta evaluation, Euler "
               "products, zero tables, and the explicit-formula comparison"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("psilab ") + kVersion);

  auto add_zeros_flag = [&](CLI::App* cmd) {
    cmd->add_option("--zeros", opt.zeros_path,
                    "zeros file (default: PSILAB_ZEROS or " +
                        std::string(kDefaultZeros) + ")");
  };
  auto add_precision_flag = [&](CLI::App* cmd) {
    cmd->add_option("--precision", opt.precision_bits,
                    "working precision bits: 53, 64, or 113")
        ->check(CLI::IsMember({53, 64, 113}));
  };

  CLI::App* riesz = app.add_subcommand("riesz", "exact k-th Riesz means");
  riesz->add_option("--k", opt.k, "Riesz order")->required();
  riesz->add_option("--x", opt.x, "single evaluation point")
      ->each([&](const std::string&) { opt.x_set = true; });
  riesz->add_option("--x-max", opt.x_max, "grid upper end")
      ->each([&](const std::string&) { opt.x_max_set = true; });
  riesz->add_option("--step", opt.x_step, "grid step (default 1)");
  riesz->add_option("--table-size", opt.table_size,
                    "arithmetic table limit (default: derived from x)");

  CLI::App* verify = app.add_subcommand(
      "verify-factorization",
      "check zeta(s) zeta(2^n(s+1)) h_n(s) / zeta(s+1) against the series");
  verify->add_option("--s-re", opt.s_re, "Re s (> 1)")->required();
  verify->add_option("--s-im", opt.s_im, "Im s (default 0)");
  verify->add_option("--n", opt.n, "factor index (default 1)")
      ->each([&](const std::string&) { opt.n_set = true; });
  verify->add_option("--N", opt.series_limit, "Dirichlet series cutoff");
  verify->add_option("--P", opt.prime_cutoff, "Euler product prime cutoff");
  verify->add_option("--slack", opt.slack, "extra tolerance (default 1e-5)");

  CLI::App* expl = app.add_subcommand(
      "explicit", "residual E_k(x) against the zero sum Y_{k,n}(x,T)");
  expl->add_option("--k", opt.k, "Riesz order (default 2)");
  expl->add_option("--n", opt.n, "h_n index (default: from x_max)")
      ->each([&](const std::string&) { opt.n_set = true; });
  expl->add_option("--x", opt.x_list, "explicit grid points");
  expl->add_option("--x-min", opt.x_min, "log grid start (default 10)");
  expl->add_option("--x-max", opt.x_max, "log grid end (default 1e4)")
      ->each([&](const std::string&) { opt.x_max_set = true; });
  expl->add_option("--points", opt.points, "log grid size (default 40)");
  expl->add_option("--max-zeros", opt.max_zeros,
                   "zeros under the contour (default 100)");
  expl->add_option("--P", opt.prime_cutoff, "Euler product prime cutoff");
  expl->add_option("--table-size", opt.table_size,
                   "arithmetic table limit (default: derived from grid)");
  add_zeros_flag(expl);
  add_precision_flag(expl);

  CLI::App* jl = app.add_subcommand("jlambda",
                                    "discrete moment J_{-lambda}(T)");
  jl->add_option("--lambda", opt.lambda, "moment parameter (< 3/2)")
      ->required();
  jl->add_option("--T", opt.T_list, "explicit T values");
  jl->add_option("--t-min", opt.t_min, "log grid start (default 50)");
  jl->add_option("--t-points", opt.t_points, "log grid size (default 20)");
  jl->add_flag("--fit", opt.do_fit, "append log-log slope comments");
  add_zeros_flag(jl);
  add_precision_flag(jl);

  CLI::App* ef = app.add_subcommand("exponent-fit",
                                    "decay exponent of |E_k(x)|");
  ef->add_option("--k", opt.k, "Riesz order (default 2)");
  ef->add_option("--x", opt.x_list, "explicit grid points");
  ef->add_option("--x-min", opt.x_min,
                 "log grid start (default 10; >= 100 avoids pre-asymptotic "
                 "points)");
  ef->add_option("--x-max", opt.x_max, "log grid end (default 1e6)")
      ->each([&](const std::string&) { opt.x_max_set = true; });
  ef->add_option("--points", opt.points, "log grid size (default 40)");
  ef->add_option("--P", opt.prime_cutoff, "prime cutoff for the main term");
  ef->add_option("--table-size", opt.table_size,
                 "arithmetic table limit (default: derived from grid)");

  CLI::App* tab = app.add_subcommand("tabulate",
                                     "refine zeros and cache zeta'(rho)");
  add_zeros_flag(tab);
  add_precision_flag(tab);

  CLI::App* tail = app.add_subcommand(
      "tail-diagnostic", "partial sums of gamma^{-(k-1/2)+eps}/|zeta'(rho)|");
  tail->add_option("--k", opt.k, "Riesz order, >= 2 (default 2)");
  tail->add_option("--epsilon", opt.epsilon, "exponent shift (default 0.05)");
  tail->add_option("--grid-step", opt.grid_step, "uniform T step (default 50)");
  add_zeros_flag(tail);
  add_precision_flag(tail);

  CLI::App* scan = app.add_subcommand(
      "boundary-scan", "growth of |h_n(-1+delta+it)| near the boundary");
  scan->add_option("--delta", opt.delta, "distance to Re s = -1, in (0,1/3]")
      ->required();
  scan->add_option("--n", opt.n,
                   "h_n index (convergence needs 2^-n + 0.01 < delta)")
      ->required();
  scan->add_option("--t", opt.t_list, "explicit t samples");
  scan->add_option("--t-max", opt.t_max, "linear grid end (default 10)");
  scan->add_option("--points", opt.points, "linear grid size");
  scan->add_option("--P", opt.prime_cutoff, "prime cutoff (default 1e5)");

  CLI::App* zt = app.add_subcommand("zeta", "certified zeta evaluation");
  zt->add_option("--s-re", opt.s_re, "Re s")->required();
  zt->add_option("--s-im", opt.s_im, "Im s (default 0)");
  zt->add_flag("--derivative", opt.derivative, "evaluate zeta' instead");
  add_precision_flag(zt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);  // prints the message and usage to stderr
    return 2;
  }

  int rc = 0;
  try {
    if (app.got_subcommand(riesz)) rc = cmd_riesz(opt);
    else if (app.got_subcommand(verify)) rc = cmd_verify_factorization(opt);
    else if (app.got_subcommand(expl)) rc = cmd_explicit(opt);
    else if (app.got_subcommand(jl)) rc = cmd_jlambda(opt);
    else if (app.got_subcommand(ef)) rc = cmd_exponent_fit(opt);
    else if (app.got_subcommand(tab)) rc = cmd_tabulate(opt);
    else if (app.got_subcommand(tail)) rc = cmd_tail_diagnostic(opt);
    else if (app.got_subcommand(scan)) rc = cmd_boundary_scan(opt);
    else if (app.got_subcommand(zt)) rc = cmd_zeta(opt);
  } catch (const data_file_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 4;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 3;
  } catch (const eval_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 2;
  }

  const double wall_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  std::cerr << "wall_ms=" << wall_ms << "\n";  // stderr only: stdout stays
                                               // byte-reproducible
  return rc;
}
