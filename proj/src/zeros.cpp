#include "psilab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "psilab/approx.hpp"
#include "psilab/csvio.hpp"

namespace psilab {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw data_file_error(os.str());
}

// Exactly `digits '.' digits{9,}` — the documented ordinate literal.
bool check_ordinate_literal(const std::string& tok, std::string* why) {
  const std::size_t dot = tok.find('.');
  if (dot == std::string::npos || dot == 0) {
    *why = "ordinate must be a positive decimal literal with a '.'";
    return false;
  }
  for (std::size_t i = 0; i < tok.size(); ++i) {
    if (i == dot) continue;
    if (tok[i] < '0' || tok[i] > '9') {
      *why = "non-numeric token";
      return false;
    }
  }
  if (tok.size() - dot - 1 < 9) {
    *why = "ordinate needs at least 9 fractional digits";
    return false;
  }
  return true;
}

struct CacheRow {
  double gamma;
  std::complex<double> zp;
  double err;
};

bool parse_cache(const std::string& path, uint64_t checksum, std::size_t count,
                 std::vector<CacheRow>* rows) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string line;
  bool checksum_seen = false;
  rows->clear();
  while (std::getline(in, line)) {
    if (line.empty()) return false;
    if (line[0] == '#') {
      const std::string key = "# source_fnv1a64: ";
      if (line.rfind(key, 0) == 0) {
        char expected[17];
        std::snprintf(expected, sizeof(expected), "%016llx",
                      static_cast<unsigned long long>(checksum));
        if (line.substr(key.size()) != expected) return false;
        checksum_seen = true;
      }
      continue;
    }
    CacheRow row;
    std::size_t a = line.find('\t');
    std::size_t b = a == std::string::npos ? a : line.find('\t', a + 1);
    std::size_t c = b == std::string::npos ? b : line.find('\t', b + 1);
    if (c == std::string::npos) return false;
    try {
      row.gamma = std::stod(line.substr(0, a));
      double re = std::stod(line.substr(a + 1, b - a - 1));
      double im = std::stod(line.substr(b + 1, c - b - 1));
      row.err = std::stod(line.substr(c + 1));
      row.zp = {re, im};
    } catch (const std::exception&) {
      return false;
    }
    if (!std::isfinite(row.gamma) || !std::isfinite(row.err) || row.err < 0 ||
        !std::isfinite(row.zp.real()) || !std::isfinite(row.zp.imag()))
      return false;
    rows->push_back(row);
  }
  return checksum_seen && rows->size() == count;
}

void write_cache(const ZeroTable& table, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw data_file_error(tmp + ": cannot open cache for writing");
    char checksum[17];
    std::snprintf(checksum, sizeof(checksum), "%016llx",
                  static_cast<unsigned long long>(table.source_checksum));
    out << "# zeta_prime tabulation cache\n";
    out << "# source_fnv1a64: " << checksum << "\n";
    out << "# columns: gamma re im err\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
      out << fmt_double(table.gamma[i]) << '\t'
          << fmt_double(table.zeta_prime[i].real()) << '\t'
          << fmt_double(table.zeta_prime[i].imag()) << '\t'
          << fmt_double(table.zeta_prime_err[i]) << '\n';
    }
    if (!out) throw data_file_error(tmp + ": cache write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw data_file_error(path + ": cache rename failed");
}

}  // namespace

std::size_t ZeroTable::count_below(double T) const {
  return static_cast<std::size_t>(
      std::upper_bound(gamma.begin(), gamma.end(), T) - gamma.begin());
}

uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string zeta_prime_cache_path(const std::string& source_path) {
  return source_path + ".zprime.cache";
}

ZeroTable load_zeros(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_file_error(path + ": cannot open zeros file");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());

  ZeroTable table;
  table.source_path = path;
  table.source_checksum = fnv1a64(bytes.data(), bytes.size());

  std::size_t pos = 0, line_no = 0;
  while (pos <= bytes.size()) {
    std::size_t nl = bytes.find('\n', pos);
    const bool last = nl == std::string::npos;
    std::string line = bytes.substr(pos, last ? std::string::npos : nl - pos);
    pos = last ? bytes.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty()) {
      if (last) break;  // trailing newline
      parse_fail(path, line_no, "blank line");
    }
    if (line[0] == '#') continue;
    std::string why;
    if (!check_ordinate_literal(line, &why)) parse_fail(path, line_no, why);
    const double g = std::stod(line);
    if (!std::isfinite(g) || g <= 0)
      parse_fail(path, line_no, "ordinate out of range");
    if (!table.gamma.empty() && g <= table.gamma.back())
      parse_fail(path, line_no, "non-monotone ordinate " + line);
    table.gamma.push_back(g);
  }
  if (table.gamma.empty())
    throw data_file_error(path + ": no ordinates found");

  table.zeta_prime.assign(table.size(), {0.0, 0.0});
  table.zeta_prime_err.assign(table.size(), 0.0);
  table.refined.assign(table.size(), 0);
  table.starts_at_first = table.gamma[0] > 14.0 && table.gamma[0] < 15.0;
  return table;
}

void tabulate_zeta_prime(ZeroTable& table, const TabulateParams& params) {
  if (table.tabulated) return;

  const std::string cache = zeta_prime_cache_path(table.source_path);
  if (params.use_cache) {
    std::vector<CacheRow> rows;
    if (parse_cache(cache, table.source_checksum, table.size(), &rows)) {
      bool usable = true;
      for (std::size_t i = 0; i < rows.size() && usable; ++i) {
        usable = std::fabs(rows[i].gamma - table.gamma[i]) <= 1e-6 &&
                 std::abs(rows[i].zp) > params.simplicity_threshold;
      }
      if (usable) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
          table.gamma[i] = rows[i].gamma;
          table.zeta_prime[i] = rows[i].zp;
          table.zeta_prime_err[i] = rows[i].err;
          table.refined[i] = 1;
        }
        table.tabulated = true;
        return;
      }
    }
  }

  for (std::size_t i = 0; i < table.size(); ++i) {
    double g;
    try {
      const RefineResult r =
          refine_zero(table.gamma[i], params.eval, params.refine_tolerance);
      g = r.gamma;
    } catch (const eval_error& e) {
      std::ostringstream os;
      os << "refinement failed at gamma = " << fmt_double(table.gamma[i])
         << ": " << e.what();
      throw eval_error(os.str());
    }
    ApproxComplex zp;
    try {
      zp = zeta_prime({0.5, g}, params.eval);
    } catch (const eval_error& e) {
      std::ostringstream os;
      os << "zeta' evaluation failed at gamma = " << fmt_double(g) << ": "
         << e.what();
      throw eval_error(os.str());
    }
    if (!(std::abs(zp.value) > params.simplicity_threshold)) {
      std::ostringstream os;
      os << "|zeta'(1/2 + i*" << fmt_double(g)
         << ")| = " << fmt_double(std::abs(zp.value))
         << " is at or below the simplicity threshold "
         << fmt_double(params.simplicity_threshold);
      throw eval_error(os.str());
    }
    table.gamma[i] = g;
    table.zeta_prime[i] = zp.value;
    table.zeta_prime_err[i] = zp.err;
    table.refined[i] = 1;
  }

  for (std::size_t i = 1; i < table.size(); ++i) {
    if (!(table.gamma[i] > table.gamma[i - 1])) {
      std::ostringstream os;
      os << "refinement collapsed ordering near gamma = "
         << fmt_double(table.gamma[i]);
      throw eval_error(os.str());
    }
  }
  table.tabulated = true;

  if (params.use_cache) write_cache(table, cache);
}

double j_lambda(const ZeroTable& table, double lambda, double T) {
  if (!(lambda < 1.5))
    throw std::domain_error(
        "j_lambda requires lambda < 3/2");
  if (!table.tabulated)
    throw std::invalid_argument("j_lambda needs a tabulated zero table");
  if (T > table.max_ordinate()) {
    std::ostringstream os;
    os << "T = " << fmt_double(T) << " exceeds the table coverage (largest "
       << "ordinate " << fmt_double(table.max_ordinate()) << ", "
       << table.size() << " zeros)";
    throw resource_error(os.str());
  }
  double sum = 0, comp = 0;
  for (std::size_t i = 0; i < table.size() && table.gamma[i] <= T; ++i) {
    const double term = std::pow(std::abs(table.zeta_prime[i]), -2.0 * lambda);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double midpoint_T(const ZeroTable& table, std::size_t m) {
  if (m >= table.size()) {
    std::ostringstream os;
    os << "midpoint after " << m << " zeros is beyond table coverage ("
       << table.size() << " zeros, largest ordinate "
       << fmt_double(table.max_ordinate()) << ")";
    throw resource_error(os.str());
  }
  if (m == 0) return table.gamma[0] / 2;
  return (table.gamma[m - 1] + table.gamma[m]) / 2;
}

TailDiagnostic tail_diagnostic(const ZeroTable& table, int k, double epsilon,
                               double grid_step) {
  if (k < 2)
    throw std::domain_error(
        "the convergence diagnostic requires k >= 2; got k = " +
        std::to_string(k));
  if (!table.tabulated)
    throw std::invalid_argument("tail diagnostic needs a tabulated table");
  if (!(grid_step > 0))
    throw std::invalid_argument("grid step must be positive");

  TailDiagnostic d;
  d.k = k;
  d.epsilon = epsilon;

  const double expo = -(k - 0.5) + epsilon;
  std::vector<double> terms(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    terms[i] = std::pow(table.gamma[i], expo) / std::abs(table.zeta_prime[i]);

  // Ten equal-count runs of ordinates.
  const std::size_t n = table.size();
  double running = 0, comp = 0;
  for (int b = 0; b < 10; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * n / 10;
    const std::size_t hi = static_cast<std::size_t>(b + 1) * n / 10;
    double bs = 0, bc = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double y = terms[i] - bc;
      const double t = bs + y;
      bc = (t - bs) - y;
      bs = t;
    }
    d.block_sums.push_back(bs);
    const double y = bs - comp;
    const double t = running + y;
    comp = (t - running) - y;
    running = t;
    d.block_partial_sums.push_back(running);
  }
  d.total = running;
  if (d.block_sums.back() > 0)
    d.first_to_last_block_ratio = d.block_sums.front() / d.block_sums.back();

  // Uniform-T grid partial sums and their increments.
  const double top = table.max_ordinate();
  for (double T = grid_step; T < top; T += grid_step) d.grid_T.push_back(T);
  d.grid_T.push_back(top);
  std::size_t idx = 0;
  double gsum = 0, gcomp = 0;
  double prev = 0;
  for (double T : d.grid_T) {
    while (idx < n && table.gamma[idx] <= T) {
      const double y = terms[idx] - gcomp;
      const double t = gsum + y;
      gcomp = (t - gsum) - y;
      gsum = t;
      ++idx;
    }
    d.grid_partial_sums.push_back(gsum);
    d.grid_increments.push_back(gsum - prev);
    prev = gsum;
  }
  d.increments_decay = !d.grid_increments.empty() &&
                       d.grid_increments.back() <= d.grid_increments.front();
  return d;
}

}  // namespace psilab
