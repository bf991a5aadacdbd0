#include "soliton/sweep.hpp"

#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace soliton {

namespace {

// Unit vector with the given positive-support pattern. Angles come from a
// Kronecker sequence kept away from the coordinate walls.
std::vector<double> point_on_pattern(const std::vector<bool>& support, int k) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i]) free.push_back(i);
  }
  std::vector<double> s(support.size(), 0.0);
  if (free.size() == 1) {
    s[free[0]] = 1.0;
    return s;
  }
  static constexpr double alpha[3] = {0.6180339887498949, 0.4142135623730950, 0.7320508075688772};
  std::vector<double> ang(free.size() - 1);
  for (std::size_t j = 0; j < ang.size(); ++j) {
    const double u = std::fmod(0.5 + (k + 1) * alpha[j], 1.0);
    ang[j] = (0.15 + 0.7 * u) * std::numbers::pi / 2;
  }
  // hyperspherical coordinates on the positive orthant
  double rest = 1.0;
  for (std::size_t j = 0; j < free.size(); ++j) {
    if (j + 1 < free.size()) {
      s[free[j]] = rest * std::cos(ang[j]);
      rest *= std::sin(ang[j]);
    } else {
      s[free[j]] = rest;
    }
  }
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += "; ";
    out += x;
  }
  return out;
}

}  // namespace

std::vector<SweepItem> sign_pattern_grid(FamilyKind family, int m, int epsilon, int per_region,
                                         bool with_einstein) {
  std::vector<SweepItem> items;
  if (per_region <= 0) return items;
  const bool oct = family == FamilyKind::gamma_tilde;
  const std::size_t dim = shoot_dim(family);
  const std::size_t i3 = oct ? 1 : 2;

  // every subset of the optional components; s4 always on, s3 tied to epsilon
  std::vector<std::size_t> optional;
  if (family == FamilyKind::gamma) optional = {0, 1};
  if (family == FamilyKind::zeta) optional = {1};
  if (oct) optional = {0};

  const std::size_t patterns = std::size_t{1} << optional.size();
  for (int einstein = 0; einstein <= (with_einstein ? 1 : 0); ++einstein) {
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      std::vector<bool> support(dim, false);
      support[dim - 1] = einstein == 0;
      if (family == FamilyKind::zeta) support[0] = true;
      if (epsilon == 1) support[i3] = true;
      for (std::size_t j = 0; j < optional.size(); ++j) {
        if (mask & (std::size_t{1} << j)) support[optional[j]] = true;
      }
      int free = 0;
      for (bool b : support) free += b;
      if (free == 0) continue;
      const int count = free == 1 ? 1 : per_region;
      for (int k = 0; k < count; ++k) {
        items.push_back({family, m, epsilon, point_on_pattern(support, k), einstein == 1});
      }
    }
  }
  return items;
}

SweepRow sweep_row(const SweepItem& item, const RunOptions& options) {
  SweepRow row;
  row.item = item;
  try {
    RunOptions opt = options;
    opt.keep_series = false;
    opt.sensitivity = false;
    const FamilyRun run = run_family(item.family, item.m, item.s, item.epsilon, opt, item.einstein);
    row.s_normalized = run.spec.s;
    row.mu_sq = run.report.mu_sq;
    row.nu_sq = run.report.nu_sq;
    row.C = run.report.C;
    row.classification = run.report.classification;
    row.base = run.report.base;
    row.expected = run.expected.cls;
    row.expected_base = run.expected.base;
    row.verdict = run.verdict;
    std::vector<std::string> p = run.problems;
    p.insert(p.end(), run.report.failed_checks.begin(), run.report.failed_checks.end());
    row.problems = join(p);
  } catch (const std::exception& e) {
    row.verdict = Verdict::inconclusive;
    row.problems = std::string("rejected: ") + e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const std::vector<SweepItem>& items, const RunOptions& options,
                                int jobs) {
  std::vector<SweepRow> rows(items.size());
  const auto n = static_cast<long>(items.size());
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#else
  (void)jobs;
#endif
  for (long i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] = sweep_row(items[static_cast<std::size_t>(i)], options);
  }
  return rows;
}

std::vector<SweepRow> run_sweep_serial(const std::vector<SweepItem>& items,
                                       const RunOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(items.size());
  for (const auto& it : items) rows.push_back(sweep_row(it, options));
  return rows;
}

double match_rate(const std::vector<SweepRow>& rows) {
  if (rows.empty()) return 1.0;
  std::size_t ok = 0;
  for (const auto& r : rows) ok += r.verdict == Verdict::matches;
  return static_cast<double>(ok) / static_cast<double>(rows.size());
}

}  // namespace soliton
