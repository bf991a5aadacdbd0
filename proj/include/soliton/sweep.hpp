#pragma once

#include <string>
#include <vector>

#include "soliton/families.hpp"

namespace soliton {

struct SweepItem {
  FamilyKind family = FamilyKind::gamma;
  int m = 1;
  int epsilon = 0;
  std::vector<double> s;
  bool einstein = false;
};

struct SweepRow {
  SweepItem item;
  std::vector<double> s_normalized;
  double mu_sq = 0, nu_sq = 0, C = 0;
  AsymptoticClass classification = AsymptoticClass::inconclusive;
  Base base = Base::none;
  AsymptoticClass expected = AsymptoticClass::inconclusive;
  Base expected_base = Base::none;
  Verdict verdict = Verdict::inconclusive;
  /// Validation or pipeline failure, or the failed checks, joined by "; ".
  std::string problems;
};

/// Points spread over every sign-pattern region of the family for this
/// epsilon: per_region points in each region with free positive components,
/// one point for regions that are a single point. with_einstein adds s4 = 0
/// boundary points.
std::vector<SweepItem> sign_pattern_grid(FamilyKind family, int m, int epsilon, int per_region,
                                         bool with_einstein = false);

/// Runs every item; failures land in the row, never abort the sweep.
/// jobs <= 0 uses the OpenMP default.
std::vector<SweepRow> run_sweep(const std::vector<SweepItem>& items, const RunOptions& options,
                                int jobs = 0);

/// Same result computed in order on the calling thread.
std::vector<SweepRow> run_sweep_serial(const std::vector<SweepItem>& items,
                                       const RunOptions& options);

SweepRow sweep_row(const SweepItem& item, const RunOptions& options);

/// Fraction of rows with verdict matches (1 for an empty sweep).
double match_rate(const std::vector<SweepRow>& rows);

}  // namespace soliton
