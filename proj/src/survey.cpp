#include "qunit/survey.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "qunit/correlator.hpp"
#include "qunit/parallel.hpp"

namespace qunit {

Histogram Histogram::with_range(double lo, double hi, double width) {
  if (!(width > 0.0) || !(hi > lo)) throw std::invalid_argument("bad histogram range");
  Histogram h;
  h.lo = lo;
  h.width = width;
  h.counts.assign(static_cast<std::size_t>(std::llround((hi - lo) / width)), 0);
  return h;
}

void Histogram::add(double value) {
  const double pos = (value - lo) / width;
  if (pos < 0.0) {
    ++below;
  } else if (pos >= static_cast<double>(counts.size())) {
    ++above;
  } else {
    ++counts[static_cast<std::size_t>(pos)];
  }
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = below + above;
  for (auto c : counts) t += c;
  return t;
}

std::uint64_t counter_random(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer applied to a Weyl step keyed by seed
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

// Maximizes one representative per group and fans the result out to every
// member. `members` holds masks in ascending P.
SurveyReport evaluate_groups(SpinLabel spin, const std::vector<ParityMask>& members, const CorrelationGroups& groups,
                             const SurveyOptions& options, RotationCache& cache) {
  const PlanarGrid grid(spin, options.bell.grid_points, cache, options.threads);

  std::vector<std::uint64_t> rep_p(groups.count());
  for (std::size_t g = 0; g < groups.count(); ++g) rep_p[g] = groups.groups[g].front();
  std::vector<BellResult> results;
  results.reserve(groups.count());
  for (auto p : rep_p) {
    results.push_back(BellResult{ParityMask::from_integer(spin, p)});
  }
  parallel_for(results.size(), options.threads,
               [&](std::size_t g) { results[g] = bell_max(results[g].mask, grid, options.bell.refine_tol); });

  SurveyReport report;
  report.spin = spin;
  report.histogram = Histogram::with_range(options.histogram_lo, options.histogram_hi, options.histogram_width);
  report.provenance.grid_points = options.bell.grid_points;
  report.provenance.refine_tol = options.bell.refine_tol;
  report.provenance.min_group_separation =
      std::isfinite(groups.min_separation) ? groups.min_separation : -1.0;

  std::map<std::uint64_t, int> group_of;
  for (std::size_t g = 0; g < groups.count(); ++g) {
    for (auto p : groups.groups[g]) group_of[p] = static_cast<int>(g);
  }
  for (const auto& m : members) {
    const int g = group_of.at(m.bits());
    const auto& r = results[static_cast<std::size_t>(g)];
    report.records.push_back({m.bits(), g, r.theta_star, r.b_max, r.violates});
  }

  auto& t = report.totals;
  t.independent = independent_count(spin);
  t.distinct = groups.count();
  t.evaluated = members.size();
  t.min_b_max = std::numeric_limits<double>::infinity();
  t.max_b_max = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < results.size(); ++g) {
    const double b = results[g].b_max;
    report.histogram.add(b);
    if (!results[g].violates) ++t.non_violating;
    t.min_b_max = std::min(t.min_b_max, b);
    if (b > t.max_b_max) {
      t.max_b_max = b;
      t.argmax_p = rep_p[g];
    }
  }
  if (results.empty()) t.min_b_max = t.max_b_max = 0.0;
  return report;
}

}  // namespace

SurveyReport survey(SpinLabel spin, const SurveyOptions& options) {
  if (spin.two_s() > kMaxExhaustiveTwoS) {
    throw std::invalid_argument("exhaustive survey is capped at 2s = " + std::to_string(kMaxExhaustiveTwoS) +
                                "; use sampling mode (--sample / --include)");
  }
  if (spin.dimension() > kMaxEvaluationDimension) throw std::invalid_argument("spin too large to evaluate");
  const auto start = Clock::now();
  RotationCache cache;
  const auto groups = distinct_correlations(spin, options.threads, cache);
  std::vector<ParityMask> members;
  for (const auto& c : enumerate_independent(spin)) members.push_back(c.mask());
  auto report = evaluate_groups(spin, members, groups, options, cache);
  report.provenance.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

SurveyReport sample_survey(SpinLabel spin, const SampleSpec& spec, const SurveyOptions& options) {
  const auto start = Clock::now();
  std::set<std::uint64_t> chosen;
  std::uint64_t duplicates = 0;
  for (auto p : spec.include) {
    const auto mask = ParityMask::from_integer(spin, p);
    if (mask.is_trivial()) throw std::invalid_argument("trivial mask " + std::to_string(p) + " in include list");
    if (!chosen.insert(p).second) ++duplicates;
  }

  const std::uint64_t space = independent_count(spin);
  const std::uint64_t top = std::uint64_t{1} << (spin.dimension() - 1);
  std::set<std::uint64_t> chosen_canonical;
  for (auto p : chosen) chosen_canonical.insert(canonicalize(ParityMask::from_integer(spin, p)).bits());
  const std::uint64_t room = space - chosen_canonical.size();
  const std::uint64_t want = std::min(spec.count, room);
  std::uint64_t drawn = 0;
  for (std::uint64_t index = 0; drawn < want; ++index) {
    const std::uint64_t p = top + counter_random(spec.seed, index) % space;
    if (chosen_canonical.insert(p).second) {
      chosen.insert(p);
      ++drawn;
    }
  }

  std::vector<ParityMask> members;
  for (auto p : chosen) members.push_back(ParityMask::from_integer(spin, p));
  RotationCache cache;
  const auto groups = group_by_correlation(members, options.threads, cache);
  auto report = evaluate_groups(spin, members, groups, options, cache);
  report.provenance.mode = "sampled";
  report.provenance.seed = spec.seed;
  report.provenance.duplicates_collapsed = duplicates;
  report.provenance.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace qunit
