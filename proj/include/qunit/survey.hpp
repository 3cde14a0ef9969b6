#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qunit/bell.hpp"
#include "qunit/spin.hpp"

namespace qunit {

inline constexpr std::string_view kToolVersion = "qunit-bell 1.0.0";
inline constexpr int kMaxExhaustiveTwoS = 28;

struct SurveyRecord {
  std::uint64_t p = 0;
  int group = 0;
  double theta_star = 0.0;
  double b_max = 0.0;
  bool violates = false;

  bool operator==(const SurveyRecord&) const = default;
};

/// Fixed-width bins over [lo, lo + width * counts.size()); values outside
/// land in `below` / `above` so the total always matches the group count.
struct Histogram {
  double lo = 2.0;
  double width = 0.02;
  std::vector<std::uint64_t> counts;
  std::uint64_t below = 0;
  std::uint64_t above = 0;

  static Histogram with_range(double lo, double hi, double width);
  void add(double value);
  std::uint64_t total() const;
  bool operator==(const Histogram&) const = default;
};

struct SurveyTotals {
  std::uint64_t independent = 0;
  std::uint64_t distinct = 0;
  std::uint64_t evaluated = 0;
  double min_b_max = 0.0;
  double max_b_max = 0.0;
  /// Smallest P of the group attaining max_b_max.
  std::uint64_t argmax_p = 0;
  std::uint64_t non_violating = 0;
  bool operator==(const SurveyTotals&) const = default;
};

struct SurveyProvenance {
  std::string tool_version{kToolVersion};
  std::string mode = "exhaustive";
  int grid_points = 4096;
  double refine_tol = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t duplicates_collapsed = 0;
  /// Closest pair of distinct correlation fingerprints (max norm); negative
  /// when fewer than two groups exist.
  double min_group_separation = -1.0;
  double wall_seconds = 0.0;
  bool operator==(const SurveyProvenance&) const = default;
};

struct SurveyReport {
  SpinLabel spin;
  std::vector<SurveyRecord> records;  // ascending by P
  Histogram histogram;
  SurveyTotals totals;
  SurveyProvenance provenance;
  bool operator==(const SurveyReport&) const = default;
};

struct SurveyOptions {
  BellOptions bell;
  unsigned threads = 1;
  double histogram_lo = 2.0;
  double histogram_hi = 2.9;
  double histogram_width = 0.02;
};

/// Every canonical mask of one spin. Correlation groups are formed first and
/// each group is maximized once through its smallest member.
/// Throws std::invalid_argument beyond 2s = 28.
SurveyReport survey(SpinLabel spin, const SurveyOptions& options = {});

struct SampleSpec {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  /// Evaluated first, as given (complements are kept as separate records).
  std::vector<std::uint64_t> include;
};

/// Explicit masks plus `count` canonical masks drawn with a counter-based
/// generator keyed by (seed, draw index). Exact duplicates in `include` are
/// collapsed and counted in provenance.duplicates_collapsed.
SurveyReport sample_survey(SpinLabel spin, const SampleSpec& spec, const SurveyOptions& options = {});

/// 64-bit mix of (seed, index); the same pair always gives the same value.
std::uint64_t counter_random(std::uint64_t seed, std::uint64_t index);

enum class ReportFormat { kJson, kCsv };
ReportFormat parse_report_format(std::string_view name);

std::string report_to_json(const SurveyReport& report);
SurveyReport report_from_json(std::string_view text);

/// Header `P,group,theta_star,b_max,violates`, one row per record, then a
/// `#meta` line with the totals. Reals carry 17 significant digits.
std::string report_to_csv(const SurveyReport& report);
std::vector<SurveyRecord> records_from_csv(std::string_view text);

/// Throws std::runtime_error naming the path on I/O failure.
void emit(const SurveyReport& report, const std::filesystem::path& path, ReportFormat format);

}  // namespace qunit
