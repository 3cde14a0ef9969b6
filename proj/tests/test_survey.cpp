#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qunit/survey.hpp"

using namespace qunit;

namespace {

SpinLabel sp(const char* s) { return SpinLabel::parse(s); }

SurveyReport without_wall_time(SurveyReport r) {
  r.provenance.wall_seconds = 0.0;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("spin-1 survey") {
  const auto r = survey(sp("1"));
  CHECK(r.totals.independent == 3);
  CHECK(r.totals.distinct == 2);
  CHECK(r.totals.evaluated == 3);
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].p == 4);
  CHECK(r.records[1].p == 5);
  CHECK(r.records[2].p == 6);
  CHECK(r.records[0].group == r.records[2].group);
  CHECK(r.records[0].b_max == r.records[2].b_max);
  CHECK(r.records[0].b_max == doctest::Approx(2.48).epsilon(0.01 / 2.48));
  CHECK(r.records[1].b_max == doctest::Approx(2.55).epsilon(0.01 / 2.55));
  CHECK(r.totals.argmax_p == 5);
  CHECK(r.histogram.total() == r.totals.distinct);
  CHECK(r.histogram.counts.size() == 45);
  CHECK(r.totals.non_violating == 0);
}

TEST_CASE("spin-4 survey") {
  SurveyOptions opts;
  opts.threads = 4;
  const auto r = survey(sp("4"), opts);
  CHECK(r.totals.independent == 255);
  CHECK(r.totals.distinct == 135);
  CHECK(r.totals.argmax_p == 306);
  CHECK(r.totals.max_b_max == doctest::Approx(2.51).epsilon(0.01 / 2.51));
  CHECK(r.histogram.total() == 135);
  CHECK(std::is_sorted(r.records.begin(), r.records.end(), [](auto& a, auto& b) { return a.p < b.p; }));
  for (const auto& rec : r.records) CHECK(rec.violates);
}

TEST_CASE("serial and parallel surveys agree") {
  SurveyOptions serial, parallel;
  serial.bell.grid_points = parallel.bell.grid_points = 512;
  parallel.threads = 6;
  const auto a = survey(sp("5/2"), serial);
  const auto b = survey(sp("5/2"), parallel);
  CHECK(without_wall_time(a) == without_wall_time(b));
  CHECK(report_to_json(without_wall_time(a)) == report_to_json(without_wall_time(b)));
}

TEST_CASE("exhaustive mode is capped") {
  CHECK_THROWS_AS(survey(SpinLabel::from_two_s(kMaxExhaustiveTwoS + 1)), std::invalid_argument);
}

TEST_CASE("sampled surveys") {
  SurveyOptions opts;
  opts.bell.grid_points = 1024;
  const auto s6 = sp("6");
  const std::uint64_t p = 4097, comp = ParityMask::full_mask_for(s6) - p;
  const auto pair = sample_survey(s6, {0, 1, {p, comp}}, opts);
  REQUIRE(pair.records.size() == 2);
  CHECK(pair.records[0].b_max == pair.records[1].b_max);
  CHECK(pair.records[0].group == pair.records[1].group);
  CHECK(pair.provenance.mode == "sampled");

  const auto dup = sample_survey(s6, {0, 1, {p, p, p}}, opts);
  CHECK(dup.records.size() == 1);
  CHECK(dup.provenance.duplicates_collapsed == 2);

  const auto a = sample_survey(s6, {12, 42, {5461}}, opts);
  const auto b = sample_survey(s6, {12, 42, {5461}}, opts);
  const auto c = sample_survey(s6, {12, 43, {5461}}, opts);
  CHECK(a.records.size() == 13);
  CHECK(without_wall_time(a) == without_wall_time(b));
  std::vector<std::uint64_t> pa, pc;
  for (auto& r : a.records) pa.push_back(r.p);
  for (auto& r : c.records) pc.push_back(r.p);
  CHECK(pa != pc);
  CHECK(std::find(pa.begin(), pa.end(), 5461) != pa.end());
  CHECK(a.histogram.total() == a.totals.distinct);

  CHECK_THROWS_AS(sample_survey(s6, {0, 1, {0}}, opts), std::invalid_argument);
  CHECK_THROWS_AS(sample_survey(s6, {0, 1, {1ULL << 13}}, opts), std::invalid_argument);

  // asking for more than exists yields the whole space
  const auto all = sample_survey(sp("1"), {100, 9, {}}, opts);
  CHECK(all.records.size() == 3);
}

TEST_CASE("counter-based generator") {
  CHECK(counter_random(1, 5) == counter_random(1, 5));
  CHECK(counter_random(1, 5) != counter_random(1, 6));
  CHECK(counter_random(1, 5) != counter_random(2, 5));
}

TEST_CASE("report emission and round trips") {
  const auto r = survey(sp("1"));
  const auto dir = std::filesystem::temp_directory_path() / "qunit_survey_test";
  std::filesystem::create_directories(dir);

  emit(r, dir / "s1.csv", ReportFormat::kCsv);
  const auto csv = slurp(dir / "s1.csv");
  CHECK(csv.starts_with("P,group,theta_star,b_max,violates\n"));
  CHECK(csv.find("#meta,") != std::string::npos);
  const auto rows = records_from_csv(csv);
  CHECK(rows.size() == 3);
  CHECK(rows == r.records);

  emit(r, dir / "s1.json", ReportFormat::kJson);
  const auto back = report_from_json(slurp(dir / "s1.json"));
  CHECK(back == r);

  const auto s4 = survey(sp("2"));
  CHECK(report_from_json(report_to_json(s4)) == s4);
  CHECK(records_from_csv(report_to_csv(s4)) == s4.records);

  CHECK_THROWS_WITH_AS(emit(r, dir / "missing" / "x.json", ReportFormat::kJson),
                       doctest::Contains("missing"), std::runtime_error);
  CHECK(parse_report_format("csv") == ReportFormat::kCsv);
  CHECK_THROWS_AS(parse_report_format("xml"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("histogram binning") {
  auto h = Histogram::with_range(2.0, 2.9, 0.02);
  CHECK(h.counts.size() == 45);
  h.add(1.9);
  h.add(2.0);
  h.add(2.55);
  h.add(3.0);
  CHECK(h.below == 1);
  CHECK(h.above == 1);
  CHECK(h.counts[0] == 1);
  CHECK(h.total() == 4);
}
