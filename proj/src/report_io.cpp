#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qunit/survey.hpp"

namespace qunit {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const SurveyReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"P", rec.p}, {"group", rec.group}, {"theta_star", rec.theta_star},
                       {"b_max", rec.b_max}, {"violates", rec.violates}});
  }
  const auto& h = r.histogram;
  const auto& t = r.totals;
  const auto& p = r.provenance;
  return {
      {"spin", r.spin.to_string()},
      {"two_s", r.spin.two_s()},
      {"records", records},
      {"histogram", {{"lo", h.lo}, {"width", h.width}, {"counts", h.counts}, {"below", h.below}, {"above", h.above}}},
      {"totals",
       {{"independent", t.independent},
        {"distinct", t.distinct},
        {"evaluated", t.evaluated},
        {"min_b_max", t.min_b_max},
        {"max_b_max", t.max_b_max},
        {"argmax_p", t.argmax_p},
        {"non_violating", t.non_violating}}},
      {"provenance",
       {{"tool_version", p.tool_version},
        {"mode", p.mode},
        {"grid_points", p.grid_points},
        {"refine_tol", p.refine_tol},
        {"seed", p.seed},
        {"duplicates_collapsed", p.duplicates_collapsed},
        {"min_group_separation", p.min_group_separation},
        {"wall_seconds", p.wall_seconds}}},
  };
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string report_to_json(const SurveyReport& report) { return to_json(report).dump(2) + "\n"; }

SurveyReport report_from_json(std::string_view text) {
  const json j = json::parse(text);
  SurveyReport r;
  r.spin = SpinLabel::from_two_s(j.at("two_s").get<int>());
  for (const auto& rec : j.at("records")) {
    r.records.push_back({rec.at("P").get<std::uint64_t>(), rec.at("group").get<int>(),
                         rec.at("theta_star").get<double>(), rec.at("b_max").get<double>(),
                         rec.at("violates").get<bool>()});
  }
  const auto& h = j.at("histogram");
  r.histogram.lo = h.at("lo").get<double>();
  r.histogram.width = h.at("width").get<double>();
  r.histogram.counts = h.at("counts").get<std::vector<std::uint64_t>>();
  r.histogram.below = h.at("below").get<std::uint64_t>();
  r.histogram.above = h.at("above").get<std::uint64_t>();
  const auto& t = j.at("totals");
  r.totals.independent = t.at("independent").get<std::uint64_t>();
  r.totals.distinct = t.at("distinct").get<std::uint64_t>();
  r.totals.evaluated = t.at("evaluated").get<std::uint64_t>();
  r.totals.min_b_max = t.at("min_b_max").get<double>();
  r.totals.max_b_max = t.at("max_b_max").get<double>();
  r.totals.argmax_p = t.at("argmax_p").get<std::uint64_t>();
  r.totals.non_violating = t.at("non_violating").get<std::uint64_t>();
  const auto& p = j.at("provenance");
  r.provenance.tool_version = p.at("tool_version").get<std::string>();
  r.provenance.mode = p.at("mode").get<std::string>();
  r.provenance.grid_points = p.at("grid_points").get<int>();
  r.provenance.refine_tol = p.at("refine_tol").get<double>();
  r.provenance.seed = p.at("seed").get<std::uint64_t>();
  r.provenance.duplicates_collapsed = p.at("duplicates_collapsed").get<std::uint64_t>();
  r.provenance.min_group_separation = p.at("min_group_separation").get<double>();
  r.provenance.wall_seconds = p.at("wall_seconds").get<double>();
  return r;
}

std::string report_to_csv(const SurveyReport& report) {
  std::ostringstream out;
  out << "P,group,theta_star,b_max,violates\n";
  for (const auto& rec : report.records) {
    out << rec.p << ',' << rec.group << ',' << fmt17(rec.theta_star) << ',' << fmt17(rec.b_max) << ','
        << (rec.violates ? "true" : "false") << '\n';
  }
  const auto& t = report.totals;
  out << "#meta,spin=" << report.spin.to_string() << ",mode=" << report.provenance.mode
      << ",independent=" << t.independent << ",distinct=" << t.distinct << ",evaluated=" << t.evaluated
      << ",min_b_max=" << fmt17(t.min_b_max) << ",max_b_max=" << fmt17(t.max_b_max) << ",argmax_p=" << t.argmax_p
      << ",non_violating=" << t.non_violating << ",grid=" << report.provenance.grid_points
      << ",tol=" << fmt17(report.provenance.refine_tol) << '\n';
  return out.str();
}

std::vector<SurveyRecord> records_from_csv(std::string_view text) {
  std::vector<SurveyRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.starts_with('#')) continue;
    if (header) {
      if (line != "P,group,theta_star,b_max,violates") throw std::runtime_error("unexpected CSV header: " + line);
      header = false;
      continue;
    }
    std::istringstream row(line);
    std::string p, g, th, b, v;
    if (!std::getline(row, p, ',') || !std::getline(row, g, ',') || !std::getline(row, th, ',') ||
        !std::getline(row, b, ',') || !std::getline(row, v)) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
    out.push_back({std::stoull(p), std::stoi(g), std::stod(th), std::stod(b), v == "true"});
  }
  return out;
}

void emit(const SurveyReport& report, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << (format == ReportFormat::kJson ? report_to_json(report) : report_to_csv(report));
  file.flush();
  if (!file) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace qunit
