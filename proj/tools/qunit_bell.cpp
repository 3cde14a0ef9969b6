// qunit-bell: command-line front end for the spin-s singlet Bell survey.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qunit/bell.hpp"
#include "qunit/correlator.hpp"
#include "qunit/parity_mask.hpp"
#include "qunit/survey.hpp"
#include "qunit/wigner.hpp"

namespace {

using nlohmann::json;
using namespace qunit;

constexpr int kExitBadArguments = 2;
constexpr int kExitNumericalGuard = 3;

struct GlobalOptions {
  std::string spin;
  std::optional<int> two_s;
  int grid = 4096;
  double tol = 1e-9;
  std::string threads = "auto";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

SpinLabel require_spin(const GlobalOptions& g) {
  if (!g.spin.empty() && g.two_s) throw std::invalid_argument("give either --spin or --two-s, not both");
  if (g.two_s) return SpinLabel::from_two_s(*g.two_s);
  if (!g.spin.empty()) return SpinLabel::parse(g.spin);
  throw std::invalid_argument("this command needs --spin <s> or --two-s <2s>");
}

unsigned parse_threads(const std::string& text) {
  if (text == "auto") return 0;
  std::size_t used = 0;
  const int v = std::stoi(text, &used);
  if (used != text.size() || v < 1) throw std::invalid_argument("--threads takes a positive integer or 'auto'");
  return static_cast<unsigned>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

void write_output(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + g.out + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("write failed for '" + g.out + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string run_dmat(const GlobalOptions& g, double theta) {
  const SpinLabel spin = require_spin(g);
  const auto table = wigner_d_squared(spin, theta);
  const int n = spin.dimension();
  std::vector<std::string> labels;
  for (int i = n - 1; i >= 0; --i) labels.push_back(spin.level(i).to_string());

  if (parse_report_format(g.format) == ReportFormat::kCsv) {
    std::ostringstream out;
    out << "m'";
    for (const auto& l : labels) out << ',' << l;
    out << '\n';
    char buf[40];
    for (int r = n - 1; r >= 0; --r) {
      out << spin.level(r).to_string();
      for (int c = n - 1; c >= 0; --c) {
        std::snprintf(buf, sizeof buf, "%.17g", table.at(r, c));
        out << ',' << buf;
      }
      out << '\n';
    }
    return out.str();
  }
  json rows = json::array();
  for (int r = n - 1; r >= 0; --r) {
    json row = json::array();
    for (int c = n - 1; c >= 0; --c) row.push_back(table.at(r, c));
    rows.push_back(row);
  }
  return dump({{"spin", spin.to_string()}, {"two_s", spin.two_s()}, {"theta", theta}, {"labels", labels}, {"rows", rows}});
}

std::string run_mask(const GlobalOptions& g, std::uint64_t p) {
  const SpinLabel spin = require_spin(g);
  const auto mask = mask_from_integer(spin, p);
  json levels = json::array(), bits = json::array(), signs = json::array();
  for (int i = 0; i < mask.dimension(); ++i) {
    levels.push_back(spin.level(i).to_string());
    bits.push_back(mask.bit(i));
    signs.push_back(mask.sign(i));
  }
  json overlaps = json::array();
  for (int k = 1; k <= std::min(spin.two_s(), 6); ++k) {
    overlaps.push_back({{"k", k}, {"value", tensor_overlap(mask, k)}});
  }
  json canonical = nullptr;
  if (!mask.is_trivial()) canonical = canonicalize(mask).bits();
  return dump({{"spin", spin.to_string()},
               {"two_s", spin.two_s()},
               {"P", p},
               {"m", levels},
               {"bits", bits},
               {"signs", signs},
               {"trace", identity_overlap(mask)},
               {"canonical", canonical},
               {"tensor_overlaps", overlaps}});
}

std::string run_corr(const GlobalOptions& g, std::uint64_t p, std::optional<double> theta, bool fingerprint_mode) {
  const SpinLabel spin = require_spin(g);
  const auto mask = mask_from_integer(spin, p);
  json j{{"spin", spin.to_string()}, {"two_s", spin.two_s()}, {"P", p}};
  if (theta) {
    j["theta"] = *theta;
    j["correlation"] = correlation(wigner_d_squared(spin, *theta), mask.sign_vector());
  } else if (fingerprint_mode) {
    const auto fp = fingerprint(mask);
    j["angles"] = probe_angles(spin);
    j["values"] = fp.values;
  } else {
    const auto poly = correlation_poly(mask);
    j["coeffs"] = poly.coeffs;
    j["max_residual"] = poly.max_residual;
  }
  return dump(j);
}

std::string run_dedupe(const GlobalOptions& g, unsigned threads) {
  const SpinLabel spin = require_spin(g);
  const auto groups = distinct_correlations(spin, threads);
  json j{{"spin", spin.to_string()}, {"two_s", spin.two_s()}, {"groups", groups.groups}, {"count", groups.count()}};
  j["min_separation"] = std::isfinite(groups.min_separation) ? json(groups.min_separation) : json(nullptr);
  return dump(j);
}

std::string run_max(const GlobalOptions& g, std::uint64_t p, const std::string& geometry, const std::string& angles) {
  const SpinLabel spin = require_spin(g);
  const auto mask = mask_from_integer(spin, p);
  if (geometry == "free") {
    const auto parts = split(angles, ',');
    if (parts.size() != 4) throw std::invalid_argument("--angles needs four comma-separated radians");
    std::vector<double> a;
    for (const auto& s : parts) a.push_back(std::stod(s));
    const double b = bell_value_general(mask, a[0], a[1], a[2], a[3]);
    return dump({{"spin", spin.to_string()}, {"two_s", spin.two_s()}, {"P", p}, {"geometry", "free"},
                 {"angles", a}, {"b", b}, {"violates", b > 2.0}, {"margin", b - 2.0}});
  }
  if (geometry != "planar") throw std::invalid_argument("--geometry must be planar or free");
  const auto r = bell_max(mask, {g.grid, g.tol});
  return dump({{"spin", spin.to_string()}, {"two_s", spin.two_s()}, {"P", p}, {"geometry", r.geometry},
               {"theta_star", r.theta_star}, {"b_max", r.b_max}, {"violates", r.violates}, {"margin", r.margin},
               {"grid", g.grid}, {"tol", g.tol}});
}

void run_survey(const GlobalOptions& g, unsigned threads, std::optional<std::uint64_t> sample,
                const std::string& include) {
  const SpinLabel spin = require_spin(g);
  SurveyOptions opts;
  opts.bell = {g.grid, g.tol};
  opts.threads = threads;
  SurveyReport report;
  if (sample || !include.empty()) {
    SampleSpec spec;
    spec.count = sample.value_or(0);
    spec.seed = g.seed;
    for (const auto& s : split(include, ',')) spec.include.push_back(std::stoull(s));
    report = sample_survey(spin, spec, opts);
    if (report.provenance.duplicates_collapsed > 0) {
      std::cerr << "warning: " << report.provenance.duplicates_collapsed << " duplicate P collapsed\n";
    }
  } else {
    report = survey(spin, opts);
  }
  const auto format = parse_report_format(g.format);
  if (g.out.empty()) {
    std::cout << (format == ReportFormat::kJson ? report_to_json(report) : report_to_csv(report));
  } else {
    emit(report, g.out, format);
  }
}

std::string run_classical(const GlobalOptions& g, unsigned threads, const std::string& family_name,
                          const std::string& list) {
  const auto family = parse_mask_family(family_name);
  std::vector<SpinLabel> spins;
  for (const auto& s : split(list, ',')) spins.push_back(SpinLabel::from_two_s(std::stoi(s)));
  if (spins.empty()) throw std::invalid_argument("--two-s-list is empty");
  const auto points = classical_limit_scan(family, spins, {g.grid, g.tol}, threads);
  json rows = json::array();
  for (const auto& pt : points) {
    rows.push_back({{"two_s", pt.spin.two_s()}, {"N", pt.spin.dimension()}, {"P", pt.result.mask.bits()},
                    {"theta_star", pt.result.theta_star}, {"b_max", pt.result.b_max},
                    {"violates", pt.result.violates}, {"margin", pt.result.margin}});
  }
  return dump({{"family", std::string(to_string(family))}, {"grid", g.grid}, {"tol", g.tol}, {"points", rows}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-inequality violations of spin-s singlets under parity-bit observables", "qunit-bell"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  GlobalOptions g;
  app.add_option("--spin", g.spin, "Spin s as an integer, p/2 fraction or decimal");
  app.add_option("--two-s", g.two_s, "Spin given as the integer 2s");
  app.add_option("--grid", g.grid, "Uniform grid points on (0, pi]")->check(CLI::Range(64, 1 << 24));
  app.add_option("--tol", g.tol, "Golden-section refinement tolerance (radians)")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads or 'auto'");
  app.add_option("--seed", g.seed, "Seed for random mask sampling");
  app.add_option("--out", g.out, "Write output to this path instead of stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  double theta = 0.0;
  auto* dmat = app.add_subcommand("dmat", "Squared Wigner d-matrix, rows m' from +s down");
  dmat->add_option("--theta", theta, "Rotation angle in radians")->required();

  std::uint64_t p = 0;
  auto* mask = app.add_subcommand("mask", "Bit array, signs, trace and tensor overlaps of one mask");
  mask->add_option("--p", p, "Parity bit integer")->required();

  std::optional<double> corr_theta;
  bool want_poly = false, want_fp = false;
  auto* corr = app.add_subcommand("corr", "Correlation value, cos-polynomial or fingerprint");
  corr->add_option("--p", p, "Parity bit integer")->required();
  auto* theta_opt = corr->add_option("--theta", corr_theta, "Evaluate at this angle");
  auto* poly_opt = corr->add_flag("--poly", want_poly, "Polynomial in cos(theta) (default)");
  auto* fp_opt = corr->add_flag("--fingerprint", want_fp, "Values at the fixed probe angles");
  theta_opt->excludes(poly_opt)->excludes(fp_opt);
  poly_opt->excludes(fp_opt);

  auto* dedupe = app.add_subcommand("dedupe", "Group canonical masks by correlation function");

  std::string geometry = "planar", angles;
  auto* max = app.add_subcommand("max", "Maximal Bell value of one mask");
  max->add_option("--p", p, "Parity bit integer")->required();
  max->add_option("--geometry", geometry, "planar or free")->check(CLI::IsMember({"planar", "free"}));
  max->add_option("--angles", angles, "Four angles ab,ab',a'b,a'b' for --geometry free");

  std::optional<std::uint64_t> sample;
  std::string include;
  auto* surv = app.add_subcommand("survey", "Exhaustive or sampled survey of one spin");
  surv->add_option("--sample", sample, "Number of random canonical masks (sampling mode)");
  surv->add_option("--include", include, "Comma-separated P values evaluated first (sampling mode)");

  std::string family = "near-identity", two_s_list = "3,9,19,29,39,49";
  auto* classical = app.add_subcommand("classical", "Bell maxima of one mask family across spins");
  classical->add_option("--family", family, "near-identity, alternating or end-bits");
  classical->add_option("--two-s-list", two_s_list, "Comma-separated 2s values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArguments;
  }

  try {
    const unsigned threads = parse_threads(g.threads);
    if (*dmat) write_output(g, run_dmat(g, theta));
    if (*mask) write_output(g, run_mask(g, p));
    if (*corr) write_output(g, run_corr(g, p, corr_theta, want_fp));
    if (*dedupe) write_output(g, run_dedupe(g, threads));
    if (*max) write_output(g, run_max(g, p, geometry, angles));
    if (*surv) run_survey(g, threads, sample, include);
    if (*classical) write_output(g, run_classical(g, threads, family, two_s_list));
  } catch (const NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << '\n';
    return kExitNumericalGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: value out of range: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
