#include "qunit/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "qunit/parallel.hpp"

namespace qunit {

double correlation(const RotationTable& table, std::span<const double> signs) {
  const int n = table.dimension();
  if (static_cast<int>(signs.size()) != n) throw std::invalid_argument("sign vector length mismatch");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    // row for m' = -m where m is level i
    const auto row = table.row(n - 1 - i);
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += row[static_cast<std::size_t>(j)] * signs[static_cast<std::size_t>(j)];
    total += signs[static_cast<std::size_t>(i)] * inner;
  }
  return total / n;
}

double correlation(const ParityMask& mask, double theta, RotationCache& cache) {
  const auto table = cache.get(mask.spin(), theta);
  const auto signs = mask.sign_vector();
  return correlation(*table, signs);
}

double CosPoly::operator()(double cos_theta) const {
  long double acc = 0.0L;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * cos_theta + *it;
  return static_cast<double>(acc);
}

double CosPoly::at_angle(double theta) const { return (*this)(std::cos(theta)); }

CosPoly correlation_poly(const ParityMask& mask, RotationCache& cache) {
  const int n = mask.dimension();
  const auto signs = mask.sign_vector();

  // Chebyshev coefficients from samples at the Chebyshev nodes.
  std::vector<double> samples(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / n;
    samples[static_cast<std::size_t>(j)] = correlation(*cache.get(mask.spin(), theta), signs);
  }
  std::vector<long double> cheb(static_cast<std::size_t>(n), 0.0L);
  for (int k = 0; k < n; ++k) {
    long double acc = 0.0L;
    for (int j = 0; j < n; ++j) {
      acc += samples[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi_v<long double> * k * (j + 0.5L) / n);
    }
    cheb[static_cast<std::size_t>(k)] = (k == 0 ? 1.0L : 2.0L) * acc / n;
  }

  // T_k in the monomial basis via T_{k+1} = 2x T_k - T_{k-1}.
  std::vector<long double> mono(static_cast<std::size_t>(n), 0.0L);
  std::vector<long double> prev(static_cast<std::size_t>(n), 0.0L), cur(static_cast<std::size_t>(n), 0.0L);
  prev[0] = 1.0L;
  if (n > 1) cur[1] = 1.0L;
  for (int k = 0; k < n; ++k) {
    const auto& tk = k == 0 ? prev : cur;
    for (int p = 0; p <= k; ++p) mono[static_cast<std::size_t>(p)] += cheb[static_cast<std::size_t>(k)] * tk[static_cast<std::size_t>(p)];
    if (k >= 1 && k + 1 < n) {
      std::vector<long double> next(static_cast<std::size_t>(n), 0.0L);
      for (int p = 0; p <= k; ++p) next[static_cast<std::size_t>(p + 1)] += 2.0L * cur[static_cast<std::size_t>(p)];
      for (int p = 0; p < n; ++p) next[static_cast<std::size_t>(p)] -= prev[static_cast<std::size_t>(p)];
      prev = std::move(cur);
      cur = std::move(next);
    }
  }

  CosPoly poly{mask.spin(), std::vector<double>(mono.begin(), mono.end()), 0.0};
  const int checks = 3 * n;
  for (int j = 0; j < checks; ++j) {
    const double theta = std::numbers::pi * (j + 1.0 / 3.0) / checks;
    const double exact = correlation(wigner_d_squared(mask.spin(), theta), signs);
    poly.max_residual = std::max(poly.max_residual, std::abs(poly.at_angle(theta) - exact));
  }
  if (poly.max_residual > 1e-6) {
    throw NumericalGuardError("cos-polynomial residual " + std::to_string(poly.max_residual) +
                              " for P=" + std::to_string(mask.bits()));
  }
  return poly;
}

std::vector<double> probe_angles(SpinLabel spin) {
  const int m = spin.dimension() + 2;
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j)] = std::numbers::pi * (j + 0.5) / (m + 1);
  return out;
}

CorrelationFingerprint fingerprint(const ParityMask& mask, RotationCache& cache) {
  const auto signs = mask.sign_vector();
  CorrelationFingerprint fp{mask.spin(), {}};
  for (double theta : probe_angles(mask.spin())) {
    fp.values.push_back(correlation(*cache.get(mask.spin(), theta), signs));
  }
  return fp;
}

namespace {

double max_norm_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

CorrelationGroups group_by_correlation(std::span<const ParityMask> masks, unsigned threads, RotationCache& cache) {
  CorrelationGroups out;
  out.min_separation = std::numeric_limits<double>::infinity();
  if (masks.empty()) return out;
  const SpinLabel spin = masks.front().spin();
  for (const auto& m : masks) {
    if (m.spin() != spin) throw std::invalid_argument("masks of mixed spin");
  }

  std::vector<std::size_t> order(masks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return masks[a].bits() < masks[b].bits(); });

  // Warm the probe tables once so workers only read.
  for (double theta : probe_angles(spin)) cache.get(spin, theta);

  std::vector<std::vector<double>> prints(masks.size());
  parallel_for(masks.size(), threads, [&](std::size_t i) { prints[i] = fingerprint(masks[i], cache).values; });

  // Representatives indexed by their first component for range lookup.
  std::multimap<double, std::size_t> index;
  std::vector<std::size_t> representative;
  for (std::size_t idx : order) {
    const auto& fp = prints[idx];
    std::size_t hit = out.groups.size();
    int hits = 0;
    for (auto it = index.lower_bound(fp[0] - kFingerprintTolerance);
         it != index.end() && it->first <= fp[0] + kFingerprintTolerance; ++it) {
      if (max_norm_distance(fp, prints[representative[it->second]]) <= kFingerprintTolerance) {
        if (hits == 0 || it->second < hit) hit = it->second;
        ++hits;
      }
    }
    if (hits > 1) {
      throw NumericalGuardError("P=" + std::to_string(masks[idx].bits()) + " matches several correlation groups");
    }
    if (hits == 0) {
      representative.push_back(idx);
      index.emplace(fp[0], out.groups.size());
      out.groups.push_back({});
    }
    out.groups[hit].push_back(masks[idx].bits());
  }

  // Closest pair of representatives, pruned on the first component.
  std::vector<std::size_t> by_first = representative;
  std::sort(by_first.begin(), by_first.end(), [&](std::size_t a, std::size_t b) { return prints[a][0] < prints[b][0]; });
  for (std::size_t i = 0; i < by_first.size(); ++i) {
    for (std::size_t j = i + 1; j < by_first.size(); ++j) {
      if (prints[by_first[j]][0] - prints[by_first[i]][0] >= out.min_separation) break;
      out.min_separation = std::min(out.min_separation, max_norm_distance(prints[by_first[i]], prints[by_first[j]]));
    }
  }
  if (out.min_separation < kMinGroupSeparation) {
    throw NumericalGuardError("correlation groups only " + std::to_string(out.min_separation) +
                              " apart at 2s=" + std::to_string(spin.two_s()));
  }
  return out;
}

CorrelationGroups distinct_correlations(SpinLabel spin, unsigned threads, RotationCache& cache) {
  if (spin.two_s() > 28) throw std::invalid_argument("exhaustive grouping is capped at 2s = 28");
  const auto canon = enumerate_independent(spin);
  std::vector<ParityMask> masks;
  masks.reserve(canon.size());
  for (const auto& c : canon) masks.push_back(c.mask());
  return group_by_correlation(masks, threads, cache);
}

}  // namespace qunit
