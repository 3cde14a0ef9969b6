#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qunit/parity_mask.hpp"
#include "qunit/wigner.hpp"

namespace qunit {

/// C(theta) = (1/N) sum_{m,n} sigma_m sigma_n |d^s_{-m,n}(theta)|^2 for one
/// rotation table and a sign vector sigma in ascending-m order.
double correlation(const RotationTable& table, std::span<const double> signs);

/// Singlet correlation <Psi| O(a) (x) O(b) |Psi> of the diagonal observable
/// on both sides, with a.b = cos(theta).
double correlation(const ParityMask& mask, double theta, RotationCache& cache = default_rotation_cache());

/// C as a polynomial in x = cos(theta): C = sum_k coeffs[k] x^k, degree <= 2s.
struct CosPoly {
  SpinLabel spin;
  std::vector<double> coeffs;
  /// Largest |residual| observed at the off-node check angles.
  double max_residual = 0.0;

  double operator()(double cos_theta) const;
  double at_angle(double theta) const;
};

/// Interpolates C at the N Chebyshev nodes x_j = cos(pi (j + 1/2) / N) and
/// checks the fit at 3N further angles. Throws NumericalGuardError if any
/// residual exceeds 1e-6.
CosPoly correlation_poly(const ParityMask& mask, RotationCache& cache = default_rotation_cache());

struct CorrelationFingerprint {
  SpinLabel spin;
  std::vector<double> values;
};

/// M = N + 2 probe angles theta_j = pi (j + 1/2) / (M + 1).
std::vector<double> probe_angles(SpinLabel spin);

CorrelationFingerprint fingerprint(const ParityMask& mask, RotationCache& cache = default_rotation_cache());

struct CorrelationGroups {
  /// Each group lists parity bit integers ascending; groups are ordered by
  /// their smallest member.
  std::vector<std::vector<std::uint64_t>> groups;
  /// Smallest max-norm distance between fingerprints of different groups.
  double min_separation = 0.0;

  std::size_t count() const { return groups.size(); }
};

inline constexpr double kFingerprintTolerance = 1e-9;
inline constexpr double kMinGroupSeparation = 1e-4;

/// Partitions masks (all of one spin) by fingerprint equality within
/// kFingerprintTolerance componentwise. Throws NumericalGuardError when two
/// groups sit closer than kMinGroupSeparation or a member drifts from its
/// group representative, since the partition would then be ambiguous.
CorrelationGroups group_by_correlation(std::span<const ParityMask> masks, unsigned threads = 1,
                                       RotationCache& cache = default_rotation_cache());

/// Groups the canonical masks of one spin. Requires 2s <= 28.
CorrelationGroups distinct_correlations(SpinLabel spin, unsigned threads = 1,
                                        RotationCache& cache = default_rotation_cache());

}  // namespace qunit
