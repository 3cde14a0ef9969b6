#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qunit/parity_mask.hpp"
#include "qunit/wigner.hpp"

namespace qunit {

inline constexpr int kMaxEvaluationDimension = 50;

/// Outcome of maximizing the Bell function over the planar angle.
struct BellResult {
  ParityMask mask;
  double theta_star = 0.0;
  double b_max = 0.0;
  /// b_max > 2, strictly.
  bool violates = false;
  /// b_max - 2, kept so near-threshold cases are visible.
  double margin = 0.0;
  std::string geometry = "planar:theta,3theta,theta,theta";
};

/// B = |C(theta) - C(3 theta)| + 2 |C(theta)| for the planar arrangement
/// theta_ab = theta_a'b = theta_a'b' = theta_ab' / 3.
double bell_value(const ParityMask& mask, double theta);

/// B = |C(ab) - C(ab')| + |C(a'b) + C(a'b')| for four free relative angles.
double bell_value_general(const ParityMask& mask, double theta_ab, double theta_ab_prime, double theta_a_prime_b,
                          double theta_a_prime_b_prime);

struct BellOptions {
  int grid_points = 4096;
  double refine_tol = 1e-9;
};

/// Rotation tables at theta_j = pi j / G for j = 0..G. Since 3 theta_j
/// reduces onto the same grid (C is even and 2 pi periodic), one table per
/// grid point serves both angles of the planar Bell function.
class PlanarGrid {
 public:
  PlanarGrid(SpinLabel spin, int grid_points, RotationCache& cache = default_rotation_cache(), unsigned threads = 1);

  SpinLabel spin() const { return spin_; }
  int points() const { return points_; }
  double angle(int j) const;
  const RotationTable& table(int j) const { return *tables_[static_cast<std::size_t>(j)]; }
  /// Grid index of the angle 3 theta_j folded into [0, pi].
  int tripled(int j) const;

 private:
  SpinLabel spin_;
  int points_;
  std::vector<std::shared_ptr<const RotationTable>> tables_;
};

/// Uniform scan over (0, pi] followed by golden-section refinement inside
/// the cells adjacent to the best grid point. Deterministic.
/// Throws std::invalid_argument if grid_points < 64 or N > 50.
BellResult bell_max(const ParityMask& mask, const BellOptions& options = {});
BellResult bell_max(const ParityMask& mask, const PlanarGrid& grid, double refine_tol);

enum class MaskFamily { kNearIdentity, kAlternating, kEndBits };

/// "near-identity", "alternating" or "end-bits".
MaskFamily parse_mask_family(std::string_view name);
std::string_view to_string(MaskFamily family);

/// The family member at one spin:
///   near-identity  f_m = 1 - delta_{m,-s}, P = 2^N - 2
///   alternating    f set on every other level, starting from m = +s
///   end-bits       f set at m = -s and m = +s only
ParityMask family_mask(MaskFamily family, SpinLabel spin);

struct ClassicalPoint {
  SpinLabel spin;
  BellResult result;
};

std::vector<ClassicalPoint> classical_limit_scan(MaskFamily family, const std::vector<SpinLabel>& spins,
                                                 const BellOptions& options = {}, unsigned threads = 1);

}  // namespace qunit
