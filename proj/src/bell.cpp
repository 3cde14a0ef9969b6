#include "qunit/bell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qunit/correlator.hpp"
#include "qunit/parallel.hpp"

namespace qunit {

namespace {

double planar(double c1, double c3) { return std::abs(c1 - c3) + 2.0 * std::abs(c1); }

double direct_correlation(const ParityMask& mask, std::span<const double> signs, double theta) {
  return correlation(wigner_d_squared(mask.spin(), theta), signs);
}

void check_evaluable(const ParityMask& mask) {
  if (mask.dimension() > kMaxEvaluationDimension) {
    throw std::invalid_argument("Bell evaluation is capped at N = " + std::to_string(kMaxEvaluationDimension));
  }
}

}  // namespace

double bell_value(const ParityMask& mask, double theta) {
  const auto signs = mask.sign_vector();
  return planar(direct_correlation(mask, signs, theta), direct_correlation(mask, signs, 3.0 * theta));
}

double bell_value_general(const ParityMask& mask, double theta_ab, double theta_ab_prime, double theta_a_prime_b,
                          double theta_a_prime_b_prime) {
  const auto signs = mask.sign_vector();
  const double ab = direct_correlation(mask, signs, theta_ab);
  const double abp = direct_correlation(mask, signs, theta_ab_prime);
  const double apb = direct_correlation(mask, signs, theta_a_prime_b);
  const double apbp = direct_correlation(mask, signs, theta_a_prime_b_prime);
  return std::abs(ab - abp) + std::abs(apb + apbp);
}

PlanarGrid::PlanarGrid(SpinLabel spin, int grid_points, RotationCache& cache, unsigned threads)
    : spin_(spin), points_(grid_points) {
  if (grid_points < 64) throw std::invalid_argument("grid_points must be at least 64");
  tables_.resize(static_cast<std::size_t>(grid_points) + 1);
  parallel_for(tables_.size(), threads, [&](std::size_t j) { tables_[j] = cache.get(spin, angle(static_cast<int>(j))); });
}

double PlanarGrid::angle(int j) const { return std::numbers::pi * j / points_; }

int PlanarGrid::tripled(int j) const {
  const int r = (3 * j) % (2 * points_);
  return r > points_ ? 2 * points_ - r : r;
}

BellResult bell_max(const ParityMask& mask, const BellOptions& options) {
  check_evaluable(mask);
  if (options.grid_points < 64) throw std::invalid_argument("grid_points must be at least 64");
  // A private cache keeps one-off large-N scans from crowding the shared one.
  RotationCache cache;
  const PlanarGrid grid(mask.spin(), options.grid_points, cache);
  return bell_max(mask, grid, options.refine_tol);
}

BellResult bell_max(const ParityMask& mask, const PlanarGrid& grid, double refine_tol) {
  check_evaluable(mask);
  if (grid.spin() != mask.spin()) throw std::invalid_argument("grid spin does not match mask spin");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");

  const auto signs = mask.sign_vector();
  const int g = grid.points();
  std::vector<double> c(static_cast<std::size_t>(g) + 1);
  for (int j = 0; j <= g; ++j) c[static_cast<std::size_t>(j)] = correlation(grid.table(j), signs);

  int best = 1;
  double best_value = -1.0;
  for (int j = 1; j <= g; ++j) {
    const double b = planar(c[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(grid.tripled(j))]);
    if (b > best_value) {
      best_value = b;
      best = j;
    }
  }

  // Golden-section search on [theta_{j-1}, theta_{j+1}]; B is symmetric
  // about pi so the bracket may cross it.
  const auto value_at = [&](double theta) {
    return planar(direct_correlation(mask, signs, theta), direct_correlation(mask, signs, 3.0 * theta));
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = grid.angle(best - 1);
  double hi = grid.angle(best) + (grid.angle(best) - lo);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  while (hi - lo > refine_tol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = value_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = value_at(x2);
    }
  }
  double theta_star = grid.angle(best);
  double b_max = best_value;
  const double refined = f1 >= f2 ? x1 : x2;
  const double refined_value = std::max(f1, f2);
  if (refined_value > b_max) {
    b_max = refined_value;
    theta_star = refined > std::numbers::pi ? 2.0 * std::numbers::pi - refined : refined;
  }

  return BellResult{mask, theta_star, b_max, b_max > 2.0, b_max - 2.0};
}

MaskFamily parse_mask_family(std::string_view name) {
  if (name == "near-identity") return MaskFamily::kNearIdentity;
  if (name == "alternating") return MaskFamily::kAlternating;
  if (name == "end-bits") return MaskFamily::kEndBits;
  throw std::invalid_argument("unknown mask family '" + std::string(name) +
                              "' (expected near-identity, alternating or end-bits)");
}

std::string_view to_string(MaskFamily family) {
  switch (family) {
    case MaskFamily::kNearIdentity: return "near-identity";
    case MaskFamily::kAlternating: return "alternating";
    case MaskFamily::kEndBits: return "end-bits";
  }
  return "unknown";
}

ParityMask family_mask(MaskFamily family, SpinLabel spin) {
  const int n = spin.dimension();
  std::uint64_t p = 0;
  switch (family) {
    case MaskFamily::kNearIdentity:
      p = ParityMask::full_mask_for(spin) - 1;
      break;
    case MaskFamily::kAlternating:
      for (int i = n - 1; i >= 0; i -= 2) p |= std::uint64_t{1} << i;
      break;
    case MaskFamily::kEndBits:
      p = 1 | (std::uint64_t{1} << (n - 1));
      break;
  }
  const auto mask = ParityMask::from_integer(spin, p);
  if (mask.is_trivial()) {
    throw std::invalid_argument(std::string(to_string(family)) + " is trivial at 2s=" + std::to_string(spin.two_s()));
  }
  return mask;
}

std::vector<ClassicalPoint> classical_limit_scan(MaskFamily family, const std::vector<SpinLabel>& spins,
                                                 const BellOptions& options, unsigned threads) {
  std::vector<ClassicalPoint> out;
  out.reserve(spins.size());
  for (SpinLabel spin : spins) {
    const auto mask = family_mask(family, spin);
    check_evaluable(mask);
    RotationCache cache;
    const PlanarGrid grid(spin, options.grid_points, cache, threads);
    out.push_back({spin, bell_max(mask, grid, options.refine_tol)});
  }
  return out;
}

}  // namespace qunit
