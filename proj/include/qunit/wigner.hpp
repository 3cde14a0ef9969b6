#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qunit/spin.hpp"

namespace qunit {

/// Signed Wigner small-d matrix d^s(theta) for a rotation about y,
/// element (m' + s, m + s) = <s m'| exp(-i theta S_y) |s m>.
///
/// Built from the eigenvectors of the real tridiagonal S_x (a quarter turn
/// about z maps S_x onto S_y) with the exact eigenvalues -s..s substituted
/// for the computed ones. Stable for N up to 63; no factorial sums.
/// Throws std::invalid_argument for non-finite theta.
Eigen::MatrixXd wigner_d(SpinLabel spin, double theta);

/// |d^s_{m',n}(theta)|^2 for one (spin, theta). Row index is m' + s,
/// column index is n + s, both ascending.
class RotationTable {
 public:
  RotationTable(SpinLabel spin, double theta, std::vector<double> sq);

  SpinLabel spin() const { return spin_; }
  double theta() const { return theta_; }
  int dimension() const { return spin_.dimension(); }

  double at(int row, int col) const {
    return sq_[static_cast<std::size_t>(row) * dimension() + col];
  }
  double entry(HalfInt m_prime, HalfInt n) const {
    return at(spin_.index_of(m_prime), spin_.index_of(n));
  }
  std::span<const double> row(int r) const {
    return {sq_.data() + static_cast<std::size_t>(r) * dimension(),
            static_cast<std::size_t>(dimension())};
  }
  std::span<const double> data() const { return sq_; }

 private:
  SpinLabel spin_;
  double theta_;
  std::vector<double> sq_;
};

RotationTable wigner_d_squared(SpinLabel spin, double theta);

/// Number of classes of index pairs (m', n) under
/// (m', n) ~ (-m', -n) ~ (n, m') ~ (-n, -m'), diagonal excluded
/// (the diagonal contributes identically to every mask).
/// Equals s(s+1) for integer s and (s+1/2)^2 otherwise.
int unique_element_count(SpinLabel spin);

/// Thread-safe memo of rotation tables keyed by (2s, bit pattern of theta).
/// Identical keys always return the same immutable table. When the stored
/// payload exceeds the byte budget the cache is flushed before inserting.
class RotationCache {
 public:
  explicit RotationCache(std::size_t byte_budget = std::size_t{512} << 20);

  std::shared_ptr<const RotationTable> get(SpinLabel spin, double theta);

  std::size_t size() const;
  void clear();

 private:
  using Key = std::pair<int, std::uint64_t>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const RotationTable>> tables_;
  std::size_t bytes_ = 0;
  std::size_t budget_;
};

/// Process-wide cache used when callers do not supply one.
RotationCache& default_rotation_cache();

}  // namespace qunit
