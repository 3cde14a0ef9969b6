#include "qunit/wigner.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <string>

namespace qunit {

namespace {

// Eigenvectors of S_x in the S_z basis. S_x is real symmetric tridiagonal,
// so the decomposition is real; its spectrum is exactly -s, ..., s.
struct SxBasis {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd eigenvalues;  // exact half-integers, ascending
};

SxBasis build_basis(SpinLabel spin) {
  const int n = spin.dimension();
  const int ts = spin.two_s();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int i = 0; i + 1 < n; ++i) {
    const int tm = 2 * i - ts;
    // <m+1|S_x|m> = sqrt(s(s+1) - m(m+1)) / 2
    sub[i] = 0.25 * std::sqrt(static_cast<double>(ts * (ts + 2) - tm * (tm + 2)));
  }
  SxBasis basis;
  if (n == 1) {
    basis.vectors = Eigen::MatrixXd::Identity(1, 1);
    basis.eigenvalues = Eigen::VectorXd::Zero(1);
    return basis;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalGuardError("S_x eigendecomposition failed for 2s=" + std::to_string(ts));
  }
  basis.vectors = solver.eigenvectors();
  basis.eigenvalues.resize(n);
  for (int k = 0; k < n; ++k) {
    const double exact = 0.5 * (2 * k - ts);
    if (std::abs(solver.eigenvalues()[k] - exact) > 1e-8 * (1.0 + 0.5 * ts)) {
      throw NumericalGuardError("S_x eigenvalue drift at 2s=" + std::to_string(ts));
    }
    basis.eigenvalues[k] = exact;
  }
  return basis;
}

const SxBasis& basis_for(SpinLabel spin) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const SxBasis>> memo;
  std::lock_guard lock(mutex);
  auto& slot = memo[spin.two_s()];
  if (!slot) slot = std::make_unique<const SxBasis>(build_basis(spin));
  return *slot;
}

}  // namespace

Eigen::MatrixXd wigner_d(SpinLabel spin, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  const int n = spin.dimension();
  if (theta == 0.0) return Eigen::MatrixXd::Identity(n, n);
  const SxBasis& basis = basis_for(spin);

  Eigen::VectorXd c(n), s(n);
  for (int k = 0; k < n; ++k) {
    c[k] = std::cos(theta * basis.eigenvalues[k]);
    s[k] = -std::sin(theta * basis.eigenvalues[k]);
  }
  const Eigen::MatrixXd& v = basis.vectors;
  // V exp(-i theta Lambda) V^T = re + i im
  const Eigen::MatrixXd re = v * c.asDiagonal() * v.transpose();
  const Eigen::MatrixXd im = v * s.asDiagonal() * v.transpose();

  // d = Re[ (-i)^(m'-m) (re + i im) ]
  Eigen::MatrixXd d(n, n);
  for (int r = 0; r < n; ++r) {
    for (int col = 0; col < n; ++col) {
      switch (((r - col) % 4 + 4) % 4) {
        case 0: d(r, col) = re(r, col); break;
        case 1: d(r, col) = im(r, col); break;
        case 2: d(r, col) = -re(r, col); break;
        default: d(r, col) = -im(r, col); break;
      }
    }
  }
  return d;
}

RotationTable::RotationTable(SpinLabel spin, double theta, std::vector<double> sq)
    : spin_(spin), theta_(theta), sq_(std::move(sq)) {
  const auto n = static_cast<std::size_t>(spin.dimension());
  if (sq_.size() != n * n) throw std::invalid_argument("rotation table size mismatch");
}

RotationTable wigner_d_squared(SpinLabel spin, double theta) {
  const Eigen::MatrixXd d = wigner_d(spin, theta);
  const int n = spin.dimension();
  std::vector<double> sq(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int col = 0; col < n; ++col) sq[static_cast<std::size_t>(r) * n + col] = d(r, col) * d(r, col);
  }
  return RotationTable(spin, theta, std::move(sq));
}

int unique_element_count(SpinLabel spin) {
  const int ts = spin.two_s();
  // Each off-diagonal orbit has size 4 unless the pair is fixed by
  // (m', n) -> (-n, -m'), i.e. n = -m' with m' != 0 (orbit size 2).
  const int n = spin.dimension();
  const int off_diagonal = n * n - n;
  const int anti_diagonal = ts % 2 == 0 ? n - 1 : n;
  return (off_diagonal - anti_diagonal) / 4 + anti_diagonal / 2;
}

RotationCache::RotationCache(std::size_t byte_budget) : budget_(byte_budget) {}

std::shared_ptr<const RotationTable> RotationCache::get(SpinLabel spin, double theta) {
  const Key key{spin.two_s(), std::bit_cast<std::uint64_t>(theta)};
  {
    std::shared_lock lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  auto table = std::make_shared<const RotationTable>(wigner_d_squared(spin, theta));
  const std::size_t bytes = table->data().size() * sizeof(double);
  std::unique_lock lock(mutex_);
  if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  if (bytes_ + bytes > budget_) {
    tables_.clear();
    bytes_ = 0;
  }
  tables_.emplace(key, table);
  bytes_ += bytes;
  return table;
}

std::size_t RotationCache::size() const {
  std::shared_lock lock(mutex_);
  return tables_.size();
}

void RotationCache::clear() {
  std::unique_lock lock(mutex_);
  tables_.clear();
  bytes_ = 0;
}

RotationCache& default_rotation_cache() {
  static RotationCache cache;
  return cache;
}

}  // namespace qunit
