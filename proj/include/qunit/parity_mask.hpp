#pragma once

#include <cstdint>
#include <vector>

#include "qunit/spin.hpp"

namespace qunit {

/// Diagonal observable O = sum_m (-1)^{f_m} |m><m| encoded by its parity
/// bit integer P. Bit i of P holds f_m for m = i - s, so the level m = -s
/// is the least significant bit.
class ParityMask {
 public:
  /// Largest dimension for which masks can be formed and enumerated.
  static constexpr int kMaxDimension = 63;

  /// Throws std::invalid_argument if P >= 2^N or N is outside [2, 63].
  static ParityMask from_integer(SpinLabel spin, std::uint64_t p);

  SpinLabel spin() const { return spin_; }
  int dimension() const { return spin_.dimension(); }
  std::uint64_t bits() const { return bits_; }

  /// f_m for level index i = m + s.
  int bit(int index) const { return static_cast<int>((bits_ >> index) & 1U); }
  int sign(int index) const { return bit(index) ? -1 : 1; }
  int parity_bit(HalfInt m) const { return bit(spin_.index_of(m)); }

  /// (-1)^{f_m} in ascending m order.
  std::vector<double> sign_vector() const;

  std::uint64_t full_mask() const { return full_mask_for(spin_); }
  ParityMask complement() const;
  /// f_m -> f_{-m}.
  ParityMask mirror() const;
  bool is_trivial() const { return bits_ == 0 || bits_ == full_mask(); }

  static std::uint64_t full_mask_for(SpinLabel spin) {
    return (std::uint64_t{1} << spin.dimension()) - 1;
  }

  bool operator==(const ParityMask&) const = default;

 private:
  ParityMask(SpinLabel spin, std::uint64_t bits) : spin_(spin), bits_(bits) {}
  SpinLabel spin_;
  std::uint64_t bits_ = 0;
};

/// Representative of {P, complement(P)}: the member with the m = +s bit set.
/// A global sign flip of both observables leaves every correlation intact.
class CanonicalMask {
 public:
  const ParityMask& mask() const { return mask_; }
  std::uint64_t bits() const { return mask_.bits(); }
  SpinLabel spin() const { return mask_.spin(); }

  bool operator==(const CanonicalMask&) const = default;

 private:
  friend CanonicalMask canonicalize(const ParityMask& mask);
  friend std::vector<CanonicalMask> enumerate_independent(SpinLabel spin);
  explicit CanonicalMask(ParityMask m) : mask_(m) {}
  ParityMask mask_;
};

inline ParityMask mask_from_integer(SpinLabel spin, std::uint64_t p) {
  return ParityMask::from_integer(spin, p);
}

/// Throws std::invalid_argument on the all-zeros or all-ones mask.
CanonicalMask canonicalize(const ParityMask& mask);

/// All 2^{N-1} - 1 canonical masks, ascending: P = 2^{N-1}, ..., 2^N - 2.
std::vector<CanonicalMask> enumerate_independent(SpinLabel spin);

/// Number of canonical masks without materializing them.
std::uint64_t independent_count(SpinLabel spin);

/// Tr O = sum_m (-1)^{f_m} = N - 2 popcount(P).
int identity_overlap(const ParityMask& mask);

/// sum_m (-1)^{f_m} <s m; k 0 | s m>, the overlap of O with the rank-k
/// tensor moment T^k_0 with the reduced matrix element <s||T^k||s>
/// factored out. The Clebsch-Gordan coefficient carries the projection m
/// of the summation index. Requires 1 <= k <= 2s.
double tensor_overlap(const ParityMask& mask, int k);

}  // namespace qunit
