#include "qunit/parity_mask.hpp"

#include <bit>
#include <string>

#include "qunit/clebsch.hpp"

namespace qunit {

ParityMask ParityMask::from_integer(SpinLabel spin, std::uint64_t p) {
  const int n = spin.dimension();
  if (n < 2 || n > kMaxDimension) {
    throw std::invalid_argument("mask dimension must lie in [2, 63], got " + std::to_string(n));
  }
  if (p > full_mask_for(spin)) {
    throw std::invalid_argument("parity bit integer " + std::to_string(p) + " needs more than " +
                                std::to_string(n) + " bits");
  }
  return ParityMask(spin, p);
}

std::vector<double> ParityMask::sign_vector() const {
  std::vector<double> out(static_cast<std::size_t>(dimension()));
  for (int i = 0; i < dimension(); ++i) out[static_cast<std::size_t>(i)] = sign(i);
  return out;
}

ParityMask ParityMask::complement() const { return ParityMask(spin_, full_mask() & ~bits_); }

ParityMask ParityMask::mirror() const {
  std::uint64_t out = 0;
  const int n = dimension();
  for (int i = 0; i < n; ++i) {
    if (bit(i)) out |= std::uint64_t{1} << (n - 1 - i);
  }
  return ParityMask(spin_, out);
}

CanonicalMask canonicalize(const ParityMask& mask) {
  if (mask.is_trivial()) {
    throw std::invalid_argument("trivial mask " + std::to_string(mask.bits()) +
                                " is a multiple of the identity");
  }
  const int top = mask.dimension() - 1;
  return CanonicalMask(mask.bit(top) ? mask : mask.complement());
}

std::uint64_t independent_count(SpinLabel spin) {
  return (std::uint64_t{1} << (spin.dimension() - 1)) - 1;
}

std::vector<CanonicalMask> enumerate_independent(SpinLabel spin) {
  const std::uint64_t lo = std::uint64_t{1} << (spin.dimension() - 1);
  const std::uint64_t hi = ParityMask::full_mask_for(spin) - 1;
  // Guard the allocation; enumeration past N = 30 is never useful.
  if (spin.dimension() > 30) {
    throw std::invalid_argument("refusing to enumerate 2^" + std::to_string(spin.dimension() - 1) +
                                " masks");
  }
  std::vector<CanonicalMask> out;
  out.reserve(independent_count(spin));
  for (std::uint64_t p = lo; p <= hi; ++p) out.push_back(CanonicalMask(ParityMask::from_integer(spin, p)));
  return out;
}

int identity_overlap(const ParityMask& mask) {
  return mask.dimension() - 2 * std::popcount(mask.bits());
}

double tensor_overlap(const ParityMask& mask, int k) {
  const SpinLabel s = mask.spin();
  if (k < 1 || k > s.two_s()) {
    throw std::invalid_argument("tensor rank " + std::to_string(k) + " outside [1, 2s]");
  }
  const SpinLabel rank = SpinLabel::from_two_s(2 * k);
  double total = 0.0;
  for (int i = 0; i < mask.dimension(); ++i) {
    const HalfInt m = s.level(i);
    total += mask.sign(i) * cg_coefficient(s, rank, s, m, HalfInt::from_int(0), m);
  }
  return total;
}

}  // namespace qunit
