#include "qunit/spin.hpp"

#include <charconv>
#include <cmath>

namespace qunit {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("not a half-integer: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = parse_int(text.substr(0, slash), text);
    const int den = parse_int(text.substr(slash + 1), text);
    if (den == 1) return from_int(num);
    if (den == 2) return from_twice(num);
    throw std::invalid_argument("denominator must be 1 or 2: '" + std::string(text) + "'");
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
    }
    const double twice = 2.0 * v;
    if (std::abs(twice - std::round(twice)) > 1e-12 || std::abs(twice) > 1e9) {
      throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
    }
    return from_twice(static_cast<int>(std::lround(twice)));
  }
  return from_int(parse_int(text, text));
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

SpinLabel SpinLabel::from_two_s(int two_s) {
  if (two_s < 0 || two_s > kMaxTwoS) {
    throw std::invalid_argument("2s must lie in [0, " + std::to_string(kMaxTwoS) +
                                "], got " + std::to_string(two_s));
  }
  return SpinLabel(two_s);
}

SpinLabel SpinLabel::parse(std::string_view text) {
  const HalfInt h = HalfInt::parse(text);
  if (h.twice() < 0) throw std::invalid_argument("spin must be non-negative");
  return from_two_s(h.twice());
}

}  // namespace qunit
