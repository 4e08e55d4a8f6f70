// extvalue.hpp -- extended distance/similarity values and the F_k norm family
#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>

#include "seqsim/errors.hpp"

namespace seqsim {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// A distance or similarity value. Finite values lie in [0,1]; +inf marks
// "no string of matching length exists", and -inf is the similarity paired
// with such a distance.
class ExtValue {
 public:
  constexpr ExtValue() = default;
  explicit constexpr ExtValue(double v) : v_(v) {}

  static constexpr ExtValue plus_infinity() { return ExtValue(kInfinity); }
  static constexpr ExtValue minus_infinity() { return ExtValue(-kInfinity); }

  constexpr double get() const { return v_; }
  constexpr bool is_finite() const { return v_ > -kInfinity && v_ < kInfinity; }
  constexpr bool is_plus_infinity() const { return v_ == kInfinity; }
  constexpr bool is_minus_infinity() const { return v_ == -kInfinity; }

  friend constexpr auto operator<=>(const ExtValue&, const ExtValue&) = default;

 private:
  double v_ = 0.0;
};

// similarity = 1 - distance; a +inf distance pairs with -inf similarity.
constexpr ExtValue similarity_of(ExtValue distance) {
  return ExtValue(1.0 - distance.get());
}

// Finite norms beyond this under/overflow k-th powers of unit-interval
// values; callers wanting the limit should ask for the infinite norm.
inline constexpr int kMaxFiniteNorm = 64;

// Index into the norm spectrum: F_1, F_2, ..., F_64 or F_inf.
class NormIndex {
 public:
  static NormIndex finite(int k) {
    if (k < 1 || k > kMaxFiniteNorm)
      throw UsageError("norm index must be in 1.." + std::to_string(kMaxFiniteNorm) +
                       " or inf, got " + std::to_string(k));
    NormIndex n;
    n.k_ = k;
    return n;
  }
  static NormIndex infinity() {
    NormIndex n;
    n.k_ = 0;
    return n;
  }
  static NormIndex parse(const std::string& text) {
    if (text == "inf") return infinity();
    char* end = nullptr;
    long k = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
      throw UsageError("norm must be an integer in 1.." + std::to_string(kMaxFiniteNorm) +
                       " or \"inf\", got \"" + text + "\"");
    return finite(static_cast<int>(k));
  }

  bool is_infinite() const { return k_ == 0; }
  int k() const { return k_; }
  std::string str() const { return is_infinite() ? "inf" : std::to_string(k_); }

  friend bool operator==(const NormIndex&, const NormIndex&) = default;

 private:
  int k_ = 1;
};

// Shared power/root primitives so every evaluation route rounds identically.
// k == 1 is kept exact (no pow round trip).
inline double kth_power(double x, int k) {
  return k == 1 ? x : std::pow(x, static_cast<double>(k));
}
inline double kth_root(double x, int k) {
  return k == 1 ? x : std::pow(x, 1.0 / static_cast<double>(k));
}

// Eq. 1 / Eq. 2 norm distance between equal-length vectors with components
// in [0,1]. The result is in [0,1].
inline ExtValue norm_distance(std::span<const double> x, std::span<const double> y,
                              NormIndex k) {
  if (x.size() != y.size())
    throw UsageError("norm_distance: vectors differ in length");
  if (x.empty())
    throw UsageError("norm_distance: empty vectors (callers must short-circuit)");
  if (k.is_infinite()) {
    double m = 0.0;
    for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return ExtValue(m);
  }
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i) sum += kth_power(std::abs(x[i] - y[i]), k.k());
  return ExtValue(kth_root(sum / static_cast<double>(x.size()), k.k()));
}

}  // namespace seqsim
