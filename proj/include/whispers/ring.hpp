#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace whispers {

// A dot on the circle of 2N evenly spaced dots. The promise problem needs
// N >= 3 so the "next to y" and "next to the opposite of y" windows cannot
// overlap; construction enforces that once and everything downstream relies
// on it.
class RingPoint {
 public:
  RingPoint(int value, int modulus) : value_(value), modulus_(modulus) {
    if (modulus_ < 6 || modulus_ % 2 != 0)
      throw std::invalid_argument("RingPoint: modulus must be even and >= 6");
    if (value_ < 0 || value_ >= modulus_)
      throw std::invalid_argument("RingPoint: value out of range");
  }

  int value() const { return value_; }
  int modulus() const { return modulus_; }
  int half() const { return modulus_ / 2; }  // N

  friend bool operator==(const RingPoint&, const RingPoint&) = default;

 private:
  int value_;
  int modulus_;
};

enum class PromiseClass { NoJump, Jump };

// classify() is deliberately tri-state: the adversarial module enumerates the
// valid-pair support, so "neither class" must be an ordinary outcome, not an
// exception. Mismatched moduli are a usage error and do throw.
enum class Classification { NoJump, Jump, Invalid };

inline Classification classify(const RingPoint& x, const RingPoint& y) {
  if (x.modulus() != y.modulus())
    throw std::invalid_argument("classify: mismatched moduli");
  const int m = x.modulus();
  const int n = m / 2;
  const int d = ((x.value() - y.value()) % m + m) % m;
  if (d == m - 1 || d == 0 || d == 1) return Classification::NoJump;
  if (d == n - 1 || d == n || d == n + 1) return Classification::Jump;
  return Classification::Invalid;
}

// A verified input pair: construction classifies, so a PromisePair can never
// hold an invalid combination or a class that disagrees with its points.
class PromisePair {
 public:
  PromisePair(const RingPoint& x, const RingPoint& y) : x_(x), y_(y) {
    switch (classify(x, y)) {
      case Classification::NoJump: class_ = PromiseClass::NoJump; break;
      case Classification::Jump:   class_ = PromiseClass::Jump;   break;
      case Classification::Invalid:
        throw std::invalid_argument("PromisePair: (x, y) violates the promise");
    }
  }

  const RingPoint& x() const { return x_; }
  const RingPoint& y() const { return y_; }
  PromiseClass promise_class() const { return class_; }
  int modulus() const { return x_.modulus(); }
  /// (x - y) mod 2N, one of {2N-1, 0, 1, N-1, N, N+1}.
  int offset() const {
    const int m = modulus();
    return ((x_.value() - y_.value()) % m + m) % m;
  }

 private:
  RingPoint x_;
  RingPoint y_;
  PromiseClass class_;
};

/// Measurement direction for dot v: 2*pi*v/(2N).
inline double angle_of(const RingPoint& v) {
  return M_PI * v.value() / v.half();
}

/// Probability that the two reported values agree (after the receiving side's
/// sign flip) when the parties measure along theta and phi.
inline double prob_same(double theta, double phi) {
  return 0.5 * (1.0 + std::cos(theta - phi));
}

inline double prob_opposite(double theta, double phi) {
  return 0.5 * (1.0 - std::cos(theta - phi));
}

/// The six valid offsets for a given half-size N, in canonical order.
inline std::array<int, 6> valid_offsets(int n) {
  return {2 * n - 1, 0, 1, n - 1, n, n + 1};
}

}  // namespace whispers
