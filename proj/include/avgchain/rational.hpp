#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "avgchain/errors.hpp"

namespace avgchain {

// Number type used throughout. Exact rationals are the default; inexact
// doubles appear only when a system was built from float input and are
// sticky under arithmetic. Exact values compare exactly, comparisons with
// an inexact side use relative tolerance kRelTol.
class Scalar {
 public:
  static constexpr double kRelTol = 1e-12;

  Scalar() : q_(0) {}
  Scalar(long n) : q_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
  Scalar(int n) : q_(n) {}                             // NOLINT
  Scalar(long num, long den);
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Scalar inexact(double v);
  // Accepts "p", "p/q" (exact) and decimal/scientific literals (inexact).
  static Scalar parse(std::string_view s);

  bool exact() const { return exact_; }
  double approx() const { return exact_ ? q_.get_d() : d_; }
  const mpq_class& rational() const;

  // Canonical form: lowest terms, positive denominator, "p" when den == 1.
  std::string str() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  // Three-way comparison; 0 means "equal up to tolerance" when a side is
  // inexact.
  int cmp(const Scalar& o) const;
  bool operator==(const Scalar& o) const { return cmp(o) == 0; }
  bool operator!=(const Scalar& o) const { return cmp(o) != 0; }
  bool operator<(const Scalar& o) const { return cmp(o) < 0; }
  bool operator<=(const Scalar& o) const { return cmp(o) <= 0; }
  bool operator>(const Scalar& o) const { return cmp(o) > 0; }
  bool operator>=(const Scalar& o) const { return cmp(o) >= 0; }

  bool is_zero() const { return cmp(Scalar(0)) == 0; }
  bool exact_equal(const Scalar& o) const;  // bit-level: same mode, same value

  Scalar pow(long e) const;       // e >= 0
  Scalar floor() const;           // exact integer part (towards -inf)
  long floor_long() const;        // pre: fits in long

  static Scalar min(const Scalar& a, const Scalar& b) { return a.cmp(b) <= 0 ? a : b; }
  static Scalar max(const Scalar& a, const Scalar& b) { return a.cmp(b) >= 0 ? a : b; }

 private:
  mpq_class q_;
  double d_ = 0.0;
  bool exact_ = true;
};

inline Scalar abs(const Scalar& s) { return s < Scalar(0) ? -s : s; }

}  // namespace avgchain
