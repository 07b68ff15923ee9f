#include "avgchain/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace avgchain {

Scalar::Scalar(long num, long den) {
  if (den == 0) fail(Errc::BadParameter, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Scalar Scalar::inexact(double v) {
  Scalar s;
  s.exact_ = false;
  s.d_ = v;
  return s;
}

Scalar Scalar::parse(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) fail(Errc::BadParameter, "empty number literal");
  std::string t(s);
  bool rationalish = t.find_first_not_of("+-0123456789/") == std::string::npos;
  if (rationalish) {
    mpq_class q;
    if (q.set_str(t, 10) != 0) fail(Errc::BadParameter, "bad rational literal '" + t + "'");
    if (q.get_den() == 0) fail(Errc::BadParameter, "zero denominator in '" + t + "'");
    q.canonicalize();
    return Scalar(std::move(q));
  }
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end == nullptr || *end != '\0') fail(Errc::BadParameter, "bad number literal '" + t + "'");
  return Scalar::inexact(v);
}

const mpq_class& Scalar::rational() const {
  if (!exact_) fail(Errc::BadParameter, "inexact scalar has no rational form");
  return q_;
}

std::string Scalar::str() const {
  if (exact_) return q_.get_str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d_);
  return buf;
}

Scalar Scalar::operator-() const {
  if (exact_) return Scalar(mpq_class(-q_));
  return inexact(-d_);
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (exact_ && o.exact_) return Scalar(mpq_class(q_ + o.q_));
  return inexact(approx() + o.approx());
}

Scalar Scalar::operator-(const Scalar& o) const {
  if (exact_ && o.exact_) return Scalar(mpq_class(q_ - o.q_));
  return inexact(approx() - o.approx());
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (exact_ && o.exact_) return Scalar(mpq_class(q_ * o.q_));
  return inexact(approx() * o.approx());
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (exact_ && o.exact_) {
    if (o.q_ == 0) fail(Errc::BadParameter, "division by zero");
    return Scalar(mpq_class(q_ / o.q_));
  }
  double d = o.approx();
  if (d == 0.0) fail(Errc::BadParameter, "division by zero");
  return inexact(approx() / d);
}

int Scalar::cmp(const Scalar& o) const {
  if (exact_ && o.exact_) {
    int c = ::cmp(q_, o.q_);
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  double a = approx(), b = o.approx();
  double tol = kRelTol * std::max({1.0, std::fabs(a), std::fabs(b)});
  if (std::fabs(a - b) <= tol) return 0;
  return a < b ? -1 : 1;
}

bool Scalar::exact_equal(const Scalar& o) const {
  if (exact_ != o.exact_) return false;
  return exact_ ? q_ == o.q_ : d_ == o.d_;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) fail(Errc::BadParameter, "negative exponent");
  if (!exact_) return inexact(std::pow(d_, static_cast<double>(e)));
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  return Scalar(mpq_class(num, den));
}

Scalar Scalar::floor() const {
  if (!exact_) return inexact(std::floor(d_));
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return Scalar(mpq_class(f));
}

long Scalar::floor_long() const {
  Scalar f = floor();
  if (!f.exact_) return static_cast<long>(f.d_);
  mpz_class z = f.q_.get_num();
  if (!z.fits_slong_p()) fail(Errc::SizeOverflow, "floor does not fit in long");
  return z.get_si();
}

}  // namespace avgchain
