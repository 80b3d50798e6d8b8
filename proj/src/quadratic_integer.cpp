#include "qframes/quadratic_integer.hpp"

#include <stdexcept>

namespace qframes {
namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("QuadraticInteger: addition overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("QuadraticInteger: multiplication overflow");
  return r;
}

std::int64_t common_radicand(const QuadraticInteger& x, const QuadraticInteger& y) {
  if (x.b() == 0) return y.radicand();
  if (y.b() == 0) return x.radicand();
  if (x.radicand() != y.radicand()) {
    throw std::invalid_argument("QuadraticInteger: radicand mismatch (" + std::to_string(x.radicand()) +
                                " vs " + std::to_string(y.radicand()) + ")");
  }
  return x.radicand();
}

}  // namespace

bool is_square_free(std::int64_t n) {
  if (n < 1) return false;
  for (std::int64_t p = 2; p <= n / p; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

QuadraticInteger::QuadraticInteger(std::int64_t a, std::int64_t b, std::int64_t radicand)
    : a_(a), b_(b), radicand_(radicand) {
  if (!is_square_free(radicand)) {
    throw std::invalid_argument("QuadraticInteger: radicand " + std::to_string(radicand) + " is not square-free");
  }
  if (radicand_ == 1) {
    a_ = checked_add(a_, b_);
    b_ = 0;
  }
}

QuadraticInteger QuadraticInteger::operator-() const {
  return QuadraticInteger(checked_mul(a_, -1), checked_mul(b_, -1), radicand_);
}

QuadraticInteger operator+(const QuadraticInteger& x, const QuadraticInteger& y) {
  const auto d = common_radicand(x, y);
  return QuadraticInteger(checked_add(x.a_, y.a_), checked_add(x.b_, y.b_), d);
}

QuadraticInteger operator-(const QuadraticInteger& x, const QuadraticInteger& y) { return x + (-y); }

// (a + b r)(c + e r) = (ac + be D) + (ae + bc) r
QuadraticInteger operator*(const QuadraticInteger& x, const QuadraticInteger& y) {
  const auto d = common_radicand(x, y);
  const auto rational = checked_add(checked_mul(x.a_, y.a_), checked_mul(checked_mul(x.b_, y.b_), d));
  const auto irrational = checked_add(checked_mul(x.a_, y.b_), checked_mul(x.b_, y.a_));
  return QuadraticInteger(rational, irrational, d);
}

std::string QuadraticInteger::to_string() const {
  if (b_ == 0) return std::to_string(a_);
  std::string out;
  if (a_ != 0) out = std::to_string(a_);
  if (b_ < 0) {
    out += "-";
  } else if (a_ != 0) {
    out += "+";
  }
  const auto mag = b_ < 0 ? -b_ : b_;
  if (mag != 1) out += std::to_string(mag) + "*";
  out += "rt";
  return out;
}

}  // namespace qframes
