#pragma once

#include <cstdint>
#include <string>

namespace qframes {

/// Exact element a + b*sqrt(D) of the ring Z[sqrt(D)], D square-free.
///
/// D = 1 denotes plain integers; such values are normalized to b = 0.
/// Values with b = 0 combine with any radicand. Mixing two different
/// radicands with non-zero irrational parts throws std::invalid_argument.
/// All arithmetic is overflow-checked (std::overflow_error).
class QuadraticInteger {
 public:
  QuadraticInteger() = default;
  QuadraticInteger(std::int64_t a, std::int64_t b = 0, std::int64_t radicand = 1);

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t radicand() const noexcept { return radicand_; }

  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }

  QuadraticInteger operator-() const;
  friend QuadraticInteger operator+(const QuadraticInteger& x, const QuadraticInteger& y);
  friend QuadraticInteger operator-(const QuadraticInteger& x, const QuadraticInteger& y);
  friend QuadraticInteger operator*(const QuadraticInteger& x, const QuadraticInteger& y);

  QuadraticInteger& operator+=(const QuadraticInteger& y) { return *this = *this + y; }
  QuadraticInteger& operator*=(const QuadraticInteger& y) { return *this = *this * y; }

  // Equality is exact: sqrt(D) is irrational for square-free D > 1.
  friend bool operator==(const QuadraticInteger& x, const QuadraticInteger& y) noexcept {
    return x.a_ == y.a_ && x.b_ == y.b_ &&
           (x.b_ == 0 || x.radicand_ == y.radicand_);
  }

  /// "3", "-1+2*rt", "rt", ... (the same notation the ray-file reader accepts).
  std::string to_string() const;

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t radicand_ = 1;
};

bool is_square_free(std::int64_t n);

}  // namespace qframes
