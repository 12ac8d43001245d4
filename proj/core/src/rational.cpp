// Copyright 2026 The vecgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "vecgraph/rational.hpp"

#include <numeric>

#include "vecgraph/error.hpp"

namespace vecgraph {

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  if (den_ == 0) fail(ErrorCode::Precondition, "rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational& Rational::operator+=(const Rational& rhs) {
  const std::int64_t g = std::gcd(den_, rhs.den_);
  const std::int64_t lhs_scale = rhs.den_ / g;
  const std::int64_t rhs_scale = den_ / g;
  *this = Rational(num_ * lhs_scale + rhs.num_ * rhs_scale, den_ * lhs_scale);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  // Denominators are positive, so cross-multiplication keeps the order.
  const __int128 left = static_cast<__int128>(lhs.num_) * rhs.den_;
  const __int128 right = static_cast<__int128>(rhs.num_) * lhs.den_;
  if (left < right) return std::strong_ordering::less;
  if (left > right) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  os << value.numerator();
  if (value.denominator() != 1) os << '/' << value.denominator();
  return os;
}

}  // namespace vecgraph
