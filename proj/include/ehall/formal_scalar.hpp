#pragma once

#include "ehall/laurent.hpp"

#include <string>

namespace ehall {

class CurveScalar;

// Element of Q(s, sb), s = sigma^(1/2), sb = sigmabar^(1/2).
// Canonical form: den is a polynomial not divisible by s or sb, with coprime integer
// coefficients and positive leading coefficient; num is a Laurent polynomial coprime to den.
class FormalScalar {
 public:
  FormalScalar() = default;
  FormalScalar(long c) : num_(Rat(c)), den_(Rat(1)) {}
  FormalScalar(const Rat& c) : num_(c), den_(Rat(1)) {}
  explicit FormalScalar(const LaurentPoly& p) : num_(p), den_(Rat(1)) {}
  FormalScalar(const LaurentPoly& num, const LaurentPoly& den);

  static FormalScalar s();
  static FormalScalar sb();
  static FormalScalar monomial(int i, int j, const Rat& c = 1);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  FormalScalar operator+(const FormalScalar& o) const;
  FormalScalar operator-(const FormalScalar& o) const;
  FormalScalar operator-() const;
  FormalScalar operator*(const FormalScalar& o) const;
  FormalScalar operator/(const FormalScalar& o) const { return *this * o.inverse(); }
  FormalScalar& operator+=(const FormalScalar& o) { return *this = *this + o; }
  FormalScalar& operator-=(const FormalScalar& o) { return *this = *this - o; }
  FormalScalar& operator*=(const FormalScalar& o) { return *this = *this * o; }
  bool operator==(const FormalScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const FormalScalar& o) const { return !(*this == o); }

  FormalScalar inverse() const;
  FormalScalar scaled(const Rat& c) const;
  FormalScalar pow(int e) const;
  // Complex conjugation is not meaningful in formal mode; the identity keeps generic code uniform.
  FormalScalar conj() const { return *this; }

  // Specialize s*sb -> u and s^2 + sb^2 -> a, sigma^k + sigmabar^k -> trace t_k.
  // Requires num and den to be symmetric under s <-> sb with only exponents of equal parity.
  CurveScalar specialize(long q, long trace) const;

  std::string to_string() const;

 private:
  void normalize();
  LaurentPoly num_;
  LaurentPoly den_{Rat(1)};
};

}  // namespace ehall
