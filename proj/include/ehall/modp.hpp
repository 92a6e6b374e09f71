#pragma once

#include "ehall/curve_scalar.hpp"

#include <cstdint>
#include <string>

namespace ehall {

// Element of F_p, p < 2^31. A value with p == 0 is an integer constant that
// takes the modulus of whatever it is combined with.
class ModP {
 public:
  ModP() = default;
  ModP(long c) : v_(c), p_(0) {}
  ModP(std::int64_t v, std::int64_t p);

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  ModP operator+(const ModP& o) const;
  ModP operator-(const ModP& o) const;
  ModP operator-() const;
  ModP operator*(const ModP& o) const;
  ModP operator/(const ModP& o) const { return *this * o.inverse(); }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  bool operator==(const ModP& o) const;
  bool operator!=(const ModP& o) const { return !(*this == o); }

  ModP inverse() const;
  ModP scaled(const Rat& c) const;
  ModP pow(long e) const;
  // No conjugation exists on F_p; calling this is a logic error.
  ModP conj() const;

  std::string to_string() const;

 private:
  static std::int64_t common_modulus(const ModP& a, const ModP& b);
  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t p);
bool is_prime(std::int64_t n);

// Ring map Z[zeta_M, 1/m][u]/(u^2 - q) -> F_p with zeta_M -> zeta and u -> root.
// Requires M | p - 1 and root^2 = q mod p.
struct ModPEmbedding {
  std::int64_t p = 0;
  int M = 1;
  std::int64_t zeta = 1;
  std::int64_t root = 0;
  long q = 0;

  // Smallest prime p >= start with p = 1 mod M and q a nonzero square mod p.
  static ModPEmbedding find(int M, long q, std::int64_t start, bool negate_root = false);
  // Throws std::domain_error if a denominator vanishes mod p.
  ModP operator()(const CurveScalar& x) const;
  ModP operator()(const Rat& x) const;
};

}  // namespace ehall
