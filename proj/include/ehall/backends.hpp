#pragma once

#include "ehall/curve_scalar.hpp"
#include "ehall/formal_scalar.hpp"

#include <string>

namespace ehall {

// Structure constants with sigma, sigmabar kept symbolic: s = sigma^(1/2), sb = sigmabar^(1/2).
class FormalBackend {
 public:
  using Scalar = FormalScalar;

  Scalar nu() const;
  Scalar nu_integer(int r) const;
  Scalar c(int i) const;
  Scalar alpha(int i) const;
  Scalar sigma_pow_sum(int n) const;   // sigma^n + sigmabar^n
  Scalar sigma_prod_pow(int n) const;  // (sigma sigmabar)^n
  std::string name() const { return "formal"; }
};

// Structure constants specialized to a curve over F_q with Frobenius trace a:
// sigma + sigmabar = a, sigma sigmabar = q, nu = v = q^(-1/2).
class CurveBackend {
 public:
  using Scalar = CurveScalar;

  CurveBackend(long q, long trace);

  long q() const { return q_; }
  long trace() const { return a_; }
  // t_n = sigma^n + sigmabar^n, for n >= 0.
  Int trace_power(int n) const;
  // #X(F_{q^n}) = q^n + 1 - t_n.
  Int point_count(int n) const;

  Scalar nu() const;
  Scalar nu_integer(int r) const;
  Scalar c(int i) const;
  Scalar alpha(int i) const;
  Scalar sigma_pow_sum(int n) const;
  Scalar sigma_prod_pow(int n) const;
  std::string name() const { return "curve"; }

 private:
  long q_;
  long a_;
};

// [r]_nu = (nu^r - nu^-r)/(nu - nu^-1) as the symmetric sum nu^(r-1) + nu^(r-3) + ... + nu^(1-r).
template <class S>
S nu_integer_from(const S& nu, int r) {
  if (r <= 0) throw std::invalid_argument("nu_integer: r must be positive");
  S acc;
  for (int k = 0; k < r; ++k) acc += nu.pow(r - 1 - 2 * k);
  return acc;
}

}  // namespace ehall
