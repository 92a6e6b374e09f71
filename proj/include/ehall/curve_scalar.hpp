#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ehall {

using Rat = mpq_class;
using Int = mpz_class;

// Integer coefficients of the M-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int M);
long euler_phi(long m);

// Element a + b*u of Q(zeta_M)[u]/(u^2 - q), with a, b in the power basis of Q(zeta_M).
// q == 0 marks a value with b == 0 that is compatible with every q.
class CurveScalar {
 public:
  CurveScalar();
  CurveScalar(long c);
  CurveScalar(const Rat& c);

  static CurveScalar root_of_unity(long k, int M);
  // u, the square root of q.
  static CurveScalar sqrt_q(long q);
  // v = u^-1 = u/q.
  static CurveScalar v(long q);

  int M() const { return M_; }
  long q() const { return q_; }
  const std::vector<Rat>& rational_part() const { return a_; }
  const std::vector<Rat>& u_part() const { return b_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat to_rational() const;

  CurveScalar operator+(const CurveScalar& o) const;
  CurveScalar operator-(const CurveScalar& o) const;
  CurveScalar operator-() const;
  CurveScalar operator*(const CurveScalar& o) const;
  CurveScalar operator/(const CurveScalar& o) const { return *this * o.inverse(); }
  CurveScalar& operator+=(const CurveScalar& o) { return *this = *this + o; }
  CurveScalar& operator-=(const CurveScalar& o) { return *this = *this - o; }
  CurveScalar& operator*=(const CurveScalar& o) { return *this = *this * o; }
  bool operator==(const CurveScalar& o) const;
  bool operator!=(const CurveScalar& o) const { return !(*this == o); }

  CurveScalar inverse() const;
  CurveScalar scaled(const Rat& c) const;
  CurveScalar pow(long e) const;
  // zeta -> zeta^-1, u fixed.
  CurveScalar conj() const;
  // Same value expressed over Q(zeta_{M2}); M must divide M2.
  CurveScalar lifted(int M2) const;
  // Readable form; z<M> is zeta_M and u is the square root of q.
  std::string to_string() const;
  // Coordinate form with explicit M and q.
  std::string serialize() const;

 private:
  CurveScalar(int M, long q, std::vector<Rat> a, std::vector<Rat> b);
  static void align(CurveScalar& x, CurveScalar& y);
  int M_ = 1;
  long q_ = 0;
  std::vector<Rat> a_, b_;
};

}  // namespace ehall
