#include "ehall/backends.hpp"

#include <stdexcept>

namespace ehall {

namespace {

void require_positive(int i, const char* what) {
  if (i <= 0) throw std::invalid_argument(std::string(what) + ": index must be positive");
}

}  // namespace

FormalScalar FormalBackend::nu() const { return FormalScalar::monomial(-1, -1); }

FormalScalar FormalBackend::nu_integer(int r) const { return nu_integer_from(nu(), r); }

FormalScalar FormalBackend::c(int i) const {
  require_positive(i, "c");
  FormalScalar a = FormalScalar::monomial(i, 0) - FormalScalar::monomial(-i, 0);
  FormalScalar b = FormalScalar::monomial(0, i) - FormalScalar::monomial(0, -i);
  return (a * b * nu_integer(i)).scaled(Rat(1, i));
}

FormalScalar FormalBackend::alpha(int i) const {
  require_positive(i, "alpha");
  FormalScalar one(1);
  FormalScalar r = (one - FormalScalar::monomial(2 * i, 0)) * (one - FormalScalar::monomial(0, 2 * i)) *
                   (one - FormalScalar::monomial(-2 * i, -2 * i));
  return r.scaled(Rat(1, i));
}

FormalScalar FormalBackend::sigma_pow_sum(int n) const {
  return FormalScalar::monomial(2 * n, 0) + FormalScalar::monomial(0, 2 * n);
}

FormalScalar FormalBackend::sigma_prod_pow(int n) const { return FormalScalar::monomial(2 * n, 2 * n); }

CurveBackend::CurveBackend(long q, long trace) : q_(q), a_(trace) {
  if (q < 2) throw std::invalid_argument("CurveBackend: q must be a prime power >= 2");
}

Int CurveBackend::trace_power(int n) const {
  if (n < 0) throw std::invalid_argument("trace_power: n must be >= 0");
  Int t0 = 2, t1 = a_;
  if (n == 0) return t0;
  for (int k = 2; k <= n; ++k) {
    Int t2 = Int(a_) * t1 - Int(q_) * t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

Int CurveBackend::point_count(int n) const {
  Int qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), q_, n);
  return qn + 1 - trace_power(n);
}

CurveScalar CurveBackend::nu() const { return CurveScalar::v(q_); }

CurveScalar CurveBackend::nu_integer(int r) const { return nu_integer_from(nu(), r); }

CurveScalar CurveBackend::c(int i) const {
  require_positive(i, "c");
  return (nu_integer(i) * nu().pow(i)).scaled(Rat(point_count(i)) / i);
}

CurveScalar CurveBackend::alpha(int i) const {
  require_positive(i, "alpha");
  Int qi;
  mpz_ui_pow_ui(qi.get_mpz_t(), q_, i);
  Rat r = Rat(point_count(i)) * (1 - Rat(1) / Rat(qi)) / i;
  r.canonicalize();
  return CurveScalar(r);
}

CurveScalar CurveBackend::sigma_pow_sum(int n) const {
  if (n < 0) {
    // sigma^-n + sigmabar^-n = t_n / q^n
    Int qn;
    mpz_ui_pow_ui(qn.get_mpz_t(), q_, -n);
    return CurveScalar(Rat(trace_power(-n)) / Rat(qn));
  }
  return CurveScalar(Rat(trace_power(n)));
}

CurveScalar CurveBackend::sigma_prod_pow(int n) const { return CurveScalar::sqrt_q(q_).pow(2 * n); }

}  // namespace ehall
