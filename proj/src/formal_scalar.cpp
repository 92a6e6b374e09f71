#include "ehall/formal_scalar.hpp"

#include "ehall/curve_scalar.hpp"

#include <map>
#include <stdexcept>

namespace ehall {

FormalScalar::FormalScalar(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  normalize();
}

FormalScalar FormalScalar::s() { return FormalScalar(LaurentPoly::monomial(1, 0)); }
FormalScalar FormalScalar::sb() { return FormalScalar(LaurentPoly::monomial(0, 1)); }
FormalScalar FormalScalar::monomial(int i, int j, const Rat& c) {
  return FormalScalar(LaurentPoly::monomial(i, j, c));
}

void FormalScalar::normalize() {
  if (den_.is_zero()) throw std::domain_error("FormalScalar: zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly(Rat(1));
    return;
  }
  auto md = den_.min_exponents();
  if (md[0] != 0 || md[1] != 0) {
    num_ = num_.shifted(-md[0], -md[1]);
    den_ = den_.shifted(-md[0], -md[1]);
  }
  if (!den_.is_constant()) {
    auto mn = num_.min_exponents();
    LaurentPoly g = poly_gcd(num_.shifted(-mn[0], -mn[1]), den_);
    if (!g.is_constant()) {
      num_ = num_.divexact(g);
      den_ = den_.divexact(g);
    }
  }
  Rat c = primitive_normalizer(den_);
  if (c != 1) {
    num_ = num_.scaled(c);
    den_ = den_.scaled(c);
  }
}

FormalScalar FormalScalar::operator+(const FormalScalar& o) const {
  FormalScalar r;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
    if (den_.is_constant()) {
      if (r.num_.is_zero()) r.den_ = LaurentPoly(Rat(1));
      return r;
    }
  } else {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
  }
  r.normalize();
  return r;
}

FormalScalar FormalScalar::operator-() const {
  FormalScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

FormalScalar FormalScalar::operator-(const FormalScalar& o) const { return *this + (-o); }

FormalScalar FormalScalar::operator*(const FormalScalar& o) const {
  FormalScalar r;
  if (is_zero() || o.is_zero()) return r;
  r.num_ = num_ * o.num_;
  r.den_ = den_ * o.den_;
  if (r.den_.is_constant()) return r;
  r.normalize();
  return r;
}

FormalScalar FormalScalar::inverse() const {
  if (is_zero()) throw std::domain_error("FormalScalar: inverse of zero");
  return FormalScalar(den_, num_);
}

FormalScalar FormalScalar::scaled(const Rat& c) const {
  FormalScalar r = *this;
  r.num_ = r.num_.scaled(c);
  if (r.num_.is_zero()) r.den_ = LaurentPoly(Rat(1));
  return r;
}

FormalScalar FormalScalar::pow(int e) const {
  FormalScalar base = e < 0 ? inverse() : *this;
  FormalScalar r(1);
  for (int k = 0; k < std::abs(e); ++k) r = r * base;
  return r;
}

namespace {

CurveScalar specialize_poly(const LaurentPoly& p, long q, long trace) {
  std::map<std::array<int, 2>, Rat> coef;
  for (auto& [e, c] : p.terms()) coef[e] = c;
  auto power_trace = [&](int m) {
    // sigma^m + sigmabar^m for m >= 0
    Rat t0 = 2, t1 = trace;
    if (m == 0) return t0;
    for (int k = 2; k <= m; ++k) {
      Rat t2 = Rat(trace) * t1 - Rat(q) * t0;
      t0 = t1;
      t1 = t2;
    }
    return t1;
  };
  CurveScalar u = CurveScalar::sqrt_q(q);
  CurveScalar r;
  for (auto& [e, c] : coef) {
    int i = e[0], j = e[1];
    if ((i - j) % 2 != 0) throw std::domain_error("specialize: mixed parity exponent");
    auto it = coef.find({j, i});
    if (it == coef.end() || it->second != c) throw std::domain_error("specialize: not symmetric");
    if (i < j) continue;
    if (i == j) {
      r += u.pow(i).scaled(c);
    } else {
      r += u.pow(j).scaled(c * power_trace((i - j) / 2));
    }
  }
  return r;
}

}  // namespace

CurveScalar FormalScalar::specialize(long q, long trace) const {
  return specialize_poly(num_, q, trace) / specialize_poly(den_, q, trace);
}

std::string FormalScalar::to_string() const {
  if (den_.is_constant()) {
    Rat d = den_.leading().second;
    if (d == 1) return num_.to_string();
  }
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace ehall
