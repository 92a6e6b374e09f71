#include "ehall/curve_scalar.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ehall {

long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  }
  if (m > 1) r -= r / m;
  return r;
}

const std::vector<long>& cyclotomic_polynomial(int M) {
  static std::mutex mu;
  static std::map<int, std::vector<long>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
  }
  if (M < 1) throw std::invalid_argument("cyclotomic_polynomial: M must be positive");
  // x^M - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> p(M + 1, 0);
  p[0] = -1;
  p[M] = 1;
  for (int d = 1; d < M; ++d) {
    if (M % d != 0) continue;
    const std::vector<long>& f = cyclotomic_polynomial(d);
    int df = static_cast<int>(f.size()) - 1;
    int dp = static_cast<int>(p.size()) - 1;
    std::vector<long> quo(dp - df + 1, 0);
    for (int k = dp; k >= df; --k) {
      long c = p[k];
      quo[k - df] = c;
      for (int i = 0; i <= df; ++i) p[k - df + i] -= c * f[i];
    }
    p = quo;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(M, p).first->second;
}

namespace {

std::vector<Rat> reduce_mod(std::vector<Rat> poly, int M) {
  const auto& f = cyclotomic_polynomial(M);
  int d = static_cast<int>(f.size()) - 1;
  for (int k = static_cast<int>(poly.size()) - 1; k >= d; --k) {
    if (poly[k] == 0) continue;
    Rat c = poly[k];
    for (int i = 0; i <= d; ++i) poly[k - d + i] -= c * f[i];
  }
  poly.resize(d, Rat(0));
  return poly;
}

std::vector<Rat> mul_mod(const std::vector<Rat>& x, const std::vector<Rat>& y, int M) {
  if (x.size() == 1) {
    std::vector<Rat> r(y.size());
    for (size_t i = 0; i < y.size(); ++i) r[i] = x[0] * y[i];
    return r;
  }
  std::vector<Rat> r(x.size() + y.size() - 1, Rat(0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) r[i + j] += x[i] * y[j];
  }
  return reduce_mod(std::move(r), M);
}

bool all_zero(const std::vector<Rat>& v) {
  for (auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

CurveScalar::CurveScalar() : a_(1, Rat(0)), b_(1, Rat(0)) {}
CurveScalar::CurveScalar(long c) : a_(1, Rat(c)), b_(1, Rat(0)) {}
CurveScalar::CurveScalar(const Rat& c) : a_(1, c), b_(1, Rat(0)) { a_[0].canonicalize(); }
CurveScalar::CurveScalar(int M, long q, std::vector<Rat> a, std::vector<Rat> b)
    : M_(M), q_(q), a_(std::move(a)), b_(std::move(b)) {}

CurveScalar CurveScalar::root_of_unity(long k, int M) {
  long e = ((k % M) + M) % M;
  std::vector<Rat> poly(e + 1, Rat(0));
  poly[e] = 1;
  int d = static_cast<int>(euler_phi(M));
  return CurveScalar(M, 0, reduce_mod(poly, M), std::vector<Rat>(d, Rat(0)));
}

CurveScalar CurveScalar::sqrt_q(long q) {
  if (q < 2) throw std::invalid_argument("CurveScalar::sqrt_q: q must be >= 2");
  return CurveScalar(1, q, {Rat(0)}, {Rat(1)});
}

CurveScalar CurveScalar::v(long q) { return CurveScalar(1, q, {Rat(0)}, {Rat(1, q)}); }

bool CurveScalar::is_zero() const { return all_zero(a_) && all_zero(b_); }

bool CurveScalar::is_rational() const {
  if (!all_zero(b_)) return false;
  for (size_t i = 1; i < a_.size(); ++i)
    if (a_[i] != 0) return false;
  return true;
}

Rat CurveScalar::to_rational() const {
  if (!is_rational()) throw std::domain_error("CurveScalar::to_rational: not rational");
  return a_.empty() ? Rat(0) : a_[0];
}

CurveScalar CurveScalar::lifted(int M2) const {
  if (M2 == M_) return *this;
  if (M2 % M_ != 0) throw std::invalid_argument("CurveScalar::lifted: M must divide target");
  int step = M2 / M_;
  auto lift = [&](const std::vector<Rat>& v) {
    std::vector<Rat> poly((v.size() - 1) * step + 1, Rat(0));
    for (size_t i = 0; i < v.size(); ++i) poly[i * step] = v[i];
    return reduce_mod(poly, M2);
  };
  return CurveScalar(M2, q_, lift(a_), lift(b_));
}

void CurveScalar::align(CurveScalar& x, CurveScalar& y) {
  if (x.q_ != y.q_) {
    if (x.q_ == 0 && all_zero(x.b_)) {
      x.q_ = y.q_;
    } else if (y.q_ == 0 && all_zero(y.b_)) {
      y.q_ = x.q_;
    } else {
      throw std::invalid_argument("CurveScalar: mismatched q");
    }
  }
  if (x.M_ != y.M_) {
    int M = std::lcm(x.M_, y.M_);
    x = x.lifted(M);
    y = y.lifted(M);
  }
}

CurveScalar CurveScalar::operator+(const CurveScalar& o) const {
  CurveScalar x = *this, y = o;
  align(x, y);
  for (size_t i = 0; i < x.a_.size(); ++i) {
    x.a_[i] += y.a_[i];
    x.b_[i] += y.b_[i];
  }
  return x;
}

CurveScalar CurveScalar::operator-() const {
  CurveScalar r = *this;
  for (auto& c : r.a_) c = -c;
  for (auto& c : r.b_) c = -c;
  return r;
}

CurveScalar CurveScalar::operator-(const CurveScalar& o) const { return *this + (-o); }

CurveScalar CurveScalar::operator*(const CurveScalar& o) const {
  CurveScalar x = *this, y = o;
  align(x, y);
  bool bx = !all_zero(x.b_), by = !all_zero(y.b_);
  std::vector<Rat> a = mul_mod(x.a_, y.a_, x.M_);
  std::vector<Rat> b(a.size(), Rat(0));
  if (bx && by) {
    std::vector<Rat> bb = mul_mod(x.b_, y.b_, x.M_);
    for (size_t i = 0; i < a.size(); ++i) a[i] += Rat(x.q_) * bb[i];
  }
  if (by) {
    std::vector<Rat> t = mul_mod(x.a_, y.b_, x.M_);
    for (size_t i = 0; i < b.size(); ++i) b[i] += t[i];
  }
  if (bx) {
    std::vector<Rat> t = mul_mod(x.b_, y.a_, x.M_);
    for (size_t i = 0; i < b.size(); ++i) b[i] += t[i];
  }
  return CurveScalar(x.M_, x.q_, std::move(a), std::move(b));
}

bool CurveScalar::operator==(const CurveScalar& o) const {
  CurveScalar x = *this, y = o;
  if (x.q_ != y.q_ && all_zero(x.b_) && all_zero(y.b_)) {
    x.q_ = y.q_ = 0;
  }
  align(x, y);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

CurveScalar CurveScalar::scaled(const Rat& c0) const {
  Rat c = c0;
  c.canonicalize();
  CurveScalar r = *this;
  for (auto& x : r.a_) x *= c;
  for (auto& x : r.b_) x *= c;
  return r;
}

CurveScalar CurveScalar::conj() const {
  auto cj = [&](const std::vector<Rat>& v) {
    std::vector<Rat> poly(M_, Rat(0));
    for (size_t i = 0; i < v.size(); ++i) poly[(M_ - static_cast<int>(i)) % M_] += v[i];
    return reduce_mod(poly, M_);
  };
  return CurveScalar(M_, q_, cj(a_), cj(b_));
}

CurveScalar CurveScalar::inverse() const {
  if (is_zero()) throw std::domain_error("CurveScalar: inverse of zero");
  bool has_u = !all_zero(b_);
  if (M_ == 1) {
    Rat n = a_[0] * a_[0] - Rat(q_) * b_[0] * b_[0];
    if (n == 0) throw std::domain_error("CurveScalar: not invertible");
    return CurveScalar(1, q_, {a_[0] / n}, {-b_[0] / n});
  }
  // Solve x * y = 1 as a linear system over Q.
  int d = static_cast<int>(a_.size());
  int n = has_u ? 2 * d : d;
  std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n + 1, Rat(0)));
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> ea(d, Rat(0)), eb(d, Rat(0));
    if (j < d) ea[j] = 1; else eb[j - d] = 1;
    CurveScalar basis(M_, q_, ea, eb);
    CurveScalar col = *this * basis;
    for (int i = 0; i < d; ++i) mat[i][j] = col.a_[i];
    if (has_u)
      for (int i = 0; i < d; ++i) mat[d + i][j] = col.b_[i];
  }
  mat[0][n] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (mat[r][c] != 0) { piv = r; break; }
    if (piv < 0) throw std::domain_error("CurveScalar: not invertible");
    std::swap(mat[c], mat[piv]);
    Rat inv = 1 / mat[c][c];
    for (int k = c; k <= n; ++k) mat[c][k] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || mat[r][c] == 0) continue;
      Rat f = mat[r][c];
      for (int k = c; k <= n; ++k) mat[r][k] -= f * mat[c][k];
    }
  }
  std::vector<Rat> ra(d, Rat(0)), rb(d, Rat(0));
  for (int i = 0; i < d; ++i) ra[i] = mat[i][n];
  if (has_u)
    for (int i = 0; i < d; ++i) rb[i] = mat[d + i][n];
  return CurveScalar(M_, q_, ra, rb);
}

CurveScalar CurveScalar::pow(long e) const {
  CurveScalar base = e < 0 ? inverse() : *this;
  long k = e < 0 ? -e : e;
  CurveScalar r(1);
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

std::string CurveScalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rat& c, size_t i, bool u) {
    if (c == 0) return;
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool mono = i > 0 || u;
    if (!mono || a != 1) {
      os << a.get_str();
      if (mono) os << "*";
    }
    if (i > 0) {
      os << "z" << M_;
      if (i > 1) os << "^" << i;
      if (u) os << "*";
    }
    if (u) os << "u";
  };
  for (size_t i = 0; i < a_.size(); ++i) emit(a_[i], i, false);
  for (size_t i = 0; i < b_.size(); ++i) emit(b_[i], i, true);
  if (first) return "0";
  return os.str();
}

std::string CurveScalar::serialize() const {
  std::ostringstream os;
  os << "M=" << M_ << ";q=" << q_ << ";a=[";
  for (size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i].get_str();
  os << "];b=[";
  for (size_t i = 0; i < b_.size(); ++i) os << (i ? "," : "") << b_[i].get_str();
  os << "]";
  return os.str();
}

}  // namespace ehall
