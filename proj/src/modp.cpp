#include "ehall/modp.hpp"

#include <stdexcept>

namespace ehall {

namespace {

std::int64_t norm(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t rat_mod(const Rat& c, std::int64_t p) {
  Int n = c.get_num() % p;
  Int d = c.get_den() % p;
  if (d == 0) throw std::domain_error("ModP: denominator divisible by p");
  std::int64_t nn = norm(n.get_si(), p);
  std::int64_t dd = norm(d.get_si(), p);
  return nn * powmod(dd, p - 2, p) % p;
}

}  // namespace

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  b = norm(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ModP::ModP(std::int64_t v, std::int64_t p) : v_(p ? norm(v, p) : v), p_(p) {}

std::int64_t ModP::common_modulus(const ModP& a, const ModP& b) {
  if (a.p_ && b.p_ && a.p_ != b.p_) throw std::invalid_argument("ModP: mismatched moduli");
  return a.p_ ? a.p_ : b.p_;
}

ModP ModP::operator+(const ModP& o) const {
  std::int64_t p = common_modulus(*this, o);
  if (!p) return ModP(v_ + o.v_);
  return ModP(norm(v_, p) + norm(o.v_, p), p);
}

ModP ModP::operator-(const ModP& o) const { return *this + (-o); }
ModP ModP::operator-() const { return p_ ? ModP(p_ - v_, p_) : ModP(-v_); }

ModP ModP::operator*(const ModP& o) const {
  std::int64_t p = common_modulus(*this, o);
  if (!p) return ModP(v_ * o.v_);
  return ModP(norm(v_, p) * norm(o.v_, p) % p, p);
}

bool ModP::operator==(const ModP& o) const {
  std::int64_t p = common_modulus(*this, o);
  if (!p) return v_ == o.v_;
  return norm(v_, p) == norm(o.v_, p);
}

ModP ModP::inverse() const {
  if (!p_) {
    if (v_ == 1 || v_ == -1) return *this;
    throw std::domain_error("ModP: inverse of an integer constant without modulus");
  }
  if (v_ == 0) throw std::domain_error("ModP: inverse of zero");
  return ModP(powmod(v_, p_ - 2, p_), p_);
}

ModP ModP::scaled(const Rat& c) const {
  if (!p_) {
    if (c.get_den() != 1) throw std::domain_error("ModP: rational scale without modulus");
    return ModP(v_ * c.get_num().get_si());
  }
  return ModP(v_ * rat_mod(c, p_) % p_, p_);
}

ModP ModP::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (!p_) {
    std::int64_t r = 1;
    for (long i = 0; i < e; ++i) r *= v_;
    return ModP(r);
  }
  return ModP(powmod(v_, e, p_), p_);
}

ModP ModP::conj() const { throw std::logic_error("ModP: conjugation is not defined"); }

std::string ModP::to_string() const {
  if (!p_) return std::to_string(v_);
  return std::to_string(v_) + " mod " + std::to_string(p_);
}

ModPEmbedding ModPEmbedding::find(int M, long q, std::int64_t start, bool negate_root) {
  for (std::int64_t p = start;; ++p) {
    if ((p - 1) % M != 0 || !is_prime(p) || q % p == 0) continue;
    std::int64_t root = -1;
    for (std::int64_t r = 1; r < p && p < 200000; ++r)
      if (r * r % p == q % p) { root = r; break; }
    if (root < 0) {
      if (p >= 200000) throw std::runtime_error("ModPEmbedding: search range exhausted");
      continue;
    }
    // Primitive M-th root: g^((p-1)/M) for a generator candidate g.
    std::int64_t zeta = -1;
    for (std::int64_t g = 2; g < p; ++g) {
      std::int64_t z = powmod(g, (p - 1) / M, p);
      bool prim = true;
      for (int d = 1; d < M; ++d)
        if (M % d == 0 && powmod(z, d, p) == 1) { prim = false; break; }
      if (prim) { zeta = z; break; }
    }
    if (M == 1) zeta = 1;
    ModPEmbedding e;
    e.p = p;
    e.M = M;
    e.zeta = zeta;
    e.root = negate_root ? p - root : root;
    e.q = q;
    return e;
  }
}

ModP ModPEmbedding::operator()(const Rat& x) const { return ModP(rat_mod(x, p), p); }

ModP ModPEmbedding::operator()(const CurveScalar& x) const {
  if (M % x.M() != 0) throw std::invalid_argument("ModPEmbedding: cyclotomic order not covered");
  if (x.q() != 0 && x.q() != q) throw std::invalid_argument("ModPEmbedding: mismatched q");
  std::int64_t z = powmod(zeta, M / x.M(), p);
  auto eval = [&](const std::vector<Rat>& c) {
    std::int64_t acc = 0, zp = 1;
    for (auto& a : c) {
      acc = (acc + rat_mod(a, p) * zp) % p;
      zp = zp * z % p;
    }
    return acc;
  };
  std::int64_t r = (eval(x.rational_part()) + eval(x.u_part()) * root) % p;
  return ModP(r, p);
}

}  // namespace ehall
