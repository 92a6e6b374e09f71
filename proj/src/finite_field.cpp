#include "ehall/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ehall {

namespace {

using Poly = std::vector<long>;  // constant term first

long mod(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, long p) {
  int k = static_cast<int>(f.size()) - 1;
  Poly r(2 * k, 0);
  for (int i = 0; i < k; ++i)
    if (a[i])
      for (int j = 0; j < k; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (int d = 2 * k - 1; d >= k; --d) {
    long c = r[d];
    if (!c) continue;
    for (int i = 0; i <= k; ++i) r[d - k + i] = mod(r[d - k + i] - c * f[i], p);
  }
  r.resize(k);
  return r;
}

Poly powmod(Poly b, long e, const Poly& f, long p) {
  int k = static_cast<int>(f.size()) - 1;
  Poly r(k, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, f, p);
    b = mulmod(b, b, f, p);
    e >>= 1;
  }
  return r;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<long, int>, std::unique_ptr<FiniteField>>& registry() {
  static std::map<std::pair<long, int>, std::unique_ptr<FiniteField>> r;
  return r;
}

}  // namespace

const FiniteField& FiniteField::get(long p, int k) {
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find({p, k});
    if (it != registry().end()) return *it->second;
  }
  if (k < 1 || p < 2) throw std::invalid_argument("FiniteField: bad parameters");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("FiniteField: characteristic must be prime");
  // Subfields first so the compatibility search can see them.
  for (int j = 1; j < k; ++j)
    if (k % j == 0) get(p, j);
  std::unique_ptr<FiniteField> f(new FiniteField(p, k));
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = registry()[{p, k}];
  if (!slot) slot = std::move(f);
  return *slot;
}

FiniteField::FiniteField(long p, int k) : p_(p), k_(k) {
  double approx = 1;
  for (int i = 0; i < k; ++i) approx *= p;
  if (approx > kMaxSize) throw std::length_error("FiniteField: size exceeds budget");
  Q_ = ipow(p, k);
  const long order = Q_ - 1;
  auto factors = prime_factors(order);

  std::vector<const FiniteField*> subs;
  for (int j = 1; j < k; ++j)
    if (k % j == 0) subs.push_back(&get(p, j));

  // Monic candidates f = T^k + sum c_i T^i, enumerated by the integer encoding of (c_i).
  bool found = false;
  for (long code = 0; code < Q_ && !found; ++code) {
    Poly f(k + 1, 0);
    long c = code;
    for (int i = 0; i < k; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;
    Poly t(k, 0);
    if (k == 1) t[0] = mod(-f[0], p); else t[1] = 1;
    Poly one(k, 0);
    one[0] = 1;
    if (powmod(t, order, f, p) != one) continue;
    bool primitive = true;
    for (long r : factors)
      if (powmod(t, order / r, f, p) == one) { primitive = false; break; }
    if (!primitive) continue;
    bool compatible = true;
    for (const FiniteField* sub : subs) {
      // sub's generator must map to t^((Q-1)/(Q_j-1)): evaluate sub's modulus there.
      Poly g = powmod(t, order / (sub->Q_ - 1), f, p);
      Poly acc(k, 0), gp = one;
      for (size_t i = 0; i < sub->f_.size(); ++i) {
        for (int j = 0; j < k; ++j) acc[j] = (acc[j] + sub->f_[i] * gp[j]) % p;
        gp = mulmod(gp, g, f, p);
      }
      if (acc != Poly(k, 0)) { compatible = false; break; }
    }
    if (!compatible) continue;
    f_ = f;
    found = true;
  }
  if (!found) throw std::logic_error("FiniteField: no compatible primitive polynomial");

  exp_.assign(order, 0);
  log_.assign(Q_, -1);
  Poly cur(k, 0), t(k, 0);
  cur[0] = 1;
  if (k == 1) t[0] = mod(-f_[0], p); else t[1] = 1;
  for (long e = 0; e < order; ++e) {
    long enc = 0;
    for (int i = k - 1; i >= 0; --i) enc = enc * p + cur[i];
    exp_[e] = static_cast<Elem>(enc);
    log_[enc] = static_cast<std::int32_t>(e);
    cur = mulmod(cur, t, f_, p);
  }
  if (p == 2) {
    as_root_.assign(Q_, -1);
    for (long z = 0; z < Q_; ++z) {
      Elem w = add(mul(static_cast<Elem>(z), static_cast<Elem>(z)), static_cast<Elem>(z));
      if (as_root_[w] < 0) as_root_[w] = static_cast<std::int32_t>(z);
    }
  }
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0, place = 1;
  while (a || b) {
    long d = (a % p_ + b % p_) % p_;
    r += static_cast<Elem>(d) * place;
    place *= static_cast<Elem>(p_);
    a /= p_;
    b /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (p_ == 2) return a;
  Elem r = 0, place = 1;
  while (a) {
    long d = (p_ - a % p_) % p_;
    r += static_cast<Elem>(d) * place;
    place *= static_cast<Elem>(p_);
    a /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
  long l = log_[a];
  return exp_[l == 0 ? 0 : Q_ - 1 - l];
}

FiniteField::Elem FiniteField::pow(Elem a, long e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  long m = (static_cast<long>(log_[a]) * mod(e, Q_ - 1)) % (Q_ - 1);
  return exp_[m];
}

FiniteField::Elem FiniteField::from_int(long c) const { return static_cast<Elem>(mod(c, p_)); }

long FiniteField::log(Elem a) const {
  if (a == 0) throw std::domain_error("FiniteField: log of zero");
  return log_[a];
}

FiniteField::Elem FiniteField::exp(long e) const { return exp_[mod(e, Q_ - 1)]; }

FiniteField::Elem FiniteField::frobenius(Elem a, int j) const {
  if (a == 0) return 0;
  long e = 1;
  for (int i = 0; i < j % k_; ++i) e = e * p_ % (Q_ - 1);
  return exp_[(static_cast<long>(log_[a]) * e) % (Q_ - 1)];
}

FiniteField::Elem FiniteField::embed(const FiniteField& sub, Elem a) const {
  if (sub.p_ != p_ || k_ % sub.k_ != 0) throw std::invalid_argument("FiniteField::embed: not a subfield");
  if (a == 0) return 0;
  return exp_[static_cast<long>(sub.log_[a]) * ((Q_ - 1) / (sub.Q_ - 1)) % (Q_ - 1)];
}

bool FiniteField::lies_in(const FiniteField& sub, Elem a) const {
  if (sub.p_ != p_ || k_ % sub.k_ != 0) throw std::invalid_argument("FiniteField::lies_in: not a subfield");
  if (a == 0) return true;
  return log_[a] % ((Q_ - 1) / (sub.Q_ - 1)) == 0;
}

FiniteField::Elem FiniteField::descend(const FiniteField& sub, Elem a) const {
  if (!lies_in(sub, a)) throw std::domain_error("FiniteField::descend: element not in subfield");
  if (a == 0) return 0;
  return sub.exp_[log_[a] / ((Q_ - 1) / (sub.Q_ - 1))];
}

std::vector<FiniteField::Elem> FiniteField::sqrt(Elem a) const {
  if (a == 0) return {0};
  long l = log_[a];
  if (p_ == 2) {
    // squaring is a bijection; the root is a^(Q/2)
    return {pow(a, Q_ / 2)};
  }
  if (l % 2 != 0) return {};
  Elem r = exp_[l / 2];
  return {r, neg(r)};
}

long FiniteField::artin_schreier_root(Elem w) const {
  if (p_ != 2) throw std::logic_error("artin_schreier_root: characteristic 2 only");
  return as_root_[w];
}

std::string FiniteField::to_string(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  std::string s;
  long c = a;
  for (int i = 0; i < k_; ++i) {
    long d = c % p_;
    c /= p_;
    if (!d) continue;
    std::string term = i == 0 ? std::to_string(d) : (d == 1 ? "" : std::to_string(d) + "*") + (i == 1 ? "T" : "T^" + std::to_string(i));
    s = s.empty() ? term : term + "+" + s;
  }
  return s.empty() ? "0" : s;
}

}  // namespace ehall
