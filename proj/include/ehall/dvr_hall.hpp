#pragma once

#include "ehall/partition.hpp"
#include "ehall/scalar_ops.hpp"

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <utility>

namespace ehall {

using PartitionPair = std::pair<Partition, Partition>;

// Largest number of subspaces the submodule enumeration will visit for one module.
constexpr long kSubspaceBudget = 4'000'000;

// For the module I_lambda = sum_i F_q[t]/t^{lambda_i}: the number of t-stable subspaces N
// for each (type of I_lambda/N, type of N). OpenMP over pivot patterns.
std::map<PartitionPair, long> enumerate_submodule_types(const Partition& lambda, long q);
// Same count, single-threaded.
std::map<PartitionPair, long> enumerate_submodule_types_serial(const Partition& lambda, long q);

// Number of submodules N of I_lambda with N ~ I_nu and I_lambda/N ~ I_mu. Cached per (q, lambda).
long hall_number(const Partition& lambda, const Partition& mu, const Partition& nu, long q);
const std::map<PartitionPair, long>& hall_decompositions(const Partition& lambda, long q);
// lambda -> g^lambda_{mu nu}, nonzero entries only.
const std::map<Partition, long>& hall_product(const Partition& mu, const Partition& nu, long q);

// #Aut(I_lambda) from the closed formula.
mpz_class aut_count(const Partition& lambda, long q);
// #Aut(I_lambda) by counting invertible endomorphisms; small cases only.
mpz_class aut_count_bruteforce(const Partition& lambda, long q);

// Finite linear combination of isoclasses [I_lambda] over F_q[[t]], coefficients in S.
template <class S>
class DvrHallElement {
 public:
  explicit DvrHallElement(long q) : q_(q) {}
  static DvrHallElement basis(const Partition& lambda, long q, const S& c = S(1)) {
    DvrHallElement r(q);
    r.add_term(lambda, c);
    return r;
  }
  static DvrHallElement one(long q) { return basis(Partition(), q); }

  long q() const { return q_; }
  const std::map<Partition, S>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  S coefficient(const Partition& l) const {
    auto it = c_.find(l);
    return it == c_.end() ? S() : it->second;
  }

  void add_term(const Partition& l, const S& c) {
    if (is_zero_of(c)) return;
    auto it = c_.find(l);
    if (it == c_.end()) {
      c_.emplace(l, c);
    } else {
      it->second = it->second + c;
      if (is_zero_of(it->second)) c_.erase(it);
    }
  }

  DvrHallElement operator+(const DvrHallElement& o) const {
    check(o);
    DvrHallElement r = *this;
    for (auto& [l, c] : o.c_) r.add_term(l, c);
    return r;
  }
  DvrHallElement operator-(const DvrHallElement& o) const { return *this + o.scaled(S(-1)); }
  DvrHallElement scaled(const S& s) const {
    DvrHallElement r(q_);
    for (auto& [l, c] : c_) r.add_term(l, c * s);
    return r;
  }
  DvrHallElement operator*(const DvrHallElement& o) const {
    check(o);
    DvrHallElement r(q_);
    for (auto& [m, a] : c_)
      for (auto& [n, b] : o.c_)
        for (auto& [l, g] : hall_product(m, n, q_)) r.add_term(l, scaled_by(S(a * b), mpq_class(g)));
    return r;
  }
  bool operator==(const DvrHallElement& o) const { return q_ == o.q_ && c_ == o.c_; }

  // Delta([I_l]) = sum g^l_{mu nu} a_mu a_nu / a_l [I_mu] (x) [I_nu].
  std::map<PartitionPair, S> coproduct() const {
    std::map<PartitionPair, S> out;
    for (auto& [l, c] : c_) {
      mpz_class al = aut_count(l, q_);
      for (auto& [mn, g] : hall_decompositions(l, q_)) {
        mpq_class k(mpz_class(g) * aut_count(mn.first, q_) * aut_count(mn.second, q_), al);
        k.canonicalize();
        S v = scaled_by(c, k);
        auto it = out.find(mn);
        if (it == out.end()) out.emplace(mn, v); else it->second = it->second + v;
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = is_zero_of(it->second) ? out.erase(it) : std::next(it);
    return out;
  }

  // ([I_l], [I_m]) = delta / a_l, conjugate-linear in the second slot.
  S green_pair(const DvrHallElement& o) const {
    check(o);
    S acc;
    for (auto& [l, c] : c_) {
      auto it = o.c_.find(l);
      if (it == o.c_.end()) continue;
      acc = acc + scaled_by(S(c * conj_of(it->second)), mpq_class(1) / mpq_class(aut_count(l, q_)));
    }
    return acc;
  }

 private:
  void check(const DvrHallElement& o) const {
    if (o.q_ != q_) throw std::invalid_argument("DvrHallElement: mixed residue field sizes");
  }
  long q_;
  std::map<Partition, S> c_;
};

// Pairing of tensors in H (x) H: (a (x) b, c (x) d) = (a, c)(b, d).
template <class S>
S green_pair_tensor(const std::map<PartitionPair, S>& x, const std::map<PartitionPair, S>& y, long q) {
  S acc;
  for (auto& [k, a] : x) {
    auto it = y.find(k);
    if (it == y.end()) continue;
    mpq_class w = mpq_class(1) / mpq_class(aut_count(k.first, q) * aut_count(k.second, q));
    acc = acc + scaled_by(S(a * conj_of(it->second)), w);
  }
  return acc;
}

// n_u(l) = prod_{i=1}^{l} (1 - u^{-2i}) with u^{-2} = q.
mpq_class n_u(int l, long q);

// F_r = sum_{|lambda| = r} n_u(l(lambda) - 1) [I_lambda].
template <class S>
DvrHallElement<S> F_element(int r, long q) {
  if (r < 1) throw std::invalid_argument("F_element: r must be positive");
  DvrHallElement<S> out(q);
  for (auto& l : Partition::all(r)) out.add_term(l, scaled_by(S(1), n_u(l.length() - 1, q)));
  return out;
}

}  // namespace ehall
