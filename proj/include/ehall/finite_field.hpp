#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ehall {

// F_{p^k} with elements encoded as integers whose base-p digits are the coefficients of a
// polynomial in the generator T (constant term = lowest digit). The defining polynomial is
// primitive, and for every proper divisor j of k the element T^((p^k-1)/(p^j-1)) is the
// generator of F_{p^j}, so embeddings between levels are compatible along any tower.
class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr long kMaxSize = 1L << 20;

  // Shared instance; built on first use. Throws std::length_error above kMaxSize.
  static const FiniteField& get(long p, int k);

  long characteristic() const { return p_; }
  int degree() const { return k_; }
  long size() const { return Q_; }
  // Coefficients of the defining polynomial, constant term first, monic.
  const std::vector<long>& modulus() const { return f_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    long s = log_[a] + log_[b];
    if (s >= Q_ - 1) s -= Q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long e) const;
  Elem from_int(long c) const;

  // Discrete log to the base T; a must be nonzero.
  long log(Elem a) const;
  Elem exp(long e) const;
  // a^(p^j)
  Elem frobenius(Elem a, int j) const;
  // Image of an element of the subfield F_{p^j} (j | k).
  Elem embed(const FiniteField& sub, Elem a) const;
  bool lies_in(const FiniteField& sub, Elem a) const;
  // Inverse of embed; a must lie in the subfield.
  Elem descend(const FiniteField& sub, Elem a) const;
  // Square roots of a (0, 1 or 2 of them).
  std::vector<Elem> sqrt(Elem a) const;
  // For p = 2: a root z of z^2 + z = w, or -1 if none.
  long artin_schreier_root(Elem w) const;

  std::string to_string(Elem a) const;

 private:
  FiniteField(long p, int k);
  long p_;
  int k_;
  long Q_;
  std::vector<long> f_;
  std::vector<Elem> exp_;
  std::vector<std::int32_t> log_;
  std::vector<std::int32_t> as_root_;
};

}  // namespace ehall
