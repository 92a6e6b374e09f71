#pragma once

#include "ehall/dvr_hall.hpp"

#include <gmpxx.h>

#include <map>
#include <string>

namespace ehall {

// Symmetric function as a finite combination of power-sum products p_rho, rational coefficients
// (the parameter t = u^2 = 1/q is already specialized).
class SymFun {
 public:
  SymFun() = default;
  static SymFun p(const Partition& rho, const mpq_class& c = 1);
  static SymFun power_sum(int r) { return p(Partition{r}); }
  // e_k = sum_{|rho| = k} (-1)^{k - l(rho)} p_rho / z_rho
  static SymFun elementary(int k);

  const std::map<Partition, mpq_class>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  SymFun operator+(const SymFun& o) const;
  SymFun operator-(const SymFun& o) const;
  SymFun operator*(const SymFun& o) const;
  SymFun scaled(const mpq_class& c) const;
  bool operator==(const SymFun& o) const { return c_ == o.c_; }
  std::string to_string() const;

 private:
  void add_term(const Partition& rho, const mpq_class& c);
  std::map<Partition, mpq_class> c_;
};

mpz_class z_factor(const Partition& rho);

// Psi: [I_{(1^r)}] -> u^{r(r-1)} e_r, extended multiplicatively, at residue field size q.
SymFun macdonald_psi(const DvrHallElement<mpq_class>& a);
DvrHallElement<mpq_class> macdonald_psi_inverse(const SymFun& f, long q);

}  // namespace ehall
