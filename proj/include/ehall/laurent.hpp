#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace ehall {

using Rat = mpq_class;
using Int = mpz_class;

// Laurent polynomial in two variables s, sb over Q.
// Terms are kept sorted by exponent pair in decreasing lex order, no zero coefficients.
class LaurentPoly {
 public:
  using Exp = std::array<int, 2>;
  using Term = std::pair<Exp, Rat>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rat& c);
  static LaurentPoly monomial(int i, int j, const Rat& c = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading() const { return terms_.front(); }

  Exp min_exponents() const;
  Exp max_exponents() const;
  LaurentPoly shifted(int di, int dj) const;
  LaurentPoly scaled(const Rat& c) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Exact quotient; both must have nonnegative exponents and o must divide *this.
  LaurentPoly divexact(const LaurentPoly& o) const;

  // Substitute s -> s^-1 and sb -> sb^-1.
  LaurentPoly inverted_variables() const;

  std::string to_string() const;

 private:
  static LaurentPoly from_map(const std::map<Exp, Rat, std::greater<Exp>>& m);
  std::vector<Term> terms_;
};

// Greatest common divisor in Z[s, sb] of the integer-scaled primitive parts.
// Inputs must have nonnegative exponents. Result is primitive with positive leading coefficient.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Multiplier c such that c*p has coprime integer coefficients and positive leading coefficient.
Rat primitive_normalizer(const LaurentPoly& p);

}  // namespace ehall
