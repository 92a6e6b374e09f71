#pragma once

#include "ehall/curve.hpp"
#include "ehall/dvr_hall.hpp"
#include "ehall/modp.hpp"
#include "ehall/series.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ehall {

// Closed point closed_points(degree)[index].
struct PointKey {
  int degree = 1;
  long index = 0;
  auto operator<=>(const PointKey&) const = default;
};

// Torsion sheaf sum_x O_x^{(lambda_x)}; points with empty partitions are omitted.
using TorsionMonomial = std::map<PointKey, Partition>;

std::string monomial_to_string(const TorsionMonomial& m);
int monomial_degree(const TorsionMonomial& m);

inline long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Element of the torsion Hall algebra of a curve over F_q: the restricted tensor product of the
// local Hall algebras at the closed points, local residue field size q^deg(x).
template <class S>
class TorsionElement {
 public:
  explicit TorsionElement(long q) : q_(q) {}
  static TorsionElement basis(const TorsionMonomial& m, long q, const S& c = S(1)) {
    TorsionElement r(q);
    r.add_term(m, c);
    return r;
  }
  static TorsionElement one(long q) { return basis({}, q); }

  long q() const { return q_; }
  const std::map<TorsionMonomial, S>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  S coefficient(const TorsionMonomial& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? S() : it->second;
  }

  void add_term(const TorsionMonomial& m, const S& c) {
    if (is_zero_of(c)) return;
    for (auto& [k, l] : m)
      if (l.empty()) throw std::invalid_argument("TorsionElement: empty partition in monomial");
    auto it = c_.find(m);
    if (it == c_.end()) {
      c_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (is_zero_of(it->second)) c_.erase(it);
    }
  }

  TorsionElement operator+(const TorsionElement& o) const {
    check(o);
    TorsionElement r = *this;
    for (auto& [m, c] : o.c_) r.add_term(m, c);
    return r;
  }
  TorsionElement operator-(const TorsionElement& o) const { return *this + o.scaled(S(-1)); }
  TorsionElement scaled(const S& s) const {
    TorsionElement r(q_);
    for (auto& [m, c] : c_) r.add_term(m, c * s);
    return r;
  }
  bool operator==(const TorsionElement& o) const { return q_ == o.q_ && c_ == o.c_; }

  TorsionElement operator*(const TorsionElement& o) const {
    check(o);
    TorsionElement r(q_);
    for (auto& [a, x] : c_)
      for (auto& [b, y] : o.c_) {
        S xy = x * y;
        for (auto& [m, g] : monomial_product(a, b)) r.add_term(m, scaled_by(xy, mpq_class(g)));
      }
    return r;
  }

  // Local coproducts tensored over the points.
  std::map<std::pair<TorsionMonomial, TorsionMonomial>, S> coproduct() const {
    std::map<std::pair<TorsionMonomial, TorsionMonomial>, S> out;
    for (auto& [m, c] : c_) {
      std::vector<std::pair<std::pair<TorsionMonomial, TorsionMonomial>, mpq_class>> acc{{{{}, {}}, mpq_class(1)}};
      for (auto& [key, lambda] : m) {
        long qx = ipow(q_, key.degree);
        auto local = DvrHallElement<mpq_class>::basis(lambda, qx).coproduct();
        std::vector<std::pair<std::pair<TorsionMonomial, TorsionMonomial>, mpq_class>> next;
        for (auto& [pre, w] : acc)
          for (auto& [mn, k] : local) {
            auto p = pre;
            if (!mn.first.empty()) p.first[key] = mn.first;
            if (!mn.second.empty()) p.second[key] = mn.second;
            next.emplace_back(std::move(p), w * k);
          }
        acc = std::move(next);
      }
      for (auto& [mn, w] : acc) {
        S v = scaled_by(c, w);
        auto it = out.find(mn);
        if (it == out.end()) out.emplace(mn, v); else it->second = it->second + v;
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = is_zero_of(it->second) ? out.erase(it) : std::next(it);
    return out;
  }

  // Green pairing, conjugate-linear in the second argument: ([F],[G]) = delta_{FG} / #Aut(F).
  S green_pair(const TorsionElement& o) const {
    check(o);
    S acc;
    for (auto& [m, c] : c_) {
      auto it = o.c_.find(m);
      if (it == o.c_.end()) continue;
      mpz_class aut = 1;
      for (auto& [key, lambda] : m) aut *= aut_count(lambda, ipow(q_, key.degree));
      acc = acc + scaled_by(S(c * conj_of(it->second)), mpq_class(1) / mpq_class(aut));
    }
    return acc;
  }

  template <class T, class F>
  TorsionElement<T> map_coefficients(F f) const {
    TorsionElement<T> r(q_);
    for (auto& [m, c] : c_) r.add_term(m, f(c));
    return r;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto& [m, c] : c_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*" + monomial_to_string(m);
    }
    return s;
  }

 private:
  void check(const TorsionElement& o) const {
    if (o.q_ != q_) throw std::invalid_argument("TorsionElement: mixed base fields");
  }

  // Product of two basis sheaves with integer structure constants.
  std::vector<std::pair<TorsionMonomial, long>> monomial_product(const TorsionMonomial& a,
                                                                 const TorsionMonomial& b) const {
    std::vector<std::pair<TorsionMonomial, long>> acc{{{}, 1}};
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      PointKey key;
      Partition la, lb;
      if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
        key = ia->first;
        la = ia->second;
        ++ia;
      } else if (ia == a.end() || ib->first < ia->first) {
        key = ib->first;
        lb = ib->second;
        ++ib;
      } else {
        key = ia->first;
        la = ia->second;
        lb = ib->second;
        ++ia;
        ++ib;
      }
      std::vector<std::pair<TorsionMonomial, long>> next;
      if (la.empty() || lb.empty()) {
        const Partition& l = la.empty() ? lb : la;
        for (auto& [m, g] : acc) {
          auto mm = m;
          mm[key] = l;
          next.emplace_back(std::move(mm), g);
        }
      } else {
        const auto& local = hall_product(la, lb, ipow(q_, key.degree));
        for (auto& [m, g] : acc)
          for (auto& [l, h] : local) {
            auto mm = m;
            mm[key] = l;
            next.emplace_back(std::move(mm), g * h);
          }
      }
      acc = std::move(next);
    }
    return acc;
  }

  long q_;
  std::map<TorsionMonomial, S> c_;
};

using Torsion = TorsionElement<CurveScalar>;

// [r]_v with v = q^(-1/2).
CurveScalar v_integer(long q, int r);

// T_{(0,r),x} = ([r]|x|/r) sum_{|lambda| = r/|x|} n_{u_x}(l(lambda)-1) O_x^{(lambda)}; 0 if |x| does not divide r.
Torsion T0r_at_point(const EllipticCurve& X, int r, const ClosedPoint& x);
// sum over closed points with |x| dividing N of rho~(x) T_{(0,N),x}; rho of any level.
Torsion T0_twisted(const EllipticCurve& X, const Character& rho, int N);

struct PairingResult {
  CurveScalar brute_force;
  CurveScalar closed_form;
  bool agree() const { return brute_force == closed_form; }
};
// (T^rho_{(0,n)}, T^sigma_{(0,n)}) through the local Green pairings, and
// v^n [n] |X(F_{q^n})| / ((v^-1 - v) n^2) when the orbits agree, 0 otherwise.
PairingResult green_pair_twisted(const EllipticCurve& X, const CharacterOrbit& rho, const CharacterOrbit& sigma);

// rho(O_{X_n}(-x_i'')) for the d = gcd(n, |x|) points of X_n above x.
std::vector<CurveScalar> frobenius_root_data(const EllipticCurve& X, const Character& rho, const ClosedPoint& x);
// Coefficients c_0..c_n of prod_i (T^{n/d} - rho(O(-x_i''))).
std::vector<CurveScalar> hecke_charpoly(const EllipticCurve& X, const Character& rho, const ClosedPoint& x);

struct EigenvalueRoutes {
  CurveScalar formula;   // the closed expression in e_{l'} of the root data
  CurveScalar charpoly;  // q_x^{l(n-l)/2} e_l read off the characteristic polynomial
  CurveScalar newton;    // e_l from the power-sum eigenvalues by Newton's identities
  bool agree() const { return formula == charpoly && formula == newton; }
};
// Eigenvalue of the Hecke operator of O_x^{(1^l)}, 1 <= l <= n.
EigenvalueRoutes hecke_eigenvalue_elementary(const EllipticCurve& X, const Character& rho, const ClosedPoint& x, int l);
// Phi_{x,f}(p_r) = q_x^{r(n-1)/2} (n/d) sum_i rho(O(-x_i'))^{r d/n}, or 0 when r d/n is not integral.
CurveScalar power_sum_eigenvalue(const EllipticCurve& X, const Character& rho, const ClosedPoint& x, int r);

struct T0NRoutes {
  CurveScalar character_sum;  // ([N]n/N^2) q^{N(n-1)/2} |X(F_{q^N})| sum_i <Fr^i sigma, Norm rho>
  CurveScalar local_sum;      // sum_x sigma~(x) [N] Phi_{x,f}(p_{N/|x|}) / (N/|x|)
  CurveScalar closed_form;    // ([N]/N) q^{N(n-1)/2} |X(F_{q^N})| if sigma~ = Norm rho~, else 0
  bool norm_match = false;
  bool agree() const { return character_sum == closed_form && local_sum == closed_form; }
};
// Eigenvalue of T^sigma_{(0,N)} on the cusp form of rho (level n, n | N = sigma.level).
T0NRoutes hecke_T0N_eigenvalue(const EllipticCurve& X, const CharacterOrbit& rho, const CharacterOrbit& sigma);

// theta_0..theta_{dmax} of exp(n (v^-1 - v) sum_l T^{Norm_n^{nl} rho}_{(0,nl)} s^l).
std::vector<Torsion> theta_coproduct_coefficients(const EllipticCurve& X, const Character& rho, int dmax);

// log-coefficients of L(f,g,t) contributed by one closed point.
std::vector<CurveScalar> euler_log_contribution(const EllipticCurve& X, const Character& rho1, const Character& rho2,
                                                const ClosedPoint& x, int order);
// L(f,g,t) = exp(sum_x sum_k p_k(z_x(f))^* p_k(z_x(g)) t^{k|x|} / k), truncated. Parallel over closed
// points; the per-point terms are summed in enumeration order.
TruncatedSeries<CurveScalar> l_function(const EllipticCurve& X, const Character& rho1, const Character& rho2,
                                        int order, const std::function<bool(const ClosedPoint&)>& keep = {});
// Same product, single-threaded.
TruncatedSeries<CurveScalar> l_function_serial(const EllipticCurve& X, const Character& rho1, const Character& rho2,
                                               int order, const std::function<bool(const ClosedPoint&)>& keep = {});
// zeta_{X_n}(t^n) truncated at t^order.
TruncatedSeries<CurveScalar> zeta_at_power(const EllipticCurve& X, int n, int order);

// prod_y (1 - rho(O_Y(y)) t^{|y|}) over closed points y of Y = X_m, m = rho.level; rho nontrivial.
TruncatedSeries<CurveScalar> character_l_function(const EllipticCurve& X, const Character& rho, int order);

struct CuspCensus {
  int n = 1;
  long by_orbits = 0;          // #P_n from Frobenius orbits of size n
  long by_norm_exclusion = 0;  // characters outside the norm images, divided by n
  long closed_points = 0;      // closed points of degree n
};
CuspCensus cusp_census(const EllipticCurve& X, int n);
// dim of cusp forms of rank n and degree d: #P_n when n | d, else 0.
long cusp_dimension(const EllipticCurve& X, int n, int d);

struct IndependenceRow {
  int degree = 0;
  long monomials = 0;  // monomials of this degree in the generators T^rho_{(0,d)}
  long dimension = 0;  // dimension of the degree-D part of the torsion Hall algebra
  long rank = 0;       // rank of the monomials, mod p
  long prime = 0;
};
struct IndependenceReport {
  std::vector<long> generators_per_degree;  // index d - 1
  std::vector<IndependenceRow> rows;
  bool independent() const {
    for (auto& r : rows)
      if (r.rank != r.monomials) return false;
    return true;
  }
};
// Rank of all monomials of degree <= max_degree in {T^rho_{(0,d)} : rho in P_n, n | d}.
IndependenceReport multiplicity_one_ranks(const EllipticCurve& X, int max_degree);

}  // namespace ehall
