#pragma once

#include "ehall/backends.hpp"
#include "ehall/lattice.hpp"
#include "ehall/scalar_ops.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ehall {

// A product t_{x_1} ... t_{x_r}; a normal-form word is sorted by word_less.
using Word = std::vector<LatticePoint>;

inline bool is_normal_word(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (word_less(w[i + 1], w[i])) return false;
  return true;
}

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (auto& x : w) s += "t" + x.to_string();
  return s;
}

inline LatticePoint word_total(const Word& w) {
  LatticePoint t;
  for (auto& x : w) t = t + x;
  return t;
}

// Raised when the commutator recursion revisits a pair it is still computing.
class RecursionCycle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite combination of normal-form words in the twisted algebra of level n.
template <class S>
class EllipticElement {
 public:
  EllipticElement() = default;
  explicit EllipticElement(int n) : n_(n) {}
  static EllipticElement monomial(int n, Word w, const S& c = S(1)) {
    if (!is_normal_word(w)) throw std::invalid_argument("EllipticElement: word not in normal form");
    EllipticElement e(n);
    e.add_term(w, c);
    return e;
  }

  int n() const { return n_; }
  const std::map<Word, S>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  S coefficient(const Word& w) const {
    auto it = c_.find(w);
    return it == c_.end() ? S() : it->second;
  }
  void add_term(const Word& w, const S& c) {
    if (is_zero_of(c)) return;
    auto it = c_.find(w);
    if (it == c_.end()) {
      c_.emplace(w, c);
    } else {
      it->second = it->second + c;
      if (is_zero_of(it->second)) c_.erase(it);
    }
  }

  EllipticElement operator+(const EllipticElement& o) const {
    check(o);
    EllipticElement r = *this;
    for (auto& [w, c] : o.c_) r.add_term(w, c);
    return r;
  }
  EllipticElement operator-(const EllipticElement& o) const { return *this + o.scaled(S(-1)); }
  EllipticElement& operator+=(const EllipticElement& o) { return *this = *this + o; }
  EllipticElement scaled(const S& s) const {
    EllipticElement r(n_);
    if (is_zero_of(s)) return r;
    for (auto& [w, c] : c_) r.add_term(w, c * s);
    return r;
  }
  bool operator==(const EllipticElement& o) const { return n_ == o.n_ && c_ == o.c_; }

  // Classes of the homogeneous components.
  std::set<LatticePoint> gradings() const {
    std::set<LatticePoint> g;
    for (auto& [w, c] : c_) g.insert(word_total(w));
    return g;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto& [w, c] : c_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*" + word_to_string(w);
    }
    return s;
  }

 private:
  void check(const EllipticElement& o) const {
    if (o.n_ != n_) throw std::invalid_argument("EllipticElement: mixed twist levels");
  }
  int n_ = 1;
  std::map<Word, S> c_;
};

// The algebra generated by t_x, x in Z^2 \ 0, with the collinear and triangle relations, at twist
// level n. Products are reduced to normal-form words by swapping adjacent out-of-order
// generators; commutators of generators come from the triangle relation directly or, when
// it does not apply, by writing one factor through a split x + w with an empty triangle and
// expanding with the Jacobi identity. Results are memoized; one instance per thread.
template <class Backend>
class EllipticHallAlgebra {
 public:
  using S = typename Backend::Scalar;
  using Element = EllipticElement<S>;

  EllipticHallAlgebra(Backend backend, int n) : b_(std::move(backend)), n_(n) {
    if (n < 1) throw std::invalid_argument("EllipticHallAlgebra: n must be >= 1");
    S nu = b_.nu();
    kappa_ = (nu.inverse() - nu) * S(n);
  }

  int n() const { return n_; }
  const Backend& backend() const { return b_; }
  // n (nu^-1 - nu)
  const S& kappa() const { return kappa_; }
  // Test mode: negates the triangle relation whenever its second vector is not primitive.
  void set_sign_flip(bool on) {
    if (on != flip_) clear_cache();
    flip_ = on;
  }
  bool sign_flip() const { return flip_; }
  void clear_cache() {
    word_memo_.clear();
    comm_memo_.clear();
  }
  size_t cached_commutators() const { return comm_memo_.size(); }

  Element one() const { return Element::monomial(n_, {}); }
  Element generator(const LatticePoint& x) const {
    if (x.is_zero()) throw std::invalid_argument("generator: origin is not a generator");
    return Element::monomial(n_, {x});
  }

  // Coefficient of s^i in exp(kappa sum_{k>=1} t_{k z0} s^k).
  Element theta(const LatticePoint& z0, int i) const { return theta_scaled(z0, i, false); }
  // theta_z for z = delta(z) z0.
  Element theta_of(const LatticePoint& z) const { return theta(primitive_direction(z), static_cast<int>(delta(z))); }

  // Right side of the triangle relation: [t_y, t_x] for delta(x) = 1 and an empty triangle.
  Element commutator_basic(const LatticePoint& x, const LatticePoint& y) const {
    if (x.is_zero() || y.is_zero()) throw std::invalid_argument("commutator_basic: zero vector");
    if (proportional(x, y)) throw std::invalid_argument("commutator_basic: proportional pair");
    if (delta(x) != 1) throw std::invalid_argument("commutator_basic: x must be primitive");
    if (interior_points(x, y) != 0) throw std::invalid_argument("commutator_basic: triangle has interior points");
    LatticePoint z = x + y;
    return theta_scaled(primitive_direction(z), static_cast<int>(delta(z)), true).scaled(relation_coefficient(x, y));
  }

  // [t_a, t_b] in normal form.
  Element commutator(const LatticePoint& a, const LatticePoint& b) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("commutator: zero vector");
    if (proportional(a, b)) return Element(n_);
    bool swap = word_less(b, a);
    LatticePoint f = swap ? b : a, s = swap ? a : b;
    // shears fix (0,1) and (0,-1) and preserve orientation, hence the normal-form order
    long k = 0;
    const LatticePoint& ref = f.q != 0 ? f : s;
    long m = std::labs(ref.q);
    long r = ((ref.p % m) + m) % m;
    k = (r - ref.p) / ref.q;
    LatticePoint fs = shear(f, k), ss = shear(s, k);
    Element c = commutator_normalized(fs, ss);
    if (k != 0) c = shear_element(c, -k);
    return swap ? c.scaled(S(-1)) : c;
  }

  // [t_a, t_b] forcing the split route on a (must have a split against b).
  Element commutator_by_split(const LatticePoint& a, const LatticePoint& b) {
    auto cands = splits(a, b);
    if (cands.empty()) throw std::invalid_argument("commutator_by_split: no admissible split");
    return split_commutator(a, b, cands.front());
  }

  Element commutator(const Element& x, const Element& y) { return multiply(x, y) - multiply(y, x); }

  // Normal form of c * t_{w_1} ... t_{w_r}.
  Element straighten(const Word& w, const S& c = S(1)) {
    for (auto& x : w)
      if (x.is_zero()) throw std::invalid_argument("straighten: zero generator");
    return normalize(w).scaled(c);
  }

  Element multiply(const Element& x, const Element& y) {
    if (x.n() != n_ || y.n() != n_) throw std::invalid_argument("multiply: mixed twist levels");
    Element r(n_);
    for (auto& [u, a] : x.terms())
      for (auto& [v, b] : y.terms()) {
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        S ab = a * b;
        Element nf = normalize(w);
        for (auto& [m, c] : nf.terms()) r.add_term(m, c * ab);
      }
    return r;
  }

  Element sl2_act(const Matrix2& g, const Element& x) {
    if (g.determinant() != 1) throw std::invalid_argument("sl2_act: determinant must be 1");
    Element r(n_);
    for (auto& [w, c] : x.terms()) {
      Word gw;
      for (auto& s : w) gw.push_back(sl2_apply(g, s));
      Element nf = normalize(gw);
      for (auto& [m, d] : nf.terms()) r.add_term(m, d * c);
    }
    return r;
  }

  // Depth limit for nested reductions; exceeding it means the rewriting failed to terminate.
  void set_depth_limit(int d) { depth_limit_ = d; }

 private:
  struct DepthGuard {
    explicit DepthGuard(EllipticHallAlgebra& a) : a_(a) {
      if (++a_.depth_ > a_.depth_limit_) {
        --a_.depth_;
        throw std::runtime_error("straighten: recursion depth exceeded");
      }
    }
    ~DepthGuard() { --a_.depth_; }
    EllipticHallAlgebra& a_;
  };

  static LatticePoint shear(const LatticePoint& x, long k) { return {x.q, x.p + k * x.q}; }

  Element shear_element(const Element& e, long k) const {
    Element r(n_);
    for (auto& [w, c] : e.terms()) {
      Word s;
      for (auto& x : w) s.push_back(shear(x, k));
      r.add_term(s, c);
    }
    return r;
  }

  // eps_{x,y} c_{n delta(y)}, the coefficient in [t_y, t_x] = coef * theta_{x+y} / kappa.
  S relation_coefficient(const LatticePoint& x, const LatticePoint& y) const {
    S c = b_.c(static_cast<int>(n_ * delta(y)));
    int e = epsilon(x, y);
    if (flip_ && delta(y) >= 2) e = -e;
    return e > 0 ? c : c * S(-1);
  }

  // theta_{i z0}, divided by kappa when over_kappa (then the t_{i z0} term has coefficient 1).
  Element theta_scaled(const LatticePoint& z0, int i, bool over_kappa) const {
    if (z0.is_zero() || delta(z0) != 1) throw std::invalid_argument("theta: direction must be primitive");
    if (i < 0) throw std::invalid_argument("theta: index must be >= 0");
    Element r(n_);
    if (i == 0) {
      if (over_kappa) throw std::invalid_argument("theta: theta_0 / kappa is not used");
      r.add_term({}, S(1));
      return r;
    }
    for (auto& mu : Partition::all(i)) {
      int len = mu.length() - (over_kappa ? 1 : 0);
      S coef = kappa_.pow(len);
      mpz_class denom = 1;
      auto mult = mu.multiplicities();
      for (size_t j = 1; j < mult.size(); ++j)
        for (int f = 2; f <= mult[j]; ++f) denom *= f;
      Word w;
      for (int part : mu.parts()) w.push_back(z0 * part);
      r.add_term(w, scaled_by(coef, mpq_class(1) / mpq_class(denom)));
    }
    return r;
  }

  Element normalize(const Word& w) {
    size_t i = 0;
    while (i + 1 < w.size() && !word_less(w[i + 1], w[i])) ++i;
    if (i + 1 >= w.size()) return Element::monomial(n_, w);
    auto it = word_memo_.find(w);
    if (it != word_memo_.end()) return it->second;
    DepthGuard guard(*this);
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    Element r = normalize(swapped);
    if (!proportional(w[i], w[i + 1])) {
      Element c = commutator(w[i], w[i + 1]);
      for (auto& [m, coef] : c.terms()) {
        Word v(w.begin(), w.begin() + i);
        v.insert(v.end(), m.begin(), m.end());
        v.insert(v.end(), w.begin() + i + 2, w.end());
        Element nf = normalize(v);
        for (auto& [u, d] : nf.terms()) r.add_term(u, d * coef);
      }
    }
    word_memo_.emplace(w, r);
    return r;
  }

  // a before b in word order, both already sheared.
  Element commutator_normalized(const LatticePoint& a, const LatticePoint& b) {
    auto key = std::make_pair(a, b);
    auto it = comm_memo_.find(key);
    if (it != comm_memo_.end()) return it->second;
    if (in_progress_.count(key)) throw RecursionCycle("commutator cycle at " + a.to_string() + "," + b.to_string());
    in_progress_.insert(key);
    struct Erase {
      std::set<std::pair<LatticePoint, LatticePoint>>& s;
      std::pair<LatticePoint, LatticePoint> k;
      ~Erase() { s.erase(k); }
    } erase{in_progress_, key};
    DepthGuard guard(*this);
    Element r = commutator_raw(a, b);
    comm_memo_.emplace(key, r);
    return r;
  }

  Element commutator_raw(const LatticePoint& a, const LatticePoint& b) {
    long ia = -1;
    if (delta(b) == 1) {
      ia = interior_points(b, a);
      if (ia == 0) return commutator_basic(b, a);
    }
    if (delta(a) == 1) {
      if (ia < 0) ia = interior_points(a, b);
      if (ia == 0) return commutator_basic(a, b).scaled(S(-1));
    }
    // Split candidates for both factors, preferred factor first.
    auto sa = splits(a, b), sb = splits(b, a);
    bool a_first;
    if (delta(a) != delta(b)) {
      a_first = delta(a) < delta(b);
    } else {
      a_first = sb.empty() || (!sa.empty() && split_cost(a, b, sa.front()) <= split_cost(b, a, sb.front()));
    }
    std::vector<std::pair<bool, LatticePoint>> order;
    for (int pass = 0; pass < 2; ++pass) {
      bool use_a = (pass == 0) == a_first;
      for (auto& x : use_a ? sa : sb) order.emplace_back(use_a, x);
    }
    if (order.empty()) throw std::logic_error("commutator: no admissible split for " + a.to_string() + "," + b.to_string());
    for (size_t k = 0; k < order.size(); ++k) {
      try {
        if (order[k].first) return split_commutator(a, b, order[k].second);
        return split_commutator(b, a, order[k].second).scaled(S(-1));
      } catch (const RecursionCycle&) {
        if (k + 1 == order.size()) throw;
      }
    }
    throw std::logic_error("unreachable");
  }

  static long split_cost(const LatticePoint& z, const LatticePoint& y, const LatticePoint& x) {
    return std::max(std::labs(det(x, y)), std::labs(det(z - x, y)));
  }

  // Primitive x with |det(x, z0)| = 1 (so z = x + w with w primitive and an empty triangle)
  // and det(x, y) strictly between 0 and det(z, y); sorted by closeness to the midpoint.
  std::vector<LatticePoint> splits(const LatticePoint& z, const LatticePoint& y) const {
    LatticePoint z0 = primitive_direction(z);
    long k = delta(z);
    // x1 with det(z0, x1) = 1
    long s = 0, t = 0;
    long g = ext_gcd(z0.q, z0.p, s, t);  // z0.q s + z0.p t = g = +-1
    LatticePoint x1{-t * g, s * g};
    long d0 = det(z0, y);
    long D = k * d0;
    long ad = std::labs(d0);
    long s0 = d0 > 0 ? 1 : -1;
    std::vector<LatticePoint> out;
    for (long sign : {1L, -1L}) {
      LatticePoint base = x1 * sign;
      long c = det(base, y) * s0;  // det(x, y) s0 = c + j |d0|
      long jlo = floor_div(-c, ad) + 1;
      long jhi = ceil_div(k * ad - c, ad) - 1;
      for (long j = jlo; j <= jhi; ++j) out.push_back(base + z0 * j);
    }
    std::sort(out.begin(), out.end(), [&](const LatticePoint& u, const LatticePoint& v) {
      long du = std::labs(2 * det(u, y) - D), dv = std::labs(2 * det(v, y) - D);
      if (du != dv) return du < dv;
      return u < v;
    });
    return out;
  }

  // [t_z, t_y] through t_z = [t_w, t_x] / coef - L_z with w = z - x.
  Element split_commutator(const LatticePoint& z, const LatticePoint& y, const LatticePoint& x) {
    LatticePoint w = z - x;
    S inv = relation_coefficient(x, w).inverse();
    Element tx = generator(x), tw = generator(w), ty = generator(y);
    Element cxy = commutator(x, y), cwy = commutator(w, y);
    Element r = commutator(tw, cxy) - commutator(tx, cwy);
    r = r.scaled(inv);
    if (delta(z) > 1) {
      Element lz = theta_scaled(primitive_direction(z), static_cast<int>(delta(z)), true) - generator(z);
      r = r - commutator(lz, ty);
    }
    return r;
  }

  static long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static long ceil_div(long a, long b) { return -floor_div(-a, b); }
  static long ext_gcd(long a, long b, long& s, long& t) {
    long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
      long q = floor_div(a, b);
      long r = a - q * b;
      a = b;
      b = r;
      long ns = s0 - q * s1, nt = t0 - q * t1;
      s0 = s1;
      s1 = ns;
      t0 = t1;
      t1 = nt;
    }
    s = s0;
    t = t0;
    return a;
  }

  Backend b_;
  int n_;
  S kappa_;
  bool flip_ = false;
  int depth_ = 0;
  int depth_limit_ = 4000;
  std::map<Word, Element> word_memo_;
  std::map<std::pair<LatticePoint, LatticePoint>, Element> comm_memo_;
  std::set<std::pair<LatticePoint, LatticePoint>> in_progress_;
};

struct RelationCheck {
  std::string name;
  bool ok = false;
  // Straightened value of lhs - rhs when the check fails.
  std::string residual;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  size_t failures() const {
    size_t f = 0;
    for (auto& c : checks) f += c.ok ? 0 : 1;
    return f;
  }
  bool all_ok() const { return failures() == 0; }
};

namespace detail {

template <class A>
void record(RelationReport& rep, std::string name, const typename A::Element& residual) {
  rep.checks.push_back({std::move(name), residual.is_zero(), residual.is_zero() ? "" : residual.to_string()});
}

// Coefficients k_0..k_3 of chi_n(z, w) = sum_j k_j z^{3-j} w^j.
template <class Backend>
std::vector<typename Backend::Scalar> chi_coefficients(const Backend& b, int n) {
  using S = typename Backend::Scalar;
  S e1 = b.sigma_pow_sum(n) + b.sigma_prod_pow(-n);
  S e2 = b.sigma_prod_pow(n) + b.sigma_pow_sum(-n);
  return {S(1), S(0) - e1, e2, S(-1)};
}

// u_{(1,d)} = (nu^-1 - nu) alpha_n^-1 t_{(1,d)}
template <class Backend>
typename EllipticHallAlgebra<Backend>::Element u_generator(const EllipticHallAlgebra<Backend>& a, long d) {
  auto nu = a.backend().nu();
  return a.generator({1, d}).scaled((nu.inverse() - nu) * a.backend().alpha(a.n()).inverse());
}

}  // namespace detail

// Coefficient identities of
//   chi_n(z,w) T1(z) T1(w) = chi_{-n}(z,w) T1(w) T1(z)          for z^a w^b, |a|, |b| <= window,
//   chi_n(z,w) T0(z) T1(w) = chi_{-n}(z,w) T1(w) T0(z)          for 0 <= a <= window, |b| <= window,
//   T0(z) T0(w) = T0(w) T0(z)                                   for 0 <= a, b <= window,
// with T1(z) = sum u_{(1,d)} z^d, T0(z) = sum_l theta_{(0,l)} z^l and chi_{-n}(z,w) = -chi_n(w,z).
template <class Backend>
RelationReport verify_quadratic_relations(EllipticHallAlgebra<Backend>& a, int window) {
  using A = EllipticHallAlgebra<Backend>;
  using E = typename A::Element;
  auto k = detail::chi_coefficients(a.backend(), a.n());
  auto u = [&](long d) { return detail::u_generator(a, d); };
  auto th = [&](long l) { return l < 0 ? E(a.n()) : a.theta({0, 1}, static_cast<int>(l)); };
  RelationReport rep;
  for (long x = -window; x <= window; ++x)
    for (long y = -window; y <= window; ++y) {
      E r(a.n());
      for (int j = 0; j < 4; ++j) {
        r += a.multiply(u(x - 3 + j), u(y - j)).scaled(k[j]);
        r += a.multiply(u(y - 3 + j), u(x - j)).scaled(k[j]);
      }
      detail::record<A>(rep, "T1T1[" + std::to_string(x) + "," + std::to_string(y) + "]", r);
    }
  for (long x = 0; x <= window; ++x)
    for (long y = -window; y <= window; ++y) {
      E r(a.n());
      for (int j = 0; j < 4; ++j) {
        r += a.multiply(th(x - 3 + j), u(y - j)).scaled(k[j]);
        r += a.multiply(u(y - 3 + j), th(x - j)).scaled(k[j]);
      }
      detail::record<A>(rep, "T0T1[" + std::to_string(x) + "," + std::to_string(y) + "]", r);
    }
  for (long x = 0; x <= window; ++x)
    for (long y = 0; y <= window; ++y)
      detail::record<A>(rep, "T0T0[" + std::to_string(x) + "," + std::to_string(y) + "]",
                        a.multiply(th(x), th(y)) - a.multiply(th(y), th(x)));
  return rep;
}

// Res_{z,y,w} (zyw)^m (z+w)(y^2-zw) T1(z)T1(y)T1(w), straightened.
template <class Backend>
typename EllipticHallAlgebra<Backend>::Element cubic_residue(EllipticHallAlgebra<Backend>& a, long m) {
  using E = typename EllipticHallAlgebra<Backend>::Element;
  // (z+w)(y^2-zw) = z y^2 - z^2 w + w y^2 - z w^2, exponents of (z, y, w)
  const struct {
    int z, y, w, sign;
  } mono[] = {{1, 2, 0, 1}, {2, 0, 1, -1}, {0, 2, 1, 1}, {1, 0, 2, -1}};
  E r(a.n());
  for (auto& t : mono) {
    // the z^-1 y^-1 w^-1 coefficient picks u_{(1,d1)} u_{(1,d2)} u_{(1,d3)} with d = -1 - m - exponent
    E p = a.multiply(a.multiply(detail::u_generator(a, -1 - m - t.z), detail::u_generator(a, -1 - m - t.y)),
                     detail::u_generator(a, -1 - m - t.w));
    r += p.scaled(typename Backend::Scalar(t.sign));
  }
  return r;
}

template <class Backend>
bool verify_cubic_relation(EllipticHallAlgebra<Backend>& a, long m) {
  return cubic_residue(a, m).is_zero();
}

// The collinear and triangle relations for generators with coordinates in [-bound, bound].
// For the triangle relation with non-primitive y the commutator is also recomputed by
// splitting y, which avoids the rule being checked.
template <class Backend>
RelationReport verify_defining_relations(EllipticHallAlgebra<Backend>& a, long bound) {
  using A = EllipticHallAlgebra<Backend>;
  using E = typename A::Element;
  std::vector<LatticePoint> pts;
  for (long q = -bound; q <= bound; ++q)
    for (long p = -bound; p <= bound; ++p)
      if (q != 0 || p != 0) pts.push_back({q, p});
  RelationReport rep;
  for (auto& x : pts)
    for (auto& y : pts) {
      std::string tag = x.to_string() + "," + y.to_string();
      if (proportional(x, y)) {
        if (!(x < y)) continue;
        detail::record<A>(rep, "collinear" + tag, a.commutator(a.generator(x), a.generator(y)));
        continue;
      }
      if (delta(x) != 1 || interior_points(x, y) != 0) continue;
      E rhs = a.commutator_basic(x, y);
      detail::record<A>(rep, "triangle" + tag, a.commutator(a.generator(y), a.generator(x)) - rhs);
      if (delta(y) >= 2) detail::record<A>(rep, "triangle-split" + tag, a.commutator_by_split(y, x) - rhs);
    }
  return rep;
}

}  // namespace ehall
