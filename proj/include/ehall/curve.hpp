#pragma once

#include "ehall/curve_scalar.hpp"
#include "ehall/finite_field.hpp"
#include "ehall/series.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ehall {

using Elem = FiniteField::Elem;

struct Point {
  bool inf = true;
  Elem x = 0;
  Elem y = 0;
  static Point infinity() { return {}; }
  static Point affine(Elem x, Elem y) { return {false, x, y}; }
  bool operator==(const Point& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
  bool operator<(const Point& o) const {
    if (inf != o.inf) return inf;
    if (inf) return false;
    return x != o.x ? x < o.x : y < o.y;
  }
};

// Root of unity exp(2 pi i num/den), kept as a reduced fraction in [0, 1).
struct RootOfUnity {
  long num = 0;
  long den = 1;
  static RootOfUnity make(long num, long den);
  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity conj() const { return make(-num, den); }
  RootOfUnity pow(long e) const { return make(num * e, den); }
  bool operator==(const RootOfUnity& o) const { return num == o.num && den == o.den; }
  bool is_one() const { return num == 0; }
  CurveScalar scalar() const { return CurveScalar::root_of_unity(num, static_cast<int>(den)); }
};

// Finite abelian group X(F_{q^n}) as Z/d_1 x ... x Z/d_k (d_1 | d_2 | ...), with a
// discrete-log table.
struct PicardGroup {
  int level = 1;
  std::vector<Point> points;  // sorted
  std::vector<Point> generators;
  std::vector<long> divisors;
  std::vector<std::vector<long>> dlog;  // per point index
  long exponent = 1;

  long index_of(const Point& P) const;
  const std::vector<long>& exponents(const Point& P) const { return dlog[index_of(P)]; }
  long order() const { return static_cast<long>(points.size()); }
};

struct Character {
  int level = 1;
  std::vector<long> c;  // c_i mod d_i
  bool operator==(const Character& o) const { return level == o.level && c == o.c; }
  bool operator<(const Character& o) const { return level != o.level ? level < o.level : c < o.c; }
  bool is_trivial() const;
  std::string to_string() const;
};

struct ClosedPoint {
  int degree = 1;
  std::vector<Point> orbit;  // geometric points at level `degree`, orbit[i] = Fr^i(orbit[0])
  const Point& rep() const { return orbit.front(); }
  long id = 0;  // position in closed_points() enumeration
};

struct CharacterOrbit {
  int level = 1;
  std::vector<Character> members;  // members[i] = Fr^i(members[0])
  const Character& rep() const { return members.front(); }
  int size() const { return static_cast<int>(members.size()); }
};

// Weierstrass curve y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q.
// Coefficients are F_q elements in FiniteField encoding (plain residues when q is prime).
class EllipticCurve {
 public:
  EllipticCurve(long q, std::array<long, 5> a);
  // Parses key=value lines: q, a1, a2, a3, a4, a6 (missing coefficients are 0, '#' comments).
  static EllipticCurve from_config(const std::string& text);
  static EllipticCurve E1();  // y^2 + y = x^3 over F_2
  static EllipticCurve E2();  // y^2 = x^3 + x + 1 over F_5

  long q() const { return q_; }
  long characteristic() const { return p_; }
  int base_degree() const { return e_; }
  const std::array<long, 5>& coefficients() const { return a_; }
  std::string describe() const;
  const FiniteField& field(int n) const;
  Elem coefficient(int i, int n) const;  // i in {1,2,3,4,6}
  Elem discriminant() const;

  // Frobenius trace a = q + 1 - #X(F_q), from enumeration.
  long trace() const;
  // t_n via the recursion t_n = a t_{n-1} - q t_{n-2}.
  Int trace_power(int n) const;
  Int count_from_trace(int n) const;

  bool on_curve(int n, const Point& P) const;
  // Parallel over x-slices; sorted.
  std::vector<Point> enumerate_points(int n) const;
  // Exhaustive (x, y) scan; single-threaded oracle.
  std::vector<Point> enumerate_points_reference(int n) const;
  const std::vector<Point>& points(int n) const;

  Point neg(int n, const Point& P) const;
  Point add(int n, const Point& P, const Point& Q) const;
  Point mul(int n, const Point& P, long k) const;
  // Coordinates raised to q^j.
  Point frobenius(int n, const Point& P, int j = 1) const;
  Point embed(int m, int n, const Point& P) const;
  bool defined_over(int m, int n, const Point& P) const;
  Point descend(int n, int m, const Point& P) const;
  // Norm from level n down to level m (m | n): sum of Fr^{m i}(P), i < n/m.
  Point norm(int m, int n, const Point& P) const;

  const PicardGroup& picard(int n) const;
  std::vector<Character> characters(int n) const;
  RootOfUnity evaluate(const Character& rho, const Point& P) const;
  Character frobenius(const Character& rho, int j = 1) const;
  // Character of level n from its values on the level-n generators.
  Character character_from_values(int n, const std::vector<RootOfUnity>& vals) const;
  // chi o Norm_m^n for chi of level m.
  Character norm(const Character& chi, int n) const;
  std::vector<CharacterOrbit> character_orbits(int n) const;
  std::vector<CharacterOrbit> primitive_orbits(int n) const;
  // Primitive orbits by excluding norms of all characters of proper divisor levels.
  std::vector<Character> primitive_by_norm_exclusion(int n) const;

  // Closed points of degree exactly d; cached.
  const std::vector<ClosedPoint>& closed_points(int d) const;

  // Point of X(F_{q^n}) representing O_{X_n}(x') - deg(x') x_0 for the i-th point x'
  // of X_n above x (0 <= i < gcd(n, |x|)).
  Point divisor_class_above(int n, const ClosedPoint& x, int i = 0) const;
  // rho~(x) = (1/n) sum_i rho(Fr^i O(x')); choice of x' selectable for testing.
  CurveScalar tilde_rho(const Character& rho, const ClosedPoint& x, int above = 0) const;

  // Zeta function of X_n: numerator 1 - t_n T + q^n T^2 over (1-T)(1-q^n T), expanded.
  std::vector<Int> zeta_series(int n, int order) const;

 private:
  long q_;
  long p_;
  int e_;
  std::array<long, 5> a_;
  // Lazily filled, guarded; copies of a curve share it.
  struct Cache {
    std::mutex mu;
    std::map<int, std::shared_ptr<const std::vector<Point>>> points;
    std::map<int, std::shared_ptr<const PicardGroup>> picard;
    std::map<int, std::shared_ptr<const std::vector<ClosedPoint>>> closed;
    long trace = 0;
    bool have_trace = false;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace ehall
