#include "doctest.h"

#include "ehall/autoforms.hpp"

#include <algorithm>

using namespace ehall;

namespace {

const EllipticCurve& e1() {
  static const EllipticCurve X = EllipticCurve::E1();
  return X;
}

TruncatedSeries<CurveScalar> unit_series(int order) {
  TruncatedSeries<CurveScalar> s(order);
  s[0] = CurveScalar(1);
  return s;
}

const ClosedPoint& point_of_degree(int f) { return e1().closed_points(f).front(); }

}  // namespace

TEST_CASE("T_(0,r) at a point") {
  const auto& X = e1();
  const ClosedPoint& x = point_of_degree(1);
  PointKey k{1, x.id};
  CHECK(T0r_at_point(X, 1, x) == Torsion::basis({{k, Partition{1}}}, 2));

  Torsion expect(2);
  CurveScalar pre = v_integer(2, 2).scaled(Rat(1, 2));
  expect.add_term({{k, Partition{2}}}, pre);
  expect.add_term({{k, Partition{1, 1}}}, pre.scaled(Rat(1 - 2)));
  CHECK(T0r_at_point(X, 2, x) == expect);

  CHECK(T0r_at_point(X, 1, point_of_degree(2)).is_zero());
  CHECK(v_integer(2, 1) == CurveScalar(1));
  CHECK(v_integer(2, 2) == CurveScalar::v(2) + CurveScalar::v(2).inverse());
}

TEST_CASE("twisted torsion averages") {
  const auto& X = e1();
  Character triv = X.characters(1).front();
  REQUIRE(triv.is_trivial());
  Torsion s(2);
  for (auto& x : X.closed_points(1)) s.add_term({{PointKey{1, x.id}, Partition{1}}}, CurveScalar(1));
  CHECK(T0_twisted(X, triv, 1) == s);

  // Primitive: the coproduct has only the two trivial tensor factors.
  for (auto& o : X.primitive_orbits(2)) {
    auto t = T0_twisted(X, o.rep(), 2);
    for (auto& [mn, c] : t.coproduct()) CHECK((mn.first.empty() || mn.second.empty()));
  }
}

TEST_CASE("green pairing of twisted averages") {
  const auto& X = e1();
  for (int n = 1; n <= 2; ++n) {
    auto os = X.primitive_orbits(n);
    for (auto& a : os)
      for (auto& b : os) {
        auto r = green_pair_twisted(X, a, b);
        CHECK(r.agree());
        CHECK(green_pair_twisted(X, b, a).brute_force == r.brute_force.conj());
        if (&a != &b) CHECK(r.brute_force.is_zero());
      }
  }
  auto os = X.primitive_orbits(1);
  CHECK(green_pair_twisted(X, os[0], os[0]).brute_force == CurveScalar(3));
  CurveScalar v = CurveScalar::v(2);
  auto os2 = X.primitive_orbits(2);
  CHECK(green_pair_twisted(X, os2[0], os2[0]).closed_form ==
        v.pow(2) * v_integer(2, 2) * CurveScalar(9) / (v.inverse() - v).scaled(Rat(4)));
}

TEST_CASE("Hecke characteristic polynomials and eigenvalues") {
  const auto& X = e1();
  for (int n = 1; n <= 3; ++n)
    for (auto& o : X.primitive_orbits(n))
      for (int f = 1; f <= 3; ++f)
        for (auto& x : X.closed_points(f)) {
          auto c = hecke_charpoly(X, o.rep(), x);
          REQUIRE(static_cast<int>(c.size()) == n + 1);
          CHECK(c[n] == CurveScalar(1));
          for (int l = 1; l <= n; ++l) CHECK(hecke_eigenvalue_elementary(X, o.rep(), x, l).agree());
        }

  const ClosedPoint& x1 = point_of_degree(1);
  Character r1 = X.primitive_orbits(1).front().rep();
  auto a = X.evaluate(r1, X.divisor_class_above(1, x1)).conj().scalar();
  auto c1 = hecke_charpoly(X, r1, x1);
  CHECK(c1[0] == -a);
  for (int r = 1; r <= 4; ++r) CHECK(power_sum_eigenvalue(X, r1, x1, r) == a.pow(r));

  Character r2 = X.primitive_orbits(2).front().rep();
  auto c2 = hecke_charpoly(X, r2, x1);
  auto a2 = frobenius_root_data(X, r2, x1);
  REQUIRE(a2.size() == 1);
  CHECK(c2[1].is_zero());
  CHECK(c2[0] == -a2[0]);
  CHECK(hecke_eigenvalue_elementary(X, r2, x1, 1).formula.is_zero());
  CHECK(hecke_eigenvalue_elementary(X, r2, x1, 2).formula == -a2[0]);
  CHECK(power_sum_eigenvalue(X, r2, x1, 1).is_zero());
}

TEST_CASE("T_(0,N) eigenvalues on cusp forms") {
  const auto& X = e1();
  for (int n = 1; n <= 2; ++n)
    for (int N = n; N <= 4; N += n)
      for (auto& r : X.primitive_orbits(n))
        for (auto& s : X.character_orbits(N)) {
          auto t = hecke_T0N_eigenvalue(X, r, s);
          CHECK(t.agree());
          if (!t.norm_match) CHECK(t.closed_form.is_zero());
        }
  auto r = X.primitive_orbits(1).front();
  CharacterOrbit same{1, {r.rep()}};
  CHECK(hecke_T0N_eigenvalue(X, r, same).closed_form == CurveScalar(3));
  Character nr = X.norm(r.rep(), 2);
  for (auto& s : X.character_orbits(2))
    if (std::find(s.members.begin(), s.members.end(), nr) != s.members.end())
      CHECK(hecke_T0N_eigenvalue(X, r, s).closed_form == v_integer(2, 2).scaled(Rat(9, 2)));
}

TEST_CASE("theta coefficients are grouplike") {
  const auto& X = e1();
  for (int n = 1; n <= 2; ++n) {
    Character rho = X.primitive_orbits(n).front().rep();
    int dmax = n == 1 ? 3 : 2;
    auto th = theta_coproduct_coefficients(X, rho, dmax);
    CHECK(th[0] == Torsion::one(2));
    CurveScalar v = CurveScalar::v(2);
    CHECK(th[1] == T0_twisted(X, rho, n).scaled((v.inverse() - v).scaled(Rat(n))));
    for (int d = 1; d <= dmax; ++d) {
      std::map<std::pair<TorsionMonomial, TorsionMonomial>, CurveScalar> rhs;
      for (int i = 0; i <= d; ++i)
        for (auto& [a, x] : th[i].terms())
          for (auto& [b, y] : th[d - i].terms()) rhs[{a, b}] += x * y;
      for (auto it = rhs.begin(); it != rhs.end();) it = it->second.is_zero() ? rhs.erase(it) : std::next(it);
      CHECK(th[d].coproduct() == rhs);
    }
  }
}

TEST_CASE("L-functions") {
  const auto& X = e1();
  const int order = 6;
  auto triv = X.characters(1).front();
  auto L = l_function(X, triv, triv, 3);
  CHECK(L[0] == CurveScalar(1));
  CHECK(L[1] == CurveScalar(3));
  CHECK(L[2] == CurveScalar(9));
  CHECK(L[3] == CurveScalar(21));

  for (int n = 1; n <= 2; ++n) {
    auto os = X.primitive_orbits(n);
    for (size_t i = 0; i < os.size(); ++i)
      for (size_t j = 0; j < os.size(); ++j) {
        auto Lp = l_function(X, os[i].rep(), os[j].rep(), order);
        CHECK(Lp == l_function_serial(X, os[i].rep(), os[j].rep(), order));
        CHECK(Lp == (i == j ? zeta_at_power(X, n, order) : unit_series(order)));
      }
  }

  // Euler product splits over disjoint sets of closed points.
  auto r = X.primitive_orbits(1)[1].rep();
  auto odd = [](const ClosedPoint& x) { return x.degree % 2 == 1; };
  auto even = [](const ClosedPoint& x) { return x.degree % 2 == 0; };
  CHECK(l_function(X, r, r, order, odd) * l_function(X, r, r, order, even) == l_function(X, r, r, order));

  for (int m = 1; m <= 2; ++m)
    for (auto& c : X.characters(m))
      if (!c.is_trivial()) CHECK(character_l_function(X, c, order) == unit_series(order));
  CHECK_THROWS(character_l_function(X, triv, order));
}

TEST_CASE("cusp census") {
  const auto& X = e1();
  long expect[] = {3, 3, 2};
  for (int n = 1; n <= 3; ++n) {
    auto c = cusp_census(X, n);
    CHECK(c.by_orbits == expect[n - 1]);
    CHECK(c.by_norm_exclusion == c.by_orbits);
    CHECK(c.closed_points == c.by_orbits);
    CHECK(cusp_dimension(X, n, 0) == c.by_orbits);
    CHECK(cusp_dimension(X, n, n) == c.by_orbits);
    if (n > 1) CHECK(cusp_dimension(X, n, 1) == 0);
  }
}

TEST_CASE("multiplicity one at low degree") {
  auto rep = multiplicity_one_ranks(e1(), 3);
  CHECK(rep.generators_per_degree == std::vector<long>{3, 6, 5});
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[2].monomials == 33);
  CHECK(rep.rows[2].dimension == 33);
  CHECK(rep.independent());
}
