#include "doctest.h"

#include "ehall/curve.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace ehall;

namespace {

int mobius(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  if (n > 1) r = -r;
  return r;
}

}  // namespace

TEST_CASE("finite fields") {
  for (auto [p, k] : {std::pair<long, int>{2, 1}, {2, 4}, {2, 6}, {3, 2}, {5, 3}, {2, 12}}) {
    const FiniteField& F = FiniteField::get(p, k);
    CHECK(F.size() == static_cast<long>(std::pow(p, k)));
    std::mt19937 rng(1);
    std::uniform_int_distribution<long> d(1, F.size() - 1);
    for (int t = 0; t < 200; ++t) {
      Elem a = d(rng), b = d(rng), c = d(rng);
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.frobenius(F.mul(a, b), 1) == F.mul(F.frobenius(a, 1), F.frobenius(b, 1)));
      CHECK(F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1)));
      CHECK(F.frobenius(a, k) == a);
    }
    // embeddings are ring maps and compose along towers
    for (int j = 1; j < k; ++j) {
      if (k % j) continue;
      const FiniteField& S = FiniteField::get(p, j);
      for (long a = 0; a < std::min<long>(S.size(), 64); ++a)
        for (long b = 0; b < std::min<long>(S.size(), 16); ++b) {
          CHECK(F.embed(S, S.mul(a, b)) == F.mul(F.embed(S, a), F.embed(S, b)));
          CHECK(F.embed(S, S.add(a, b)) == F.add(F.embed(S, a), F.embed(S, b)));
          CHECK(F.descend(S, F.embed(S, a)) == static_cast<Elem>(a));
        }
      for (int i = 1; i < j; ++i) {
        if (j % i) continue;
        const FiniteField& R = FiniteField::get(p, i);
        for (long a = 0; a < R.size(); ++a) CHECK(F.embed(S, S.embed(R, a)) == F.embed(R, a));
      }
      // the image of F_{p^j} is exactly the fixed field of the p^j-power map
      long fixed = 0;
      for (long a = 0; a < F.size(); ++a) fixed += F.frobenius(a, j) == static_cast<Elem>(a);
      CHECK(fixed == S.size());
    }
  }
  CHECK_THROWS(FiniteField::get(4, 1));
  CHECK_THROWS(FiniteField::get(2, 21));
}

TEST_CASE("E1 point counts and trace recursion") {
  auto E = EllipticCurve::E1();
  CHECK(E.trace() == 0);
  std::vector<long> expect = {3, 9, 9, 9, 33, 81};
  for (int n = 1; n <= 6; ++n) {
    CHECK(static_cast<long>(E.points(n).size()) == expect[n - 1]);
    CHECK(E.count_from_trace(n) == expect[n - 1]);
  }
  auto p1 = E.points(1);
  REQUIRE(p1.size() == 3);
  CHECK(p1[0].inf);
  CHECK(p1[1] == Point::affine(0, 0));
  CHECK(p1[2] == Point::affine(0, 1));
  for (int n = 1; n <= 4; ++n) CHECK(E.enumerate_points_reference(n) == E.points(n));
}

TEST_CASE("E2 point counts") {
  auto E = EllipticCurve::E2();
  CHECK(E.points(1).size() == 9);
  CHECK(E.trace() == -3);
  CHECK(E.discriminant() == 4);
  for (int n = 1; n <= 6; ++n) CHECK(Int(static_cast<long>(E.points(n).size())) == E.count_from_trace(n));
  for (int n = 1; n <= 2; ++n) CHECK(E.enumerate_points_reference(n) == E.points(n));
}

TEST_CASE("curve over a non-prime field and config parsing") {
  auto E = EllipticCurve::from_config("q=4\n# comment\na1=1\na6=2\n");
  CHECK(E.q() == 4);
  for (int n = 1; n <= 3; ++n) {
    CHECK(Int(static_cast<long>(E.points(n).size())) == E.count_from_trace(n));
    CHECK(E.enumerate_points_reference(n) == E.points(n));
  }
  CHECK_THROWS_AS(EllipticCurve::from_config("q=2\n"), std::invalid_argument);  // y^2 = x^3 is singular
  CHECK_THROWS_AS(EllipticCurve::from_config("q=6\na3=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(EllipticCurve::from_config("a3=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(EllipticCurve::from_config("q=2\nb=1\n"), std::invalid_argument);
  CHECK(EllipticCurve::from_config("q=2\na3=1\n").trace() == 0);
}

TEST_CASE("group law") {
  for (auto E : {EllipticCurve::E1(), EllipticCurve::E2()}) {
    int n = 2;
    const auto& pts = E.points(n);
    std::mt19937 rng(2);
    std::uniform_int_distribution<size_t> d(0, pts.size() - 1);
    for (int t = 0; t < 200; ++t) {
      Point P = pts[d(rng)], Q = pts[d(rng)], R = pts[d(rng)];
      CHECK(E.add(n, P, Point::infinity()) == P);
      CHECK(E.add(n, P, E.neg(n, P)).inf);
      CHECK(E.add(n, P, Q) == E.add(n, Q, P));
      CHECK(E.add(n, E.add(n, P, Q), R) == E.add(n, P, E.add(n, Q, R)));
      CHECK(E.on_curve(n, E.add(n, P, Q)));
    }
    for (auto& P : pts) CHECK(E.mul(n, P, static_cast<long>(pts.size())).inf);
  }
}

TEST_CASE("frobenius, embeddings and norms") {
  auto E = EllipticCurve::E1();
  for (auto& P : E.points(1)) CHECK(E.frobenius(1, P) == P);
  for (int n = 1; n <= 6; ++n)
    for (auto& P : E.points(n)) CHECK(E.frobenius(n, P, n) == P);
  // X(F_{q^m}) is the Fr^m-fixed part of X(F_{q^n})
  for (auto [m, n] : {std::pair<int, int>{1, 2}, {2, 4}, {2, 6}, {3, 6}, {1, 6}}) {
    std::set<Point> fixed, embedded;
    for (auto& P : E.points(n))
      if (E.frobenius(n, P, m) == P) fixed.insert(P);
    for (auto& P : E.points(m)) embedded.insert(E.embed(m, n, P));
    CHECK(fixed == embedded);
  }
  for (auto& P : E.points(1)) {
    CHECK(E.norm(1, 2, E.embed(1, 2, P)) == E.mul(1, P, 2));
    CHECK(E.norm(1, 1, P) == P);
  }
  std::set<Point> image;
  for (auto& P : E.points(2)) image.insert(E.norm(1, 2, P));
  CHECK(image.size() == E.points(1).size());
  for (int n = 2; n <= 4; ++n) {
    std::set<Point> im;
    for (auto& P : E.points(n)) im.insert(E.norm(1, n, P));
    CHECK(im.size() == E.points(1).size());
  }
}

TEST_CASE("closed points") {
  auto E = EllipticCurve::E1();
  std::vector<size_t> expect = {3, 3, 2, 0, 6, 11};
  for (int d = 1; d <= 6; ++d) {
    CHECK(E.closed_points(d).size() == expect[d - 1]);
    // Moebius inversion of point counts
    long s = 0;
    for (int e = 1; e <= d; ++e)
      if (d % e == 0) s += mobius(d / e) * static_cast<long>(E.points(e).size());
    CHECK(static_cast<long>(E.closed_points(d).size()) == s / d);
  }
  auto E2 = EllipticCurve::E2();
  for (int d = 1; d <= 4; ++d) {
    long s = 0;
    for (int e = 1; e <= d; ++e)
      if (d % e == 0) s += mobius(d / e) * static_cast<long>(E2.points(e).size());
    CHECK(static_cast<long>(E2.closed_points(d).size()) == s / d);
  }
}

TEST_CASE("picard structure and characters") {
  auto E = EllipticCurve::E1();
  CHECK(E.picard(1).divisors == std::vector<long>{3});
  CHECK(E.picard(2).divisors == std::vector<long>{3, 3});
  for (int n = 1; n <= 6; ++n) {
    const auto& G = E.picard(n);
    long prod = 1;
    for (long d : G.divisors) prod *= d;
    CHECK(prod == G.order());
    std::set<std::vector<long>> distinct(G.dlog.begin(), G.dlog.end());
    CHECK(static_cast<long>(distinct.size()) == G.order());
    // dlog is a homomorphism
    for (size_t i = 0; i < G.points.size(); i += 3)
      for (size_t j = 0; j < G.points.size(); j += 5) {
        auto s = E.add(n, G.points[i], G.points[j]);
        auto& es = G.exponents(s);
        for (size_t k = 0; k < G.divisors.size(); ++k)
          CHECK(es[k] == (G.dlog[i][k] + G.dlog[j][k]) % G.divisors[k]);
      }
  }
  // orthogonality: nontrivial characters sum to zero
  for (int n = 1; n <= 3; ++n)
    for (auto& chi : E.characters(n)) {
      CurveScalar s;
      for (auto& P : E.points(n)) s += E.evaluate(chi, P).scalar();
      CHECK((s == CurveScalar(0)) == !chi.is_trivial());
    }
  // exactly #Pic0(X) Frobenius-fixed characters at level 2, and they form the norm image
  std::set<Character> fixed, image;
  for (auto& chi : E.characters(2))
    if (E.frobenius(chi, 1) == chi) fixed.insert(chi);
  for (auto& chi : E.characters(1)) image.insert(E.norm(chi, 2));
  CHECK(fixed.size() == 3);
  CHECK(fixed == image);
  for (int n = 1; n <= 4; ++n)
    for (auto& chi : E.characters(n)) CHECK(E.frobenius(chi, n) == chi);
}

TEST_CASE("primitive orbits") {
  auto E = EllipticCurve::E1();
  CHECK(E.primitive_orbits(1).size() == 3);
  CHECK(E.primitive_orbits(2).size() == 3);
  for (int n = 1; n <= 4; ++n) {
    std::set<Character> a;
    for (auto& o : E.primitive_orbits(n))
      for (auto& c : o.members) a.insert(c);
    auto b = E.primitive_by_norm_exclusion(n);
    CHECK(a == std::set<Character>(b.begin(), b.end()));
    if (n > 1)
      for (auto& c : a) CHECK(!c.is_trivial());
  }
}

TEST_CASE("tilde rho") {
  auto E = EllipticCurve::E1();
  for (int n = 1; n <= 3; ++n) {
    for (auto& o : E.character_orbits(n)) {
      for (int f = 1; f <= 6; ++f)
        for (auto& x : E.closed_points(f)) {
          CurveScalar v = E.tilde_rho(o.rep(), x);
          if (o.rep().is_trivial()) CHECK(v == CurveScalar(1));
          int d = std::gcd(n, f);
          for (int i = 1; i < d; ++i) CHECK(E.tilde_rho(o.rep(), x, i) == v);
          // independent of the orbit representative
          for (auto& m : o.members) CHECK(E.tilde_rho(m, x) == v);
          // rho~(x) = Norm_n^N(rho~)(x) for |x| = N with n | N
          if (f % n == 0) CHECK(E.tilde_rho(E.norm(o.rep(), f), x) == v);
        }
    }
  }
  // level 1: a single term
  for (auto& chi : E.characters(1))
    for (auto& x : E.closed_points(1)) CHECK(E.tilde_rho(chi, x) == E.evaluate(chi, x.rep()).scalar());
}

TEST_CASE("zeta series") {
  auto E = EllipticCurve::E1();
  auto z = E.zeta_series(1, 8);
  CHECK(z[0] == 1);
  CHECK(z[1] == 3);
  CHECK(z[2] == 9);
  CHECK(z[3] == 21);
  for (auto Ec : {EllipticCurve::E1(), EllipticCurve::E2()}) {
    for (int n = 1; n <= 2; ++n) {
      auto zs = Ec.zeta_series(n, 8);
      TruncatedSeries<Rat> g(8, Rat(0));
      for (int k = 1; k <= 8; ++k) g[k] = Rat(Ec.count_from_trace(n * k)) / k;
      auto e = series_exp(g, Rat(1));
      for (int k = 0; k <= 8; ++k) CHECK(e[k] == Rat(zs[k]));
    }
  }
}
