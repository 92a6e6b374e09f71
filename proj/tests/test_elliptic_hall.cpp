#include "doctest.h"

#include "ehall/backends.hpp"
#include "ehall/elliptic_hall.hpp"

#include <random>

using namespace ehall;

namespace {

using CurveAlg = EllipticHallAlgebra<CurveBackend>;
using FormalAlg = EllipticHallAlgebra<FormalBackend>;

CurveBackend e1_backend() { return CurveBackend(2, 0); }

template <class A>
typename A::Element word(A& a, std::initializer_list<LatticePoint> w) {
  auto r = a.one();
  for (auto& x : w) r = a.multiply(r, a.generator(x));
  return r;
}

LatticePoint random_point(std::mt19937& rng, int R) {
  std::uniform_int_distribution<int> d(-R, R);
  LatticePoint x;
  while (x.is_zero()) x = {d(rng), d(rng)};
  return x;
}

}  // namespace

TEST_CASE("generators and theta expansion") {
  for (int n : {1, 2}) {
    CurveAlg A(e1_backend(), n);
    auto g = A.generator({0, 1});
    CHECK(g.terms().size() == 1);
    CHECK(g.coefficient({{0, 1}}) == CurveScalar(1));
    CHECK(g.gradings() == std::set<LatticePoint>{{0, 1}});
    CHECK_THROWS(A.generator({0, 0}));
    CHECK(A.commutator(g, A.generator({0, 2})).is_zero());

    auto nu = A.backend().nu();
    CurveScalar k = (nu.inverse() - nu).scaled(Rat(n));
    CHECK(A.theta({1, 2}, 0) == A.one());
    CHECK(A.theta({1, 2}, 1) == A.generator({1, 2}).scaled(k));
    auto t2 = A.generator({2, 4}).scaled(k) + CurveAlg::Element::monomial(n, {{1, 2}, {1, 2}}, (k * k).scaled(Rat(1, 2)));
    CHECK(A.theta({1, 2}, 2) == t2);
    CHECK_THROWS(A.theta({2, 4}, 1));
  }
}

TEST_CASE("basic commutator instances") {
  for (int n : {1, 2}) {
    CurveAlg A(e1_backend(), n);
    const auto& b = A.backend();
    CHECK(A.commutator_basic({1, 0}, {0, 1}) == A.generator({1, 1}).scaled(b.c(n)));
    for (long d = 1; d <= 3; ++d)
      CHECK(A.commutator_basic({1, 0}, {0, d}) == A.generator({1, d}).scaled(b.c(n * d)));
    CHECK_THROWS(A.commutator_basic({1, 0}, {2, 0}));

    auto prod = A.multiply(A.generator({1, 0}), A.generator({0, 1}));
    auto expect = CurveAlg::Element::monomial(n, {{0, 1}, {1, 0}}) - A.generator({1, 1}).scaled(b.c(n));
    CHECK(prod == expect);

    // Canonical words are fixed points.
    Word w{{0, 1}, {1, 1}, {1, 0}, {0, -1}};
    REQUIRE(is_normal_word(w));
    CHECK(A.straighten(w) == CurveAlg::Element::monomial(n, w));
  }
}

TEST_CASE("sl2 rotation transports the basic relation") {
  CurveAlg A(e1_backend(), 1);
  Matrix2 g{0, -1, 1, 0};
  auto c1 = A.backend().c(1);
  CHECK(A.commutator(A.generator({-1, 0}), A.generator({0, 1})) == A.generator({-1, 1}).scaled(c1));
  auto lhs = A.sl2_act(g, A.commutator(A.generator({0, 1}), A.generator({1, 0})));
  CHECK(lhs == A.generator({-1, 1}).scaled(c1));
  CHECK(A.sl2_act(Matrix2{}, A.generator({2, 1})) == A.generator({2, 1}));
  CHECK_THROWS(A.sl2_act(Matrix2{2, 0, 0, 1}, A.one()));

  std::mt19937 rng(11);
  for (int i = 0; i < 15; ++i) {
    auto x = A.generator(random_point(rng, 2)), y = A.generator(random_point(rng, 2));
    for (Matrix2 h : {Matrix2{1, 1, 0, 1}, Matrix2{0, -1, 1, 0}})
      CHECK(A.sl2_act(h, A.multiply(x, y)) == A.multiply(A.sl2_act(h, x), A.sl2_act(h, y)));
  }
}

TEST_CASE("associativity on random triples") {
  for (int n : {1, 2}) {
    CurveAlg A(e1_backend(), n);
    std::mt19937 rng(100 + n);
    for (int i = 0; i < 40; ++i) {
      auto a = A.generator(random_point(rng, 2)), b = A.generator(random_point(rng, 2)),
           c = A.generator(random_point(rng, 2));
      CHECK(A.multiply(A.multiply(a, b), c) == A.multiply(a, A.multiply(b, c)));
    }
    auto x = A.generator({1, -1});
    CHECK(A.multiply(A.one(), x) == x);
    CHECK(A.multiply(x, A.one()) == x);
  }
}

TEST_CASE("split route agrees with the memoized commutator") {
  CurveAlg A(e1_backend(), 1);
  for (auto [a, b] : {std::pair<LatticePoint, LatticePoint>{{2, 1}, {0, 2}}, {{1, 2}, {2, -1}}, {{-1, 2}, {2, 1}}}) {
    auto direct = A.commutator(a, b);
    CurveAlg B(e1_backend(), 1);
    CHECK(B.commutator_by_split(a, b) == direct);
  }
}

TEST_CASE("targeted sign flip breaks associativity") {
  CurveAlg A(e1_backend(), 1);
  A.set_sign_flip(true);
  std::mt19937 rng(7);
  int bad = 0;
  for (int i = 0; i < 40 && bad == 0; ++i) {
    auto a = A.generator(random_point(rng, 2)), b = A.generator(random_point(rng, 2)),
         c = A.generator(random_point(rng, 2));
    try {
      if (!(A.multiply(A.multiply(a, b), c) == A.multiply(a, A.multiply(b, c)))) ++bad;
    } catch (const RecursionCycle&) {
      ++bad;
    }
  }
  CHECK(bad > 0);
  A.set_sign_flip(false);
  CHECK(A.cached_commutators() == 0);
}

TEST_CASE("defining and functional relations") {
  for (int n : {1, 2}) {
    CurveAlg A(e1_backend(), n);
    CHECK(verify_defining_relations(A, 3).all_ok());
    auto quad = verify_quadratic_relations(A, 2);
    CHECK(quad.checks.size() > 0);
    CHECK(quad.all_ok());
    for (long m = -1; m <= 1; ++m) CHECK(verify_cubic_relation(A, m));
  }
  // Formal scalars, smallest window.
  FormalAlg F(FormalBackend(), 1);
  CHECK(verify_quadratic_relations(F, 0).all_ok());
  CHECK(verify_cubic_relation(F, 0));
}

TEST_CASE("normal forms are convex paths of the right class") {
  CurveAlg A(e1_backend(), 1);
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    LatticePoint x = random_point(rng, 2), y = random_point(rng, 2), z = random_point(rng, 2);
    LatticePoint tot = x + y + z;
    long l1 = 0;
    for (auto& s : {x, y, z}) l1 += std::labs(s.q) + std::labs(s.p);
    auto paths = enumerate_convex_paths(tot, Cone::All, l1);
    std::set<std::vector<LatticePoint>> allowed;
    for (auto& p : paths) allowed.insert(p.segments());
    auto e = word(A, {x, y, z});
    for (auto& [w, c] : e.terms()) {
      CHECK(is_normal_word(w));
      CHECK(word_total(w) == tot);
      CHECK(allowed.count(w) == 1);
    }
  }
}

TEST_CASE("formal structure constants specialize to the curve") {
  FormalBackend f;
  CurveBackend b = e1_backend();
  for (int N = 1; N <= 6; ++N) {
    CHECK(f.c(N).specialize(2, 0) == b.c(N));
    CurveScalar v = b.nu();
    CurveScalar expect = v.pow(N) * b.nu_integer(N) * CurveScalar(Rat(b.point_count(N)) / Rat(N));
    CHECK(b.c(N) == expect);
  }
  CHECK(b.c(1) == CurveScalar::sqrt_q(2).scaled(Rat(3, 2)));
  for (int n : {1, 2})
    for (long d = 1; n * d <= 6; ++d) {
      CurveAlg A(b, n);
      CHECK(A.commutator(A.generator({0, d}), A.generator({1, 0})) == A.generator({1, d}).scaled(b.c(n * d)));
    }
}
