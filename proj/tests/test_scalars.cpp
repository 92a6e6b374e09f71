#include "doctest.h"

#include "ehall/backends.hpp"
#include "ehall/modp.hpp"
#include "ehall/series.hpp"

#include <random>

using namespace ehall;

namespace {

FormalScalar random_formal(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), nt(1, 3);
  auto poly = [&] {
    LaurentPoly p;
    int k = nt(rng);
    for (int i = 0; i < k; ++i) p = p + LaurentPoly::monomial(e(rng), e(rng), c(rng));
    return p;
  };
  LaurentPoly d;
  while (d.is_zero()) d = poly();
  return FormalScalar(poly(), d);
}

CurveScalar random_curve(std::mt19937& rng, int M, long q) {
  std::uniform_int_distribution<int> c(-4, 4), k(0, M - 1);
  CurveScalar x;
  for (int i = 0; i < 3; ++i) {
    x += CurveScalar::root_of_unity(k(rng), M).scaled(Rat(c(rng), 1 + (i % 2)));
    x += (CurveScalar::root_of_unity(k(rng), M) * CurveScalar::sqrt_q(q)).scaled(Rat(c(rng)));
  }
  return x;
}

}  // namespace

TEST_CASE("laurent gcd normal form makes equality syntactic") {
  FormalScalar s = FormalScalar::s();
  FormalScalar one(1);
  FormalScalar a = (s * s - one) / (s - one);
  CHECK(a == s + one);
  CHECK(a.den() == LaurentPoly(Rat(1)));
  FormalScalar sb = FormalScalar::sb();
  FormalScalar b = (s * sb - one) / (s * s * sb * sb - one);
  CHECK(b == one / (s * sb + one));
  CHECK((b * (s * sb + one)) == one);
}

TEST_CASE("nu integers") {
  FormalBackend fb;
  FormalScalar nu = fb.nu();
  CHECK(fb.nu_integer(1) == FormalScalar(1));
  CHECK(fb.nu_integer(2) == nu + nu.inverse());
  CHECK(fb.nu_integer(3) == nu * nu + FormalScalar(1) + nu.pow(-2));
  CHECK(fb.nu_integer(3) == (nu.pow(3) - nu.pow(-3)) / (nu - nu.inverse()));
  CHECK_THROWS(fb.nu_integer(0));
}

TEST_CASE("structure constants at i = 1") {
  FormalBackend fb;
  FormalScalar s = FormalScalar::s(), sb = FormalScalar::sb();
  CHECK(fb.c(1) == (s - s.inverse()) * (sb - sb.inverse()));
  FormalScalar one(1);
  CHECK(fb.alpha(1) == (one - s * s) * (one - sb * sb) * (one - (s * sb).pow(-2)));
  CHECK_THROWS(fb.c(0));
  CHECK_THROWS(fb.alpha(-1));

  CurveBackend e1(2, 0);
  CHECK(e1.c(1) == CurveScalar::v(2).scaled(3));
  CHECK(e1.alpha(1) == CurveScalar(Rat(3, 2)));
  CHECK(e1.alpha(2) == CurveScalar(Rat(27, 8)));
  CHECK(e1.point_count(1) == 3);
  CHECK(e1.point_count(2) == 9);
  CHECK(e1.point_count(3) == 9);
}

TEST_CASE("curve constants agree with specialized formal constants") {
  FormalBackend fb;
  for (auto [q, a] : {std::pair<long, long>{2, 0}, {5, -3}, {3, 1}}) {
    CurveBackend cb(q, a);
    for (int i = 1; i <= 8; ++i) {
      CHECK(fb.c(i).specialize(q, a) == cb.c(i));
      CHECK(fb.alpha(i).specialize(q, a) == cb.alpha(i));
      CHECK(fb.nu_integer(i).specialize(q, a) == cb.nu_integer(i));
    }
  }
}

TEST_CASE("formal ring axioms on random triples") {
  std::mt19937 rng(7);
  for (int t = 0; t < 25; ++t) {
    FormalScalar a = random_formal(rng), b = random_formal(rng), c = random_formal(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    if (!a.is_zero()) CHECK(a * a.inverse() == FormalScalar(1));
  }
}

TEST_CASE("cyclotomic data") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(9) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(9) == 6);
}

TEST_CASE("curve scalar identities") {
  for (long q : {2L, 5L, 4L}) {
    CurveScalar u = CurveScalar::sqrt_q(q), v = CurveScalar::v(q);
    CHECK(u * v == CurveScalar(1));
    CHECK(u * u == CurveScalar(q));
  }
  CurveScalar z = CurveScalar::root_of_unity(1, 3);
  CHECK(z.pow(3) == CurveScalar(1));
  CHECK(z * z.conj() == CurveScalar(1));
  CHECK(z + z.pow(2) == CurveScalar(-1));
  // zeta_3 lives inside Q(zeta_9) as zeta_9^3
  CHECK(CurveScalar::root_of_unity(3, 9) == z);
  CHECK(CurveScalar::root_of_unity(2, 4) == CurveScalar(-1));
  CHECK(CurveScalar::root_of_unity(1, 4).pow(2) == CurveScalar(-1));
  CHECK(CurveScalar(Rat(3, 4)).to_rational() == Rat(3, 4));
  CHECK_THROWS(z.to_rational());
  CHECK(CurveScalar().to_string() == "0");
  CHECK((CurveScalar(2) + CurveScalar::sqrt_q(2).scaled(Rat(-1, 2))).to_string() == "2 - 1/2*u");
  CHECK(z.serialize() == "M=3;q=0;a=[0,1];b=[0,0]");
}

TEST_CASE("curve ring axioms on random triples") {
  std::mt19937 rng(11);
  for (int M : {1, 3, 4, 9}) {
    for (int t = 0; t < 15; ++t) {
      CurveScalar a = random_curve(rng, M, 2), b = random_curve(rng, M, 2), c = random_curve(rng, M, 2);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b).conj() == a.conj() * b.conj());
      if (!a.is_zero()) CHECK(a * a.inverse() == CurveScalar(1));
    }
  }
}

TEST_CASE("mod p arithmetic and embeddings") {
  ModP a(3, 7), b(5, 7);
  CHECK((a * b).value() == 1);
  CHECK((a + b).value() == 1);
  CHECK((a * a.inverse()) == ModP(1));
  CHECK(ModP(2) * a == ModP(6, 7));
  CHECK_THROWS(ModP(1, 7) + ModP(1, 11));
  CHECK_THROWS(a.conj());

  ModPEmbedding e = ModPEmbedding::find(9, 2, 1000);
  CHECK((e.p - 1) % 9 == 0);
  CurveScalar z = CurveScalar::root_of_unity(1, 9);
  CHECK(e(z).pow(9) == ModP(1));
  CHECK(!(e(z).pow(3) == ModP(1)));
  CurveScalar u = CurveScalar::sqrt_q(2);
  CHECK(e(u) * e(u) == ModP(2));
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    CurveScalar x = random_curve(rng, 9, 2), y = random_curve(rng, 3, 2);
    CHECK(e(x * y) == e(x) * e(y));
    CHECK(e(x + y) == e(x) + e(y));
  }
}

TEST_CASE("series exp and log") {
  TruncatedSeries<Rat> zero(4, Rat(0));
  auto one_series = series_exp(zero, Rat(1));
  CHECK(one_series[0] == 1);
  for (int i = 1; i <= 4; ++i) CHECK(one_series[i] == 0);

  TruncatedSeries<CurveScalar> g(2);
  g[1] = CurveScalar(1);
  g[2] = CurveScalar(1);
  auto f = series_exp(g, CurveScalar(1));
  CHECK(f[0] == CurveScalar(1));
  CHECK(f[1] == CurveScalar(1));
  CHECK(f[2] == CurveScalar(Rat(3, 2)));

  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    TruncatedSeries<CurveScalar> h(12);
    for (int i = 1; i <= 12; ++i) h[i] = random_curve(rng, 3, 5);
    auto e = series_exp(h, CurveScalar(1));
    CHECK(series_log(e, CurveScalar(1)) == h);
  }
  TruncatedSeries<FormalScalar> c(6);
  c[1] = FormalScalar::s();
  auto ec = series_exp(c, FormalScalar(1));
  CHECK(series_log(ec, FormalScalar(1)) == c);
  CHECK(ec[3] == FormalScalar::monomial(3, 0, Rat(1, 6)));

  TruncatedSeries<CurveScalar> bad(3);
  bad[0] = CurveScalar(1);
  CHECK_THROWS(series_exp(bad, CurveScalar(1)));
  CHECK_THROWS(series_log(g, CurveScalar(1)));
}
