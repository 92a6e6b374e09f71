#include "doctest.h"

#include "ehall/lattice.hpp"

#include <algorithm>
#include <set>

using namespace ehall;

TEST_CASE("delta and epsilon") {
  CHECK(delta({2, 4}) == 2);
  CHECK(delta({1, 0}) == 1);
  CHECK(delta({-6, 9}) == 3);
  CHECK_THROWS(delta({0, 0}));
  CHECK(epsilon({1, 0}, {0, 1}) == 1);
  CHECK(epsilon({0, 1}, {1, 0}) == -1);
  CHECK(epsilon({1, 2}, {2, 1}) == -1);
  CHECK_THROWS(epsilon({1, 1}, {2, 2}));
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c)
        for (long d = -4; d <= 4; ++d) {
          LatticePoint x{a, b}, y{c, d};
          if (det(x, y) != 0) CHECK(epsilon(x, y) == -epsilon(y, x));
        }
}

TEST_CASE("interior points") {
  CHECK(interior_points({1, 0}, {0, 1}) == 0);
  CHECK(interior_points({1, 0}, {0, 4}) == 0);
  CHECK(interior_points({3, 0}, {0, 3}) == 1);
  CHECK(interior_points_scan({3, 0}, {0, 3}) == 1);
  CHECK_THROWS(interior_points({1, 1}, {2, 2}));
  long mismatches = 0;
  for (long a = -12; a <= 12; a += 1)
    for (long b = -12; b <= 12; b += 1)
      for (long c = -12; c <= 12; c += 3)
        for (long d = -12; d <= 12; d += 2) {
          LatticePoint x{a, b}, y{c, d};
          if (det(x, y) == 0) continue;
          if (interior_points_pick(x, y) != interior_points_scan(x, y)) ++mismatches;
        }
  CHECK(mismatches == 0);
}

TEST_CASE("angle order") {
  CHECK(angle_compare({0, 1}, {1, 0}) == 1);
  CHECK(angle_compare({1, 1}, {1, 2}) == -1);
  CHECK(angle_compare({1, 1}, {1, 1}) == 0);
  CHECK(angle_compare({2, 2}, {1, 1}) == 0);
  CHECK(angle_compare({0, -1}, {1, -5}) == -1);
  CHECK(angle_compare({-1, 0}, {0, 1}) == 1);
  // total preorder: transitive on a sample, ties only on same direction
  std::vector<LatticePoint> pts;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      if (a || b) pts.push_back({a, b});
  for (auto& x : pts)
    for (auto& y : pts) {
      CHECK(angle_compare(x, y) == -angle_compare(y, x));
      if (angle_compare(x, y) == 0) CHECK((det(x, y) == 0 && x.q * y.q + x.p * y.p > 0));
      for (auto& z : pts)
        if (angle_compare(x, y) <= 0 && angle_compare(y, z) <= 0) CHECK(angle_compare(x, z) <= 0);
    }
}

TEST_CASE("normal-form word order") {
  std::vector<LatticePoint> seq = {{0, 1}, {1, 3}, {1, 0}, {1, -3}, {0, -1}, {-1, -2}, {-1, 0}, {-1, 5}};
  for (size_t i = 0; i + 1 < seq.size(); ++i) CHECK(word_less(seq[i], seq[i + 1]));
  CHECK(word_less({0, 2}, {0, 1}));
  CHECK(!word_less({0, 1}, {0, 2}));
  CHECK(direction_compare({2, 4}, {1, 2}) == 0);
}

TEST_CASE("sl2 action") {
  CHECK(sl2_apply({}, {3, -2}) == LatticePoint{3, -2});
  CHECK(sl2_apply({0, -1, 1, 0}, {1, 0}) == LatticePoint{0, 1});
  CHECK(sl2_apply({1, 1, 0, 1}, {0, 1}) == LatticePoint{1, 1});
  CHECK_THROWS(sl2_apply({2, 0, 0, 1}, {1, 1}));
}

TEST_CASE("convex path enumeration") {
  auto p01 = enumerate_convex_paths({0, 1}, Cone::Positive);
  REQUIRE(p01.size() == 1);
  CHECK(p01[0].segments() == std::vector<LatticePoint>{{0, 1}});

  auto p11 = enumerate_convex_paths({1, 1}, Cone::Positive);
  CHECK(p11.size() == 2);
  std::set<ConvexPath> s11(p11.begin(), p11.end());
  CHECK(s11.count(ConvexPath({{0, 1}, {1, 0}})) == 1);
  CHECK(s11.count(ConvexPath({{1, 1}})) == 1);

  auto p02 = enumerate_convex_paths({0, 2}, Cone::Positive);
  CHECK(p02.size() == 2);
  for (int n = 1; n <= 6; ++n) CHECK(enumerate_convex_paths({0, n}, Cone::Positive).size() == Partition::all(n).size());

  ConvexPath cp({{1, 0}, {0, 2}, {0, 1}, {2, 0}});
  auto runs = cp.runs();
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].first == LatticePoint{0, 1});
  CHECK(runs[0].second == Partition{2, 1});
  CHECK(runs[1].first == LatticePoint{1, 0});
  CHECK(runs[1].second == Partition{2, 1});
  CHECK(cp.total() == LatticePoint{3, 3});
}

TEST_CASE("path enumeration transforms under SL2 on the full plane") {
  std::vector<Matrix2> gs = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, 0, -1, 1}, {2, 1, 1, 1}};
  std::vector<LatticePoint> targets = {{1, 1}, {0, 2}, {2, 1}, {-1, 1}};
  for (auto& g : gs) {
    Matrix2 ginv{g.d, -g.b, -g.c, g.a};
    for (auto& t : targets) {
      const long B = 3;
      auto src = enumerate_convex_paths(t, Cone::All, B);
      std::set<ConvexPath> image;
      long bprime = 0;
      for (auto& path : src) {
        std::vector<LatticePoint> segs;
        long l1 = 0;
        for (auto& x : path.segments()) {
          segs.push_back(sl2_apply(g, x));
          l1 += std::labs(segs.back().q) + std::labs(segs.back().p);
        }
        bprime = std::max(bprime, l1);
        image.insert(ConvexPath(segs));
      }
      CHECK(image.size() == src.size());
      std::set<ConvexPath> back;
      for (auto& path : enumerate_convex_paths(sl2_apply(g, t), Cone::All, bprime)) {
        long l1 = 0;
        for (auto& x : path.segments()) {
          auto y = sl2_apply(ginv, x);
          l1 += std::labs(y.q) + std::labs(y.p);
        }
        if (l1 <= B) back.insert(path);
      }
      CHECK(back == image);
    }
  }
}

TEST_CASE("partitions") {
  CHECK(Partition::all(4).size() == 5);
  CHECK(Partition::all(6).size() == 11);
  CHECK(Partition({1, 3, 0, 2}).parts() == std::vector<int>{3, 2, 1});
  CHECK(Partition{3, 1}.conjugate() == Partition{2, 1, 1});
  CHECK(Partition{2, 2, 1}.conjugate_square_sum() == 9 + 4);
  CHECK(Partition{2, 1, 1}.n_statistic() == 3);
  CHECK(Partition{}.size() == 0);
  CHECK_THROWS(Partition({-1}));
}
