#pragma once

#include "ehall/partition.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace ehall {

// Point (q, p) of Z^2: q is the rank coordinate, p the degree coordinate.
struct LatticePoint {
  long q = 0;
  long p = 0;
  auto operator<=>(const LatticePoint&) const = default;
  LatticePoint operator+(const LatticePoint& o) const { return {q + o.q, p + o.p}; }
  LatticePoint operator-(const LatticePoint& o) const { return {q - o.q, p - o.p}; }
  LatticePoint operator-() const { return {-q, -p}; }
  LatticePoint operator*(long k) const { return {q * k, p * k}; }
  bool is_zero() const { return q == 0 && p == 0; }
  std::string to_string() const;
};

long det(const LatticePoint& x, const LatticePoint& y);
long delta(const LatticePoint& x);
// x / delta(x)
LatticePoint primitive_direction(const LatticePoint& x);
bool proportional(const LatticePoint& x, const LatticePoint& y);
int epsilon(const LatticePoint& x, const LatticePoint& y);

// Lattice points strictly inside the triangle (0, x, x + y).
long interior_points_pick(const LatticePoint& x, const LatticePoint& y);
long interior_points_scan(const LatticePoint& x, const LatticePoint& y);
// Pick's count, checked against the scan when the triangle is small.
long interior_points(const LatticePoint& x, const LatticePoint& y);

// Orders directions by the counterclockwise angle from (0,-1), in [0, 2pi).
// Returns -1, 0, 1; 0 exactly for positive multiples of one direction.
int angle_compare(const LatticePoint& x, const LatticePoint& y);

struct Matrix2 {
  long a = 1, b = 0, c = 0, d = 1;
  long determinant() const { return a * d - b * c; }
  Matrix2 operator*(const Matrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};
LatticePoint sl2_apply(const Matrix2& g, const LatticePoint& x);

enum class Cone { Positive, Negative, All };
bool in_cone(const LatticePoint& x, Cone c);
bool in_positive_cone(const LatticePoint& x);

// Order of segments in a normal-form word: directions run clockwise starting from (0,1),
// so the positive cone comes first (in decreasing angle from (0,-1)) and then the negative
// cone starting at (0,-1). Within a direction larger multiples come first.
// Returns -1, 0, 1.
int direction_compare(const LatticePoint& x, const LatticePoint& y);
bool word_less(const LatticePoint& x, const LatticePoint& y);

// A convex path as its sequence of segments in normal-form order.
class ConvexPath {
 public:
  ConvexPath() = default;
  // Sorts the segments into normal-form order.
  explicit ConvexPath(std::vector<LatticePoint> segments);

  const std::vector<LatticePoint>& segments() const { return seg_; }
  LatticePoint total() const;
  // Equal-slope runs: primitive direction and multiplicities as a partition.
  std::vector<std::pair<LatticePoint, Partition>> runs() const;
  auto operator<=>(const ConvexPath&) const = default;
  std::string to_string() const;

 private:
  std::vector<LatticePoint> seg_;
};

// All convex paths in the cone with segments summing to target, using total L1 length of
// segments at most max_l1 (default: L1 norm of target). Sorted.
std::vector<ConvexPath> enumerate_convex_paths(const LatticePoint& target, Cone cone, long max_l1 = -1);

}  // namespace ehall
