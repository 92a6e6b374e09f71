#include "ehall/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace ehall {

std::string LatticePoint::to_string() const {
  return "(" + std::to_string(q) + "," + std::to_string(p) + ")";
}

long det(const LatticePoint& x, const LatticePoint& y) { return x.q * y.p - x.p * y.q; }

long delta(const LatticePoint& x) {
  if (x.is_zero()) throw std::invalid_argument("delta: origin has no gcd grading");
  return std::gcd(std::labs(x.q), std::labs(x.p));
}

LatticePoint primitive_direction(const LatticePoint& x) {
  long d = delta(x);
  return {x.q / d, x.p / d};
}

bool proportional(const LatticePoint& x, const LatticePoint& y) { return det(x, y) == 0; }

int epsilon(const LatticePoint& x, const LatticePoint& y) {
  long d = det(x, y);
  if (d == 0) throw std::invalid_argument("epsilon: proportional vectors");
  return d > 0 ? 1 : -1;
}

long interior_points_pick(const LatticePoint& x, const LatticePoint& y) {
  long a2 = std::labs(det(x, y));
  if (a2 == 0) throw std::invalid_argument("interior_points: degenerate triangle");
  long b = delta(x) + delta(y) + delta(x + y);
  return (a2 - b + 2) / 2;
}

long interior_points_scan(const LatticePoint& x, const LatticePoint& y) {
  LatticePoint o{0, 0}, z = x + y;
  long orient = det(x, y);
  if (orient == 0) throw std::invalid_argument("interior_points: degenerate triangle");
  long s = orient > 0 ? 1 : -1;
  long q0 = std::min({0L, x.q, z.q}), q1 = std::max({0L, x.q, z.q});
  long p0 = std::min({0L, x.p, z.p}), p1 = std::max({0L, x.p, z.p});
  auto side = [](const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) { return det(b - a, c - a); };
  long count = 0;
  for (long q = q0; q <= q1; ++q) {
    for (long p = p0; p <= p1; ++p) {
      LatticePoint w{q, p};
      if (s * side(o, x, w) > 0 && s * side(x, z, w) > 0 && s * side(z, o, w) > 0) ++count;
    }
  }
  return count;
}

long interior_points(const LatticePoint& x, const LatticePoint& y) {
  long pick = interior_points_pick(x, y);
  LatticePoint z = x + y;
  long box = (std::labs(x.q) + std::labs(z.q) + 1) * (std::labs(x.p) + std::labs(z.p) + 1);
  if (box <= 4096 && interior_points_scan(x, y) != pick)
    throw std::logic_error("interior_points: Pick and scan disagree");
  return pick;
}

namespace {

// 0 for angles in [0, pi) from (0,-1), 1 for [pi, 2pi).
int angle_half(const LatticePoint& x) { return (x.q > 0 || (x.q == 0 && x.p < 0)) ? 0 : 1; }

int word_half(const LatticePoint& x) { return in_positive_cone(x) ? 0 : 1; }

}  // namespace

int angle_compare(const LatticePoint& x, const LatticePoint& y) {
  if (x.is_zero() || y.is_zero()) throw std::invalid_argument("angle_compare: origin has no angle");
  int hx = angle_half(x), hy = angle_half(y);
  if (hx != hy) return hx < hy ? -1 : 1;
  long d = det(x, y);
  if (d == 0) return 0;
  return d > 0 ? -1 : 1;
}

LatticePoint sl2_apply(const Matrix2& g, const LatticePoint& x) {
  if (g.determinant() != 1) throw std::invalid_argument("sl2_apply: determinant must be 1");
  return {g.a * x.q + g.b * x.p, g.c * x.q + g.d * x.p};
}

bool in_positive_cone(const LatticePoint& x) { return x.q > 0 || (x.q == 0 && x.p > 0); }

bool in_cone(const LatticePoint& x, Cone c) {
  if (x.is_zero()) return false;
  switch (c) {
    case Cone::Positive: return in_positive_cone(x);
    case Cone::Negative: return !in_positive_cone(x);
    case Cone::All: return true;
  }
  return false;
}

int direction_compare(const LatticePoint& x, const LatticePoint& y) {
  int hx = word_half(x), hy = word_half(y);
  if (hx != hy) return hx < hy ? -1 : 1;
  long d = det(x, y);
  if (d == 0) return 0;
  return d < 0 ? -1 : 1;
}

bool word_less(const LatticePoint& x, const LatticePoint& y) {
  int c = direction_compare(x, y);
  if (c != 0) return c < 0;
  return delta(x) > delta(y);
}

ConvexPath::ConvexPath(std::vector<LatticePoint> segments) : seg_(std::move(segments)) {
  for (auto& s : seg_)
    if (s.is_zero()) throw std::invalid_argument("ConvexPath: zero segment");
  std::stable_sort(seg_.begin(), seg_.end(), word_less);
}

LatticePoint ConvexPath::total() const {
  LatticePoint t;
  for (auto& s : seg_) t = t + s;
  return t;
}

std::vector<std::pair<LatticePoint, Partition>> ConvexPath::runs() const {
  std::vector<std::pair<LatticePoint, Partition>> out;
  size_t i = 0;
  while (i < seg_.size()) {
    LatticePoint d = primitive_direction(seg_[i]);
    std::vector<int> parts;
    size_t j = i;
    while (j < seg_.size() && direction_compare(seg_[j], seg_[i]) == 0) parts.push_back(static_cast<int>(delta(seg_[j++])));
    out.emplace_back(d, Partition(parts));
    i = j;
  }
  return out;
}

std::string ConvexPath::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < seg_.size(); ++i) s += (i ? "," : "") + seg_[i].to_string();
  return s + "]";
}

std::vector<ConvexPath> enumerate_convex_paths(const LatticePoint& target, Cone cone, long max_l1) {
  long l1 = std::labs(target.q) + std::labs(target.p);
  if (max_l1 < 0) max_l1 = l1;
  std::vector<LatticePoint> cand;
  for (long q = -max_l1; q <= max_l1; ++q)
    for (long p = -max_l1; p <= max_l1; ++p) {
      LatticePoint x{q, p};
      if (std::labs(q) + std::labs(p) <= max_l1 && in_cone(x, cone)) cand.push_back(x);
    }
  std::sort(cand.begin(), cand.end(), word_less);
  std::vector<ConvexPath> out;
  std::vector<LatticePoint> cur;
  std::function<void(size_t, LatticePoint, long)> rec = [&](size_t start, LatticePoint sum, long budget) {
    if (sum == target && !cur.empty()) out.emplace_back(cur);
    for (size_t i = start; i < cand.size(); ++i) {
      const LatticePoint& x = cand[i];
      long cost = std::labs(x.q) + std::labs(x.p);
      if (cost > budget) continue;
      LatticePoint s = sum + x;
      LatticePoint rest = target - s;
      if (std::labs(rest.q) + std::labs(rest.p) > budget - cost) continue;
      cur.push_back(x);
      rec(i, s, budget - cost);
      cur.pop_back();
    }
  };
  rec(0, LatticePoint{}, max_l1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ehall
