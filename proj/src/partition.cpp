#include "ehall/partition.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ehall {

Partition::Partition(std::vector<int> parts) {
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("Partition: negative part");
    if (p > 0) parts_.push_back(p);
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

int Partition::size() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
  for (int p : parts_)
    for (int i = 0; i < p; ++i) ++c[i];
  return Partition(c);
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> m(parts_.empty() ? 1 : parts_[0] + 1, 0);
  for (int p : parts_) ++m[p];
  return m;
}

long Partition::conjugate_square_sum() const {
  long s = 0;
  Partition c2 = conjugate();
  for (int c : c2.parts()) s += static_cast<long>(c) * c;
  return s;
}

long Partition::n_statistic() const {
  long s = 0;
  for (int i = 0; i < length(); ++i) s += static_cast<long>(i) * parts_[i];
  return s;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + ")";
}

std::vector<Partition> Partition::all(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxp) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rest, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

}  // namespace ehall
