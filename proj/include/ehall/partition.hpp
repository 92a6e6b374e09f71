#pragma once

#include <compare>
#include <string>
#include <vector>

namespace ehall {

class Partition {
 public:
  Partition() = default;
  // Drops zero parts and sorts decreasingly; negative parts are rejected.
  Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  bool empty() const { return parts_.empty(); }
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }
  Partition conjugate() const;
  // m[i] = number of parts equal to i, for i = 0..largest part.
  std::vector<int> multiplicities() const;
  // sum_i (lambda'_i)^2
  long conjugate_square_sum() const;
  // n(lambda) = sum_i (i-1) lambda_i
  long n_statistic() const;

  auto operator<=>(const Partition&) const = default;
  std::string to_string() const;

  // All partitions of n, in reverse lexicographic order ((n) first).
  static std::vector<Partition> all(int n);

 private:
  std::vector<int> parts_;
};

}  // namespace ehall
