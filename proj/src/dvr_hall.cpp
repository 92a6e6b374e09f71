#include "ehall/dvr_hall.hpp"

#include "ehall/finite_field.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>

namespace ehall {

namespace {

using Vec = std::vector<FiniteField::Elem>;

struct ModuleShape {
  std::vector<int> block;  // block index of each coordinate
  std::vector<int> level;  // t-power of each coordinate
  std::vector<int> next;   // coordinate of t * e, or -1
  int dim = 0;
};

ModuleShape shape_of(const Partition& lambda) {
  ModuleShape s;
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[i]; ++j) {
      s.block.push_back(i);
      s.level.push_back(j);
      s.next.push_back(j + 1 < lambda[i] ? s.dim + 1 : -1);
      ++s.dim;
    }
  return s;
}

Vec apply_t(const ModuleShape& s, const Vec& v) {
  Vec w(s.dim, 0);
  for (int i = 0; i < s.dim; ++i)
    if (v[i] && s.next[i] >= 0) w[s.next[i]] = v[i];
  return w;
}

int rank_of(const FiniteField& F, std::vector<Vec> rows, int dim) {
  int r = 0;
  for (int c = 0; c < dim && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c]) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    auto inv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || !rows[i][c]) continue;
      auto f = rows[i][c];
      for (int k = 0; k < dim; ++k) rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[r][k]));
    }
    ++r;
  }
  return r;
}

// Partition whose conjugate has parts s_j - s_{j+1}, from the dimension sequence s_j.
Partition from_dims(const std::vector<int>& s) {
  std::vector<int> conj;
  for (size_t j = 0; j + 1 < s.size(); ++j) conj.push_back(s[j] - s[j + 1]);
  return Partition(conj).conjugate();
}

const FiniteField& field_for(long q) {
  long p = 0;
  for (long d = 2; d <= q; ++d)
    if (q % d == 0) { p = d; break; }
  int k = 0;
  long t = q;
  while (t % p == 0) {
    t /= p;
    ++k;
  }
  if (t != 1) throw std::invalid_argument("hall: q must be a prime power");
  return FiniteField::get(p, k);
}

struct Pattern {
  std::vector<int> pivots;
  std::vector<std::pair<int, int>> free;  // (row, column)
};

std::vector<Pattern> rref_patterns(int m) {
  std::vector<Pattern> out;
  for (int mask = 0; mask < (1 << m); ++mask) {
    Pattern pt;
    for (int c = 0; c < m; ++c)
      if (mask >> c & 1) pt.pivots.push_back(c);
    for (int i = 0; i < static_cast<int>(pt.pivots.size()); ++i)
      for (int c = pt.pivots[i] + 1; c < m; ++c)
        if (!(mask >> c & 1)) pt.free.emplace_back(i, c);
    out.push_back(pt);
  }
  return out;
}

// Visit every subspace with the given pivot pattern; record types of t-stable ones.
void scan_pattern(const FiniteField& F, const ModuleShape& s, const Pattern& pt, int maxlen,
                  std::map<PartitionPair, long>& out) {
  const long Q = F.size();
  const int r = static_cast<int>(pt.pivots.size());
  const int nf = static_cast<int>(pt.free.size());
  long total = 1;
  for (int i = 0; i < nf; ++i) total *= Q;
  std::vector<Vec> rows(r, Vec(s.dim, 0));
  for (int i = 0; i < r; ++i) rows[i][pt.pivots[i]] = 1;
  // t^j V is spanned by coordinates of level >= j.
  for (long idx = 0; idx < total; ++idx) {
    long c = idx;
    for (auto& [i, col] : pt.free) {
      rows[i][col] = static_cast<FiniteField::Elem>(c % Q);
      c /= Q;
    }
    bool stable = true;
    for (int i = 0; i < r && stable; ++i) {
      Vec w = apply_t(s, rows[i]);
      Vec red = w;
      for (int k = 0; k < r; ++k) {
        auto coef = w[pt.pivots[k]];
        if (!coef) continue;
        for (int j = 0; j < s.dim; ++j) red[j] = F.sub(red[j], F.mul(coef, rows[k][j]));
      }
      for (auto x : red)
        if (x) { stable = false; break; }
    }
    if (!stable) continue;
    std::vector<int> sub_dims, quo_dims;
    std::vector<Vec> cur = rows;
    for (int j = 0; j <= maxlen; ++j) {
      sub_dims.push_back(rank_of(F, cur, s.dim));
      for (auto& v : cur) v = apply_t(s, v);
      std::vector<Vec> gen = rows;
      for (int k = 0; k < s.dim; ++k)
        if (s.level[k] >= j) {
          Vec e(s.dim, 0);
          e[k] = 1;
          gen.push_back(e);
        }
      quo_dims.push_back(rank_of(F, gen, s.dim) - r);
    }
    out[{from_dims(quo_dims), from_dims(sub_dims)}]++;
  }
}

long subspace_total(int m, long Q) {
  long total = 0;
  for (auto& pt : rref_patterns(m)) {
    long t = 1;
    for (size_t i = 0; i < pt.free.size(); ++i) {
      t *= Q;
      if (t > kSubspaceBudget) return kSubspaceBudget + 1;
    }
    total += t;
    if (total > kSubspaceBudget) return total;
  }
  return total;
}

std::map<PartitionPair, long> enumerate_impl(const Partition& lambda, long q, bool parallel) {
  const FiniteField& F = field_for(q);
  ModuleShape s = shape_of(lambda);
  if (subspace_total(s.dim, q) > kSubspaceBudget)
    throw std::length_error("hall enumeration budget exceeded for " + lambda.to_string() + " at q=" + std::to_string(q));
  auto patterns = rref_patterns(s.dim);
  const int maxlen = lambda.empty() ? 0 : lambda[0];
  std::map<PartitionPair, long> out;
  if (!parallel) {
    for (auto& pt : patterns) scan_pattern(F, s, pt, maxlen, out);
    return out;
  }
  const long np = static_cast<long>(patterns.size());
#pragma omp parallel
  {
    std::map<PartitionPair, long> local;
#pragma omp for schedule(dynamic)
    for (long i = 0; i < np; ++i) scan_pattern(F, s, patterns[i], maxlen, local);
#pragma omp critical
    for (auto& [k, v] : local) out[k] += v;
  }
  return out;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::map<PartitionPair, long> enumerate_submodule_types(const Partition& lambda, long q) {
  return enumerate_impl(lambda, q, true);
}

std::map<PartitionPair, long> enumerate_submodule_types_serial(const Partition& lambda, long q) {
  return enumerate_impl(lambda, q, false);
}

const std::map<PartitionPair, long>& hall_decompositions(const Partition& lambda, long q) {
  static std::map<std::pair<long, Partition>, std::shared_ptr<const std::map<PartitionPair, long>>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find({q, lambda});
    if (it != cache.end()) return *it->second;
  }
  auto v = std::make_shared<const std::map<PartitionPair, long>>(enumerate_submodule_types(lambda, q));
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& slot = cache[{q, lambda}];
  if (!slot) slot = v;
  return *slot;
}

long hall_number(const Partition& lambda, const Partition& mu, const Partition& nu, long q) {
  if (mu.size() + nu.size() != lambda.size()) throw std::invalid_argument("hall_number: sizes do not add up");
  const auto& d = hall_decompositions(lambda, q);
  auto it = d.find({mu, nu});
  return it == d.end() ? 0 : it->second;
}

const std::map<Partition, long>& hall_product(const Partition& mu, const Partition& nu, long q) {
  static std::map<std::tuple<long, Partition, Partition>, std::shared_ptr<const std::map<Partition, long>>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find({q, mu, nu});
    if (it != cache.end()) return *it->second;
  }
  auto out = std::make_shared<std::map<Partition, long>>();
  for (auto& l : Partition::all(mu.size() + nu.size())) {
    long g = hall_number(l, mu, nu, q);
    if (g) (*out)[l] = g;
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& slot = cache[{q, mu, nu}];
  if (!slot) slot = out;
  return *slot;
}

mpz_class aut_count(const Partition& lambda, long q) {
  mpz_class qp;
  mpz_ui_pow_ui(qp.get_mpz_t(), q, lambda.conjugate_square_sum());
  mpq_class r(qp);
  auto m = lambda.multiplicities();
  for (size_t i = 1; i < m.size(); ++i)
    for (int k = 1; k <= m[i]; ++k) {
      mpz_class qk;
      mpz_ui_pow_ui(qk.get_mpz_t(), q, k);
      r *= mpq_class(qk - 1, qk);
    }
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("aut_count: non-integral value");
  return r.get_num();
}

mpz_class aut_count_bruteforce(const Partition& lambda, long q) {
  const FiniteField& F = field_for(q);
  ModuleShape s = shape_of(lambda);
  const long Q = F.size();
  long vsize = 1;
  for (int i = 0; i < s.dim; ++i) vsize *= Q;
  if (vsize > 4096) throw std::length_error("aut_count_bruteforce: module too large");
  auto decode = [&](long c) {
    Vec v(s.dim, 0);
    for (int i = 0; i < s.dim; ++i) {
      v[i] = static_cast<FiniteField::Elem>(c % Q);
      c /= Q;
    }
    return v;
  };
  // candidate images of the i-th block generator: vectors killed by t^{lambda_i}
  std::vector<std::vector<Vec>> cand(lambda.length());
  for (long c = 0; c < vsize; ++c) {
    Vec v = decode(c);
    for (int i = 0; i < lambda.length(); ++i) {
      Vec w = v;
      for (int k = 0; k < lambda[i]; ++k) w = apply_t(s, w);
      if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) cand[i].push_back(v);
    }
  }
  mpz_class count = 0;
  std::vector<size_t> choice(lambda.length(), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == lambda.length()) {
      std::vector<Vec> cols;
      for (int b = 0; b < lambda.length(); ++b) {
        Vec v = cand[b][choice[b]];
        for (int k = 0; k < lambda[b]; ++k) {
          cols.push_back(v);
          v = apply_t(s, v);
        }
      }
      if (rank_of(F, cols, s.dim) == s.dim) ++count;
      return;
    }
    for (size_t j = 0; j < cand[i].size(); ++j) {
      choice[i] = j;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

mpq_class n_u(int l, long q) {
  mpq_class r = 1;
  mpz_class qi = 1;
  for (int i = 1; i <= l; ++i) {
    qi *= q;
    r *= mpq_class(1 - qi);
  }
  return r;
}

}  // namespace ehall
