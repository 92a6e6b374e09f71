#include "ehall/autoforms.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ehall {

std::string monomial_to_string(const TorsionMonomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (auto& [k, l] : m) {
    if (!s.empty()) s += "+";
    s += "O[" + std::to_string(k.degree) + "." + std::to_string(k.index) + "]^" + l.to_string();
  }
  return s;
}

int monomial_degree(const TorsionMonomial& m) {
  int d = 0;
  for (auto& [k, l] : m) d += k.degree * l.size();
  return d;
}

CurveScalar v_integer(long q, int r) {
  if (r < 0) return -v_integer(q, -r);
  CurveScalar v = CurveScalar::v(q), acc;
  for (int i = 0; i < r; ++i) acc += v.pow(r - 1 - 2 * i);
  return acc;
}

namespace {

CurveScalar sqrt_q_pow(long q, long e) { return CurveScalar::sqrt_q(q).pow(e); }

CurveScalar count_scalar(const EllipticCurve& X, int n) { return CurveScalar(Rat(X.count_from_trace(n))); }

// Closed points of degree dividing N.
std::vector<const ClosedPoint*> points_dividing(const EllipticCurve& X, int N) {
  std::vector<const ClosedPoint*> out;
  for (int f = 1; f <= N; ++f)
    if (N % f == 0)
      for (auto& x : X.closed_points(f)) out.push_back(&x);
  return out;
}

}  // namespace

Torsion T0r_at_point(const EllipticCurve& X, int r, const ClosedPoint& x) {
  if (r < 1) throw std::invalid_argument("T0r_at_point: r must be positive");
  long q = X.q();
  Torsion out(q);
  if (r % x.degree != 0) return out;
  CurveScalar pre = v_integer(q, r).scaled(Rat(x.degree, r));
  long qx = ipow(q, x.degree);
  PointKey key{x.degree, x.id};
  for (auto& l : Partition::all(r / x.degree)) out.add_term({{key, l}}, pre.scaled(n_u(l.length() - 1, qx)));
  return out;
}

Torsion T0_twisted(const EllipticCurve& X, const Character& rho, int N) {
  Torsion out(X.q());
  for (auto* x : points_dividing(X, N)) {
    CurveScalar w = X.tilde_rho(rho, *x);
    if (w.is_zero()) continue;
    out = out + T0r_at_point(X, N, *x).scaled(w);
  }
  return out;
}

PairingResult green_pair_twisted(const EllipticCurve& X, const CharacterOrbit& rho, const CharacterOrbit& sigma) {
  int n = rho.level;
  if (sigma.level != n) throw std::invalid_argument("green_pair_twisted: levels differ");
  long q = X.q();
  PairingResult r;
  r.brute_force = T0_twisted(X, rho.rep(), n).green_pair(T0_twisted(X, sigma.rep(), n));
  bool same = std::find(sigma.members.begin(), sigma.members.end(), rho.rep()) != sigma.members.end();
  if (same) {
    CurveScalar v = CurveScalar::v(q);
    r.closed_form = v.pow(n) * v_integer(q, n) * count_scalar(X, n) / (v.inverse() - v).scaled(Rat(n * n));
  }
  return r;
}

std::vector<CurveScalar> frobenius_root_data(const EllipticCurve& X, const Character& rho, const ClosedPoint& x) {
  int d = std::gcd(rho.level, x.degree);
  std::vector<CurveScalar> out;
  for (int i = 0; i < d; ++i) out.push_back(X.evaluate(rho, X.divisor_class_above(rho.level, x, i)).conj().scalar());
  return out;
}

std::vector<CurveScalar> hecke_charpoly(const EllipticCurve& X, const Character& rho, const ClosedPoint& x) {
  int n = rho.level;
  auto a = frobenius_root_data(X, rho, x);
  int d = static_cast<int>(a.size()), m = n / d;
  // prod_i (S - a_i), then S = T^m.
  std::vector<CurveScalar> s{CurveScalar(1)};
  for (auto& ai : a) {
    std::vector<CurveScalar> t(s.size() + 1);
    for (size_t k = 0; k < s.size(); ++k) {
      t[k + 1] += s[k];
      t[k] -= s[k] * ai;
    }
    s = std::move(t);
  }
  std::vector<CurveScalar> c(n + 1);
  for (int k = 0; k <= d; ++k) c[k * m] = s[k];
  return c;
}

CurveScalar power_sum_eigenvalue(const EllipticCurve& X, const Character& rho, const ClosedPoint& x, int r) {
  int n = rho.level;
  auto a = frobenius_root_data(X, rho, x);
  int d = static_cast<int>(a.size());
  if ((r * d) % n != 0) return CurveScalar();
  int e = r * d / n;
  CurveScalar acc;
  for (auto& ai : a) acc += ai.pow(e);
  return acc.scaled(Rat(n / d)) * sqrt_q_pow(X.q(), static_cast<long>(x.degree) * r * (n - 1));
}

EigenvalueRoutes hecke_eigenvalue_elementary(const EllipticCurve& X, const Character& rho, const ClosedPoint& x, int l) {
  int n = rho.level;
  if (l < 1 || l > n) throw std::invalid_argument("hecke_eigenvalue_elementary: need 1 <= l <= n");
  long q = X.q();
  CurveScalar qpow = sqrt_q_pow(q, static_cast<long>(x.degree) * l * (n - l));
  auto a = frobenius_root_data(X, rho, x);
  int d = static_cast<int>(a.size()), m = n / d;
  EigenvalueRoutes r;

  if (l % m == 0) {
    int lp = l / m;
    // e_{l'} by the subset recursion.
    std::vector<CurveScalar> e(d + 1);
    e[0] = CurveScalar(1);
    for (auto& ai : a)
      for (int k = d; k >= 1; --k) e[k] += e[k - 1] * ai;
    r.formula = e[lp] * qpow;
    if ((l + lp) % 2) r.formula = -r.formula;
  }

  auto c = hecke_charpoly(X, rho, x);
  r.charpoly = c[n - l] * qpow;
  if (l % 2) r.charpoly = -r.charpoly;

  // Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i, with p_i recovered from Phi(p_i).
  std::vector<CurveScalar> p(l + 1), e(l + 1);
  for (int i = 1; i <= l; ++i)
    p[i] = power_sum_eigenvalue(X, rho, x, i) / sqrt_q_pow(q, static_cast<long>(x.degree) * i * (n - 1));
  e[0] = CurveScalar(1);
  for (int k = 1; k <= l; ++k) {
    CurveScalar acc;
    for (int i = 1; i <= k; ++i) acc += (i % 2 ? e[k - i] * p[i] : -(e[k - i] * p[i]));
    e[k] = acc.scaled(Rat(1, k));
  }
  r.newton = e[l] * qpow;
  return r;
}

T0NRoutes hecke_T0N_eigenvalue(const EllipticCurve& X, const CharacterOrbit& rho, const CharacterOrbit& sigma) {
  int n = rho.level, N = sigma.level;
  if (N % n != 0) throw std::invalid_argument("hecke_T0N_eigenvalue: level of rho must divide N");
  long q = X.q();
  Character nr = X.norm(rho.rep(), N);
  CurveScalar base = v_integer(q, N) * sqrt_q_pow(q, static_cast<long>(N) * (n - 1)) * count_scalar(X, N);
  T0NRoutes r;

  long hits = 0;
  Character fs = sigma.rep();
  for (int i = 0; i < N; ++i) {
    if (fs == nr) ++hits;
    fs = X.frobenius(fs, 1);
  }
  r.character_sum = base.scaled(Rat(static_cast<long>(n) * hits, static_cast<long>(N) * N));

  CurveScalar acc;
  for (auto* x : points_dividing(X, N)) {
    CurveScalar w = X.tilde_rho(sigma.rep(), *x);
    if (w.is_zero()) continue;
    int k = N / x->degree;
    acc += w * power_sum_eigenvalue(X, rho.rep(), *x, k).scaled(Rat(1, k));
  }
  r.local_sum = acc * v_integer(q, N);

  r.norm_match = std::find(sigma.members.begin(), sigma.members.end(), nr) != sigma.members.end();
  if (r.norm_match) r.closed_form = base.scaled(Rat(1, N));
  return r;
}

std::vector<Torsion> theta_coproduct_coefficients(const EllipticCurve& X, const Character& rho, int dmax) {
  int n = rho.level;
  long q = X.q();
  CurveScalar v = CurveScalar::v(q);
  CurveScalar k = (v.inverse() - v).scaled(Rat(n));
  Torsion zero(q);
  TruncatedSeries<Torsion> g(dmax, zero);
  for (int l = 1; l <= dmax; ++l) g[l] = T0_twisted(X, X.norm(rho, n * l), n * l).scaled(k);
  auto f = series_exp(g, Torsion::one(q));
  return f.coefficients();
}

namespace {

// p_k of the normalized Frobenius roots at x: m sum_i a_i^{k/m} when m | k.
CurveScalar root_power_sum(const std::vector<CurveScalar>& a, int n, int k) {
  int d = static_cast<int>(a.size()), m = n / d;
  if (k % m != 0) return CurveScalar();
  CurveScalar acc;
  for (auto& ai : a) acc += ai.pow(k / m);
  return acc.scaled(Rat(m));
}

std::vector<const ClosedPoint*> points_up_to(const EllipticCurve& X, int order,
                                             const std::function<bool(const ClosedPoint&)>& keep) {
  std::vector<const ClosedPoint*> out;
  for (int f = 1; f <= order; ++f)
    for (auto& x : X.closed_points(f))
      if (!keep || keep(x)) out.push_back(&x);
  return out;
}

TruncatedSeries<CurveScalar> exp_of_logs(const std::vector<std::vector<CurveScalar>>& logs, int order) {
  TruncatedSeries<CurveScalar> g(order);
  for (auto& v : logs)
    for (int i = 1; i <= order; ++i) g[i] += v[i];
  return series_exp(g, CurveScalar(1));
}

}  // namespace

std::vector<CurveScalar> euler_log_contribution(const EllipticCurve& X, const Character& rho1, const Character& rho2,
                                                const ClosedPoint& x, int order) {
  std::vector<CurveScalar> out(order + 1);
  auto a1 = frobenius_root_data(X, rho1, x);
  auto a2 = frobenius_root_data(X, rho2, x);
  for (int k = 1; k * x.degree <= order; ++k) {
    CurveScalar t = root_power_sum(a1, rho1.level, k).conj() * root_power_sum(a2, rho2.level, k);
    out[k * x.degree] += t.scaled(Rat(1, k));
  }
  return out;
}

TruncatedSeries<CurveScalar> l_function(const EllipticCurve& X, const Character& rho1, const Character& rho2,
                                        int order, const std::function<bool(const ClosedPoint&)>& keep) {
  // Fill the shared curve caches before the parallel region.
  X.picard(rho1.level);
  X.picard(rho2.level);
  auto pts = points_up_to(X, order, keep);
  for (auto* x : pts) {
    X.divisor_class_above(rho1.level, *x);
    X.divisor_class_above(rho2.level, *x);
  }
  const long np = static_cast<long>(pts.size());
  std::vector<std::vector<CurveScalar>> logs(np);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < np; ++i) logs[i] = euler_log_contribution(X, rho1, rho2, *pts[i], order);
  return exp_of_logs(logs, order);
}

TruncatedSeries<CurveScalar> l_function_serial(const EllipticCurve& X, const Character& rho1, const Character& rho2,
                                               int order, const std::function<bool(const ClosedPoint&)>& keep) {
  std::vector<std::vector<CurveScalar>> logs;
  for (auto* x : points_up_to(X, order, keep)) logs.push_back(euler_log_contribution(X, rho1, rho2, *x, order));
  return exp_of_logs(logs, order);
}

TruncatedSeries<CurveScalar> zeta_at_power(const EllipticCurve& X, int n, int order) {
  TruncatedSeries<CurveScalar> out(order);
  auto z = X.zeta_series(n, order / n);
  for (int k = 0; k * n <= order; ++k) out[k * n] = CurveScalar(Rat(z[k]));
  return out;
}

TruncatedSeries<CurveScalar> character_l_function(const EllipticCurve& X, const Character& rho, int order) {
  if (rho.is_trivial()) throw std::invalid_argument("character_l_function: character must be nontrivial");
  int m = rho.level;
  TruncatedSeries<CurveScalar> out(order);
  out[0] = CurveScalar(1);
  for (int e = 1; e <= order; ++e) {
    int L = m * e;
    std::set<Point> seen;
    for (const Point& P : X.points(L)) {
      if (seen.count(P)) continue;
      // Orbit of P under the Frobenius of F_{q^m}.
      int size = 0;
      Point Q = P;
      do {
        seen.insert(Q);
        Q = X.frobenius(L, Q, m);
        ++size;
      } while (!(Q == P));
      if (size != e) continue;
      CurveScalar c = X.evaluate(rho, X.norm(m, L, P)).scalar();
      // out *= (1 - c t^e)
      for (int i = order; i >= e; --i) out[i] -= c * out[i - e];
    }
  }
  return out;
}

CuspCensus cusp_census(const EllipticCurve& X, int n) {
  CuspCensus c;
  c.n = n;
  c.by_orbits = static_cast<long>(X.primitive_orbits(n).size());
  long excl = static_cast<long>(X.primitive_by_norm_exclusion(n).size());
  if (excl % n != 0) throw std::logic_error("cusp_census: primitive characters not a union of full orbits");
  c.by_norm_exclusion = excl / n;
  c.closed_points = static_cast<long>(X.closed_points(n).size());
  return c;
}

long cusp_dimension(const EllipticCurve& X, int n, int d) {
  if (n < 1) throw std::invalid_argument("cusp_dimension: n must be positive");
  if (d % n != 0) return 0;
  return static_cast<long>(X.primitive_orbits(n).size());
}

namespace {

using TorsionP = TorsionElement<ModP>;

// Rank of the rows over F_p; each row is a sparse map column -> value.
long rank_mod_p(std::vector<std::map<TorsionMonomial, std::int64_t>> rows, std::int64_t p) {
  long rank = 0;
  std::vector<std::map<TorsionMonomial, std::int64_t>> basis;  // pivot = first key
  for (auto& r : rows) {
    for (auto& b : basis) {
      auto it = r.find(b.begin()->first);
      if (it == r.end()) continue;
      std::int64_t f = it->second * powmod(b.begin()->second, p - 2, p) % p;
      for (auto& [k, val] : b) {
        std::int64_t& t = r[k];
        t = ((t - f * val) % p + p) % p;
        if (t == 0) r.erase(k);
      }
    }
    if (r.empty()) continue;
    ++rank;
    // Keep basis rows sorted by pivot so later reductions see the leading key first.
    basis.push_back(std::move(r));
    std::sort(basis.begin(), basis.end(), [](auto& a, auto& b) { return a.begin()->first < b.begin()->first; });
  }
  return rank;
}

// Torsion basis sheaves of degree D: coefficient of t^D in prod_x sum_k p(k) t^{k|x|}.
long torsion_dimension(const EllipticCurve& X, int D) {
  std::vector<long> f(D + 1, 0), part(D + 1, 0);
  f[0] = 1;
  for (int k = 0; k <= D; ++k) part[k] = static_cast<long>(Partition::all(k).size());
  for (int deg = 1; deg <= D; ++deg)
    for (size_t c = 0; c < X.closed_points(deg).size(); ++c) {
      std::vector<long> g(D + 1, 0);
      for (int i = 0; i <= D; ++i)
        for (int k = 0; i + k * deg <= D; ++k) g[i + k * deg] += f[i] * part[k];
      f = std::move(g);
    }
  return f[D];
}

}  // namespace

IndependenceReport multiplicity_one_ranks(const EllipticCurve& X, int max_degree) {
  long q = X.q();
  struct Gen {
    int degree;
    Torsion value;
  };
  std::vector<Gen> gens;
  IndependenceReport rep;
  rep.generators_per_degree.assign(max_degree, 0);
  for (int n = 1; n <= max_degree; ++n)
    for (auto& o : X.primitive_orbits(n))
      for (int k = 1; n * k <= max_degree; ++k) {
        gens.push_back({n * k, T0_twisted(X, X.norm(o.rep(), n * k), n * k)});
        rep.generators_per_degree[n * k - 1]++;
      }

  int M = 1;
  for (auto& g : gens)
    for (auto& [m, c] : g.value.terms()) M = std::lcm(M, c.M());
  // Any prime where all coefficients are defined certifies rank over Q(zeta_M, sqrt q).
  std::vector<TorsionP> pg;
  ModPEmbedding emb;
  for (std::int64_t start = 100003;; start = emb.p + 1) {
    emb = ModPEmbedding::find(M, q, start);
    try {
      pg.clear();
      for (auto& g : gens) pg.push_back(g.value.map_coefficients<ModP>([&](const CurveScalar& c) { return emb(c); }));
      break;
    } catch (const std::domain_error&) {
    }
  }

  // Monomials as non-decreasing generator index lists, grouped by degree.
  std::vector<std::vector<std::pair<std::vector<int>, TorsionP>>> mons(max_degree + 1);
  mons[0].push_back({{}, TorsionP::one(q)});
  for (int D = 1; D <= max_degree; ++D) {
    for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
      int rest = D - gens[i].degree;
      if (rest < 0) continue;
      for (auto& [idx, val] : mons[rest]) {
        if (!idx.empty() && idx.back() > i) continue;
        auto nidx = idx;
        nidx.push_back(i);
        mons[D].push_back({std::move(nidx), val * pg[i]});
      }
    }
    std::vector<std::map<TorsionMonomial, std::int64_t>> rows;
    for (auto& [idx, val] : mons[D]) {
      std::map<TorsionMonomial, std::int64_t> r;
      for (auto& [m, c] : val.terms())
        if (!c.is_zero()) r[m] = c.value();
      rows.push_back(std::move(r));
    }
    IndependenceRow row;
    row.degree = D;
    row.monomials = static_cast<long>(mons[D].size());
    row.dimension = torsion_dimension(X, D);
    row.rank = rank_mod_p(std::move(rows), emb.p);
    row.prime = emb.p;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ehall
