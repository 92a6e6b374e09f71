#include "ehall/curve.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ehall {

namespace {

long mod(long a, long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

RootOfUnity RootOfUnity::make(long num, long den) {
  if (den <= 0) throw std::invalid_argument("RootOfUnity: bad order");
  num = mod(num, den);
  long g = std::gcd(num, den);
  if (g == 0) g = den;
  return {num / g, den / g};
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  long l = std::lcm(den, o.den);
  return make(num * (l / den) + o.num * (l / o.den), l);
}

long PicardGroup::index_of(const Point& P) const {
  auto it = std::lower_bound(points.begin(), points.end(), P);
  if (it == points.end() || !(*it == P)) throw std::invalid_argument("PicardGroup: point not in group");
  return it - points.begin();
}

bool Character::is_trivial() const {
  for (long x : c)
    if (x != 0) return false;
  return true;
}

std::string Character::to_string() const {
  std::string s = "chi" + std::to_string(level) + "[";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

EllipticCurve::EllipticCurve(long q, std::array<long, 5> a) : q_(q), a_(a) {
  if (q < 2) throw std::invalid_argument("EllipticCurve: q must be a prime power");
  auto f = prime_factors(q);
  if (f.size() != 1) throw std::invalid_argument("EllipticCurve: q must be a prime power");
  p_ = f[0];
  e_ = 0;
  for (long t = q; t > 1; t /= p_) ++e_;
  for (long c : a_)
    if (c < 0 || c >= q_) throw std::invalid_argument("EllipticCurve: coefficient out of range");
  if (discriminant() == 0) throw std::invalid_argument("EllipticCurve: singular curve (discriminant 0)");
}

EllipticCurve EllipticCurve::E1() { return EllipticCurve(2, {0, 0, 1, 0, 0}); }
EllipticCurve EllipticCurve::E2() { return EllipticCurve(5, {0, 0, 0, 1, 1}); }

EllipticCurve EllipticCurve::from_config(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long q = -1;
  std::array<long, 5> a{0, 0, 0, 0, 0};
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("curve config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    long v;
    try {
      size_t used = 0;
      v = std::stol(val, &used);
      if (used != val.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("curve config line " + std::to_string(lineno) + ": bad integer '" + val + "'");
    }
    static const std::map<std::string, int> idx = {{"a1", 0}, {"a2", 1}, {"a3", 2}, {"a4", 3}, {"a6", 4}};
    if (key == "q") {
      q = v;
    } else if (idx.count(key)) {
      a[idx.at(key)] = v;
    } else {
      throw std::invalid_argument("curve config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (q < 0) throw std::invalid_argument("curve config: missing q");
  return EllipticCurve(q, a);
}

std::string EllipticCurve::describe() const {
  std::ostringstream os;
  os << "q=" << q_ << " a1=" << a_[0] << " a2=" << a_[1] << " a3=" << a_[2] << " a4=" << a_[3] << " a6=" << a_[4];
  return os.str();
}

const FiniteField& EllipticCurve::field(int n) const { return FiniteField::get(p_, e_ * n); }

Elem EllipticCurve::coefficient(int i, int n) const {
  int k = i == 6 ? 4 : i - 1;
  if (i < 1 || i > 6 || i == 5) throw std::invalid_argument("coefficient: index must be 1,2,3,4,6");
  return field(n).embed(field(1), static_cast<Elem>(a_[k]));
}

Elem EllipticCurve::discriminant() const {
  const FiniteField& F = field(1);
  Elem a1 = a_[0], a2 = a_[1], a3 = a_[2], a4 = a_[3], a6 = a_[4];
  auto c = [&](long k) { return F.from_int(k); };
  auto m = [&](Elem x, Elem y) { return F.mul(x, y); };
  auto ad = [&](Elem x, Elem y) { return F.add(x, y); };
  Elem b2 = ad(m(a1, a1), m(c(4), a2));
  Elem b4 = ad(m(c(2), a4), m(a1, a3));
  Elem b6 = ad(m(a3, a3), m(c(4), a6));
  Elem b8 = F.sub(ad(ad(m(m(a1, a1), a6), m(c(4), m(a2, a6))), m(a2, m(a3, a3))), ad(m(a1, m(a3, a4)), m(a4, a4)));
  Elem d = F.neg(m(m(b2, b2), b8));
  d = F.sub(d, m(c(8), m(b4, m(b4, b4))));
  d = F.sub(d, m(c(27), m(b6, b6)));
  d = ad(d, m(c(9), m(b2, m(b4, b6))));
  return d;
}

long EllipticCurve::trace() const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->have_trace) return cache_->trace;
  }
  long n = static_cast<long>(points(1).size());
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->trace = q_ + 1 - n;
  cache_->have_trace = true;
  return cache_->trace;
}

Int EllipticCurve::trace_power(int n) const {
  Int t0 = 2, t1 = trace();
  if (n == 0) return t0;
  for (int k = 2; k <= n; ++k) {
    Int t2 = Int(trace()) * t1 - Int(q_) * t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

Int EllipticCurve::count_from_trace(int n) const {
  Int qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), q_, n);
  return qn + 1 - trace_power(n);
}

bool EllipticCurve::on_curve(int n, const Point& P) const {
  if (P.inf) return true;
  const FiniteField& F = field(n);
  Elem a1 = coefficient(1, n), a2 = coefficient(2, n), a3 = coefficient(3, n), a4 = coefficient(4, n), a6 = coefficient(6, n);
  Elem x = P.x, y = P.y;
  Elem lhs = F.add(F.mul(y, y), F.mul(y, F.add(F.mul(a1, x), a3)));
  Elem x2 = F.mul(x, x);
  Elem rhs = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6));
  return lhs == rhs;
}

std::vector<Point> EllipticCurve::enumerate_points(int n) const {
  const FiniteField& F = field(n);
  Elem a1 = coefficient(1, n), a2 = coefficient(2, n), a3 = coefficient(3, n), a4 = coefficient(4, n), a6 = coefficient(6, n);
  const long Q = F.size();
  const Elem two = F.from_int(2), four = F.from_int(4);
  std::vector<Point> all{Point::infinity()};
#pragma omp parallel
  {
    std::vector<Point> local;
#pragma omp for schedule(static)
    for (long xi = 0; xi < Q; ++xi) {
      Elem x = static_cast<Elem>(xi);
      Elem b = F.add(F.mul(a1, x), a3);
      Elem x2 = F.mul(x, x);
      Elem rhs = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6));
      if (p_ == 2) {
        if (b == 0) {
          local.push_back(Point::affine(x, F.sqrt(rhs)[0]));
        } else {
          Elem w = F.div(rhs, F.mul(b, b));
          long z = F.artin_schreier_root(w);
          if (z >= 0) {
            Elem z0 = static_cast<Elem>(z);
            local.push_back(Point::affine(x, F.mul(b, z0)));
            local.push_back(Point::affine(x, F.mul(b, F.add(z0, 1))));
          }
        }
      } else {
        Elem disc = F.add(F.mul(b, b), F.mul(four, rhs));
        Elem half = F.inv(two);
        for (Elem s : F.sqrt(disc)) {
          local.push_back(Point::affine(x, F.mul(F.sub(s, b), half)));
          if (s == 0) break;
        }
      }
    }
#pragma omp critical
    all.insert(all.end(), local.begin(), local.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Point> EllipticCurve::enumerate_points_reference(int n) const {
  const FiniteField& F = field(n);
  std::vector<Point> all{Point::infinity()};
  for (long x = 0; x < F.size(); ++x)
    for (long y = 0; y < F.size(); ++y) {
      Point P = Point::affine(static_cast<Elem>(x), static_cast<Elem>(y));
      if (on_curve(n, P)) all.push_back(P);
    }
  return all;
}

const std::vector<Point>& EllipticCurve::points(int n) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->points.find(n);
    if (it != cache_->points.end()) return *it->second;
  }
  auto pts = std::make_shared<const std::vector<Point>>(enumerate_points(n));
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& slot = cache_->points[n];
  if (!slot) slot = pts;
  return *slot;
}

Point EllipticCurve::neg(int n, const Point& P) const {
  if (P.inf) return P;
  const FiniteField& F = field(n);
  Elem t = F.add(F.mul(coefficient(1, n), P.x), coefficient(3, n));
  return Point::affine(P.x, F.neg(F.add(P.y, t)));
}

Point EllipticCurve::add(int n, const Point& P, const Point& Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const FiniteField& F = field(n);
  Elem a1 = coefficient(1, n), a2 = coefficient(2, n), a3 = coefficient(3, n), a4 = coefficient(4, n), a6 = coefficient(6, n);
  Elem lambda, nu;
  if (P.x == Q.x) {
    if (F.add(F.add(P.y, Q.y), F.add(F.mul(a1, Q.x), a3)) == 0) return Point::infinity();
    Elem den = F.add(F.add(F.mul(F.from_int(2), P.y), F.mul(a1, P.x)), a3);
    Elem x2 = F.mul(P.x, P.x);
    Elem num = F.sub(F.add(F.add(F.mul(F.from_int(3), x2), F.mul(F.from_int(2), F.mul(a2, P.x))), a4), F.mul(a1, P.y));
    lambda = F.div(num, den);
    Elem nnum = F.sub(F.add(F.add(F.neg(F.mul(x2, P.x)), F.mul(a4, P.x)), F.mul(F.from_int(2), a6)), F.mul(a3, P.y));
    nu = F.div(nnum, den);
  } else {
    Elem dx = F.sub(Q.x, P.x);
    lambda = F.div(F.sub(Q.y, P.y), dx);
    nu = F.div(F.sub(F.mul(P.y, Q.x), F.mul(Q.y, P.x)), dx);
  }
  Elem x3 = F.sub(F.sub(F.sub(F.add(F.mul(lambda, lambda), F.mul(a1, lambda)), a2), P.x), Q.x);
  Elem y3 = F.sub(F.sub(F.neg(F.mul(F.add(lambda, a1), x3)), nu), a3);
  return Point::affine(x3, y3);
}

Point EllipticCurve::mul(int n, const Point& P, long k) const {
  if (k < 0) return mul(n, neg(n, P), -k);
  Point r = Point::infinity(), b = P;
  while (k > 0) {
    if (k & 1) r = add(n, r, b);
    b = add(n, b, b);
    k >>= 1;
  }
  return r;
}

Point EllipticCurve::frobenius(int n, const Point& P, int j) const {
  if (P.inf) return P;
  const FiniteField& F = field(n);
  int jj = static_cast<int>(mod(j, n));
  return Point::affine(F.frobenius(P.x, e_ * jj), F.frobenius(P.y, e_ * jj));
}

Point EllipticCurve::embed(int m, int n, const Point& P) const {
  if (n % m != 0) throw std::invalid_argument("embed: level must divide");
  if (P.inf || m == n) return P;
  const FiniteField& F = field(n);
  const FiniteField& S = field(m);
  return Point::affine(F.embed(S, P.x), F.embed(S, P.y));
}

bool EllipticCurve::defined_over(int m, int n, const Point& P) const {
  if (n % m != 0) throw std::invalid_argument("defined_over: level must divide");
  if (P.inf) return true;
  return field(n).lies_in(field(m), P.x) && field(n).lies_in(field(m), P.y);
}

Point EllipticCurve::descend(int n, int m, const Point& P) const {
  if (P.inf || m == n) return P;
  const FiniteField& F = field(n);
  const FiniteField& S = field(m);
  return Point::affine(F.descend(S, P.x), F.descend(S, P.y));
}

Point EllipticCurve::norm(int m, int n, const Point& P) const {
  if (m <= 0 || n % m != 0) throw std::invalid_argument("norm: m must divide n");
  Point s = Point::infinity();
  for (int i = 0; i < n / m; ++i) s = add(n, s, frobenius(n, P, m * i));
  return descend(n, m, s);
}

const PicardGroup& EllipticCurve::picard(int n) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->picard.find(n);
    if (it != cache_->picard.end()) return *it->second;
  }
  auto G = std::make_shared<PicardGroup>();
  G->level = n;
  G->points = points(n);
  const long N = static_cast<long>(G->points.size());
  auto primes = prime_factors(N);
  auto order_of = [&](const Point& P) {
    long o = N;
    for (long r : primes)
      while (o % r == 0 && mul(n, P, o / r).inf) o /= r;
    return o;
  };
  std::vector<long> ord(N);
  long d2 = 1;
  Point g1 = Point::infinity();
  for (long i = 0; i < N; ++i) {
    ord[i] = order_of(G->points[i]);
    if (ord[i] > d2) {
      d2 = ord[i];
      g1 = G->points[i];
    }
  }
  long d1 = N / d2;
  G->dlog.assign(N, {});
  if (d1 == 1) {
    G->generators = {g1};
    G->divisors = {d2};
    Point cur = Point::infinity();
    for (long j = 0; j < d2; ++j) {
      G->dlog[G->index_of(cur)] = {j};
      cur = add(n, cur, g1);
    }
  } else {
    std::vector<char> inH(N, 0);
    Point cur = Point::infinity();
    for (long j = 0; j < d2; ++j) {
      inH[G->index_of(cur)] = 1;
      cur = add(n, cur, g1);
    }
    auto dprimes = prime_factors(d1);
    Point g2 = Point::infinity();
    bool found = false;
    for (long i = 0; i < N && !found; ++i) {
      if (ord[i] != d1) continue;
      bool ok = true;
      for (long r : dprimes)
        if (inH[G->index_of(mul(n, G->points[i], d1 / r))]) { ok = false; break; }
      if (ok) {
        g2 = G->points[i];
        found = true;
      }
    }
    if (!found) throw std::logic_error("picard: no complement generator found");
    G->generators = {g2, g1};
    G->divisors = {d1, d2};
    Point row = Point::infinity();
    for (long i = 0; i < d1; ++i) {
      Point c = row;
      for (long j = 0; j < d2; ++j) {
        G->dlog[G->index_of(c)] = {i, j};
        c = add(n, c, g1);
      }
      row = add(n, row, g2);
    }
  }
  for (auto& v : G->dlog)
    if (v.empty()) throw std::logic_error("picard: discrete-log table incomplete");
  G->exponent = d2;
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& slot = cache_->picard[n];
  if (!slot) slot = G;
  return *slot;
}

std::vector<Character> EllipticCurve::characters(int n) const {
  const PicardGroup& G = picard(n);
  std::vector<Character> out;
  std::vector<long> c(G.divisors.size(), 0);
  while (true) {
    out.push_back({n, c});
    size_t i = 0;
    while (i < c.size() && ++c[i] == G.divisors[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

RootOfUnity EllipticCurve::evaluate(const Character& rho, const Point& P) const {
  const PicardGroup& G = picard(rho.level);
  const auto& e = G.exponents(P);
  RootOfUnity r;
  for (size_t i = 0; i < e.size(); ++i) r = r * RootOfUnity::make(rho.c[i] * e[i], G.divisors[i]);
  return r;
}

Character EllipticCurve::character_from_values(int n, const std::vector<RootOfUnity>& vals) const {
  const PicardGroup& G = picard(n);
  Character chi{n, std::vector<long>(G.divisors.size(), 0)};
  for (size_t i = 0; i < vals.size(); ++i) {
    long d = G.divisors[i];
    if ((vals[i].num * d) % vals[i].den != 0) throw std::logic_error("character_from_values: value order does not divide generator order");
    chi.c[i] = mod(vals[i].num * d / vals[i].den, d);
  }
  return chi;
}

Character EllipticCurve::frobenius(const Character& rho, int j) const {
  const PicardGroup& G = picard(rho.level);
  std::vector<RootOfUnity> vals;
  for (auto& g : G.generators) vals.push_back(evaluate(rho, frobenius(rho.level, g, j)));
  return character_from_values(rho.level, vals);
}

Character EllipticCurve::norm(const Character& chi, int n) const {
  int m = chi.level;
  if (n % m != 0) throw std::invalid_argument("norm: level must divide");
  const PicardGroup& G = picard(n);
  std::vector<RootOfUnity> vals;
  for (auto& g : G.generators) vals.push_back(evaluate(chi, norm(m, n, g)));
  return character_from_values(n, vals);
}

std::vector<CharacterOrbit> EllipticCurve::character_orbits(int n) const {
  auto chars = characters(n);
  std::set<Character> seen;
  std::vector<CharacterOrbit> out;
  for (auto& c : chars) {
    if (seen.count(c)) continue;
    CharacterOrbit o;
    o.level = n;
    Character cur = c;
    do {
      o.members.push_back(cur);
      seen.insert(cur);
      cur = frobenius(cur, 1);
    } while (!(cur == c));
    out.push_back(o);
  }
  return out;
}

std::vector<CharacterOrbit> EllipticCurve::primitive_orbits(int n) const {
  std::vector<CharacterOrbit> out;
  for (auto& o : character_orbits(n))
    if (o.size() == n) out.push_back(o);
  return out;
}

std::vector<Character> EllipticCurve::primitive_by_norm_exclusion(int n) const {
  std::set<Character> excluded;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    for (auto& chi : characters(d)) excluded.insert(norm(chi, n));
  }
  std::vector<Character> out;
  for (auto& c : characters(n))
    if (!excluded.count(c)) out.push_back(c);
  return out;
}

const std::vector<ClosedPoint>& EllipticCurve::closed_points(int d) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->closed.find(d);
    if (it != cache_->closed.end()) return *it->second;
  }
  auto out = std::make_shared<std::vector<ClosedPoint>>();
  std::set<Point> seen;
  for (const Point& P : points(d)) {
    if (seen.count(P)) continue;
    bool lower = false;
    for (int e = 1; e < d && !lower; ++e)
      if (d % e == 0 && defined_over(e, d, P)) lower = true;
    if (lower) continue;
    ClosedPoint x;
    x.degree = d;
    Point cur = P;
    do {
      x.orbit.push_back(cur);
      seen.insert(cur);
      cur = frobenius(d, cur, 1);
    } while (!(cur == P));
    if (static_cast<int>(x.orbit.size()) != d) throw std::logic_error("closed_points: orbit size mismatch");
    x.id = static_cast<long>(out->size());
    out->push_back(x);
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& slot = cache_->closed[d];
  if (!slot) slot = out;
  return *slot;
}

Point EllipticCurve::divisor_class_above(int n, const ClosedPoint& x, int i) const {
  int f = x.degree;
  int L = std::lcm(n, f);
  int d = std::gcd(n, f);
  if (i < 0 || i >= d) throw std::invalid_argument("divisor_class_above: index out of range");
  Point P = embed(f, L, x.orbit[0]);
  return frobenius(n, norm(n, L, P), i);
}

CurveScalar EllipticCurve::tilde_rho(const Character& rho, const ClosedPoint& x, int above) const {
  int n = rho.level;
  Point N = divisor_class_above(n, x, above);
  long M = picard(n).exponent;
  std::vector<long> hist(M, 0);
  for (int i = 0; i < n; ++i) {
    RootOfUnity r = evaluate(rho, frobenius(n, N, i));
    hist[r.num * (M / r.den)]++;
  }
  CurveScalar acc;
  for (long k = 0; k < M; ++k)
    if (hist[k]) acc += CurveScalar::root_of_unity(k, static_cast<int>(M)).scaled(Rat(hist[k], n));
  return acc;
}

std::vector<Int> EllipticCurve::zeta_series(int n, int order) const {
  Int qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), q_, n);
  std::vector<Int> num = {Int(1), -trace_power(n), qn};
  std::vector<Int> out(order + 1, 0);
  for (int k = 0; k <= order; ++k) {
    // coefficient of T^k in 1/((1-T)(1-q^n T)) is 1 + q^n + ... + q^{nk}
    Int den_k = 0, pw = 1;
    for (int j = 0; j <= k; ++j) {
      den_k += pw;
      pw *= qn;
    }
    for (int j = 0; j < 3 && j <= order - k; ++j) out[k + j] += num[j] * den_k;
  }
  return out;
}

}  // namespace ehall
