#include "ehall/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace ehall {

LaurentPoly::LaurentPoly(const Rat& c) {
  if (c != 0) terms_.push_back({{0, 0}, c});
  for (auto& t : terms_) t.second.canonicalize();
}

LaurentPoly LaurentPoly::monomial(int i, int j, const Rat& c) {
  LaurentPoly p;
  if (c != 0) p.terms_.push_back({{i, j}, c});
  for (auto& t : p.terms_) t.second.canonicalize();
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exp{0, 0});
}

LaurentPoly::Exp LaurentPoly::min_exponents() const {
  if (terms_.empty()) return {0, 0};
  Exp m = terms_[0].first;
  for (auto& [e, c] : terms_) {
    m[0] = std::min(m[0], e[0]);
    m[1] = std::min(m[1], e[1]);
  }
  return m;
}

LaurentPoly::Exp LaurentPoly::max_exponents() const {
  if (terms_.empty()) return {0, 0};
  Exp m = terms_[0].first;
  for (auto& [e, c] : terms_) {
    m[0] = std::max(m[0], e[0]);
    m[1] = std::max(m[1], e[1]);
  }
  return m;
}

LaurentPoly LaurentPoly::shifted(int di, int dj) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) {
    t.first[0] += di;
    t.first[1] += dj;
  }
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
  if (c == 0) return {};
  Rat k = c;
  k.canonicalize();
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second *= k;
  return r;
}

LaurentPoly LaurentPoly::from_map(const std::map<Exp, Rat, std::greater<Exp>>& m) {
  LaurentPoly r;
  r.terms_.reserve(m.size());
  for (auto& [e, c] : m)
    if (c != 0) r.terms_.push_back({e, c});
  return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first > o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first > terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rat c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.push_back({terms_[i].first, c});
      ++i;
      ++j;
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::map<Exp, Rat, std::greater<Exp>> acc;
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) acc[{e1[0] + e2[0], e1[1] + e2[1]}] += c1 * c2;
  return from_map(acc);
}

LaurentPoly LaurentPoly::divexact(const LaurentPoly& o) const {
  if (o.is_zero()) throw std::domain_error("LaurentPoly::divexact: division by zero");
  if (is_zero()) return {};
  Exp lo{min_exponents()[0] - o.min_exponents()[0], min_exponents()[1] - o.min_exponents()[1]};
  std::map<Exp, Rat, std::greater<Exp>> rem;
  for (auto& [e, c] : terms_) rem[e] = c;
  std::map<Exp, Rat, std::greater<Exp>> quo;
  const auto& [le, lc] = o.terms_.front();
  while (!rem.empty()) {
    auto it = rem.begin();
    Exp qe{it->first[0] - le[0], it->first[1] - le[1]};
    if (qe[0] < lo[0] || qe[1] < lo[1])
      throw std::logic_error("LaurentPoly::divexact: not an exact division");
    Rat qc = it->second / lc;
    quo[qe] += qc;
    for (auto& [e, c] : o.terms_) {
      Exp te{qe[0] + e[0], qe[1] + e[1]};
      auto jt = rem.find(te);
      if (jt == rem.end()) {
        rem[te] = -qc * c;
      } else {
        jt->second -= qc * c;
        if (jt->second == 0) rem.erase(jt);
      }
    }
  }
  return from_map(quo);
}

LaurentPoly LaurentPoly::inverted_variables() const {
  std::map<Exp, Rat, std::greater<Exp>> m;
  for (auto& [e, c] : terms_) m[{-e[0], -e[1]}] = c;
  return from_map(m);
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    Rat a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool mono = e[0] != 0 || e[1] != 0;
    if (!mono || a != 1) {
      os << a.get_str();
      if (mono) os << "*";
    }
    bool need_star = false;
    if (e[0] != 0) {
      os << "s";
      if (e[0] != 1) os << "^" << e[0];
      need_star = true;
    }
    if (e[1] != 0) {
      if (need_star) os << "*";
      os << "sb";
      if (e[1] != 1) os << "^" << e[1];
    }
  }
  return os.str();
}

Rat primitive_normalizer(const LaurentPoly& p) {
  if (p.is_zero()) return 1;
  Int l = 1;
  for (auto& [e, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Int g = 0;
  for (auto& [e, c] : p.terms()) {
    Int v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rat r(l, g);
  r.canonicalize();
  if (p.leading().second < 0) r = -r;
  return r;
}

namespace {

// Dense univariate polynomials over Z, coefficient i is the coefficient of x^i.
using UPoly = std::vector<Int>;
// Dense polynomials in s with coefficients in Z[sb].
using BPoly = std::vector<UPoly>;

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
void trim(BPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

int deg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }
int deg(const BPoly& a) { return static_cast<int>(a.size()) - 1; }

Int content(const UPoly& a) {
  Int g = 0;
  for (auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

UPoly divexact_scalar(UPoly a, const Int& c) {
  for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return a;
}

UPoly primitive_part(const UPoly& a) {
  if (a.empty()) return a;
  Int g = content(a);
  UPoly r = divexact_scalar(a, g);
  if (r.back() < 0)
    for (auto& x : r) x = -x;
  return r;
}

UPoly prem(UPoly a, const UPoly& b) {
  while (!a.empty() && deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    Int la = a.back();
    const Int& lb = b.back();
    for (auto& x : a) x *= lb;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

UPoly udivexact(UPoly a, const UPoly& b) {
  if (a.empty()) return {};
  UPoly q(deg(a) - deg(b) + 1, 0);
  while (!a.empty() && deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    Int c;
    mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("udivexact: nonzero remainder");
  trim(q);
  return q;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    if (!a.empty() && a.back() < 0)
      for (auto& x : a) x = -x;
    return a;
  }
  Int ca = content(a), cb = content(b);
  Int c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = primitive_part(a);
  b = primitive_part(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    UPoly r = prem(a, b);
    a = b;
    b = primitive_part(r);
  }
  a = primitive_part(a);
  for (auto& x : a) x *= c;
  return a;
}

UPoly bcontent(const BPoly& a) {
  UPoly g;
  for (auto& c : a) {
    if (c.empty()) continue;
    g = ugcd(g, c);
    if (g.size() == 1 && g[0] == 1) break;
  }
  return g;
}

BPoly bdiv_by_upoly(const BPoly& a, const UPoly& c) {
  BPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = udivexact(a[i], c);
  return r;
}

BPoly bprem(BPoly a, const BPoly& b) {
  while (!a.empty() && deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    UPoly la = a.back();
    const UPoly& lb = b.back();
    for (auto& x : a) x = mul(x, lb);
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] = sub(a[i + shift], mul(la, b[i]));
    trim(a);
  }
  return a;
}

BPoly bpp(const BPoly& a) {
  if (a.empty()) return a;
  return bdiv_by_upoly(a, bcontent(a));
}

BPoly bgcd(BPoly a, BPoly b) {
  trim(a);
  trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  UPoly c = ugcd(bcontent(a), bcontent(b));
  a = bpp(a);
  b = bpp(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    BPoly r = bprem(a, b);
    a = b;
    b = bpp(r);
  }
  a = bpp(a);
  for (auto& x : a) x = mul(x, c);
  if (a.back().back() < 0)
    for (auto& u : a)
      for (auto& x : u) x = -x;
  return a;
}

BPoly to_dense(const LaurentPoly& p) {
  Rat k = primitive_normalizer(p);
  auto mx = p.max_exponents();
  BPoly r(mx[0] + 1);
  for (auto& [e, c] : p.terms()) {
    if (e[0] < 0 || e[1] < 0) throw std::logic_error("to_dense: negative exponent");
    UPoly& u = r[e[0]];
    if (u.size() <= static_cast<size_t>(e[1])) u.resize(e[1] + 1, 0);
    Rat v = c * k;
    u[e[1]] = v.get_num();
  }
  for (auto& u : r) trim(u);
  trim(r);
  return r;
}

LaurentPoly from_dense(const BPoly& a) {
  LaurentPoly r;
  for (size_t i = a.size(); i-- > 0;) {
    LaurentPoly row;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0)
        row = row + LaurentPoly::monomial(static_cast<int>(i), static_cast<int>(j), Rat(a[i][j]));
    r = r + row;
  }
  return r;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  BPoly g = bgcd(to_dense(a), to_dense(b));
  return from_dense(g);
}

}  // namespace ehall
