#include "ehall/symfun.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace ehall {

namespace {

using Matrix = std::vector<std::vector<mpq_class>>;

Matrix invert(Matrix a) {
  const size_t n = a.size();
  Matrix inv(n, std::vector<mpq_class>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (a[r][c] != 0) { piv = r; break; }
    if (piv == n) throw std::logic_error("invert: singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    mpq_class k = 1 / a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] *= k;
      inv[c][j] *= k;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

mpq_class u_power_even(long e2, long q) {
  // u^{e2} with e2 even, u^2 = 1/q
  mpz_class qe;
  mpz_ui_pow_ui(qe.get_mpz_t(), q, std::labs(e2) / 2);
  return e2 >= 0 ? mpq_class(1, 1) / mpq_class(qe) : mpq_class(qe);
}

// Image of [I_lambda] for all lambda of size n, and the inverse matrix, cached per (q, n).
struct PsiData {
  std::vector<Partition> parts;
  std::vector<SymFun> image;              // Psi(I_lambda)
  std::vector<Partition> pbasis;          // same list, used as p-basis index
  Matrix to_hall;                         // row rho: coefficients of Psi^{-1}(p_rho) on I_lambda
};

const PsiData& psi_data(long q, int n) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::shared_ptr<const PsiData>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({q, n});
    if (it != cache.end()) return *it->second;
  }
  auto d = std::make_shared<PsiData>();
  d->parts = Partition::all(n);
  const size_t N = d->parts.size();
  // Products E_{mu_1} ... E_{mu_l}, E_k = [I_{(1^k)}], expanded in the I-basis.
  Matrix prod(N, std::vector<mpq_class>(N, 0));
  std::vector<SymFun> prod_image(N);
  for (size_t i = 0; i < N; ++i) {
    const Partition& mu = d->parts[i];
    auto acc = DvrHallElement<mpq_class>::one(q);
    SymFun img = SymFun::p(Partition(), 1);
    for (int k : mu.parts()) {
      acc = acc * DvrHallElement<mpq_class>::basis(Partition(std::vector<int>(k, 1)), q);
      img = img * SymFun::elementary(k).scaled(u_power_even(static_cast<long>(k) * (k - 1), q));
    }
    for (size_t j = 0; j < N; ++j) prod[i][j] = acc.coefficient(d->parts[j]);
    prod_image[i] = img;
  }
  // prod[mu][lambda] = coefficient of I_lambda in E_mu, so I_lambda = sum_mu inv[lambda][mu] E_mu
  Matrix inv = invert(prod);
  d->image.assign(N, SymFun());
  for (size_t l = 0; l < N; ++l)
    for (size_t m = 0; m < N; ++m)
      if (inv[l][m] != 0) d->image[l] = d->image[l] + prod_image[m].scaled(inv[l][m]);
  // inverse: B[lambda][rho] = coefficient of p_rho in Psi(I_lambda)
  d->pbasis = d->parts;
  Matrix B(N, std::vector<mpq_class>(N, 0));
  for (size_t l = 0; l < N; ++l)
    for (size_t r = 0; r < N; ++r) {
      auto it = d->image[l].terms().find(d->pbasis[r]);
      if (it != d->image[l].terms().end()) B[l][r] = it->second;
    }
  Matrix Binv = invert(B);  // p_rho = sum_lambda Binv[rho][lambda] Psi(I_lambda)
  d->to_hall = Binv;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{q, n}];
  if (!slot) slot = d;
  return *slot;
}

}  // namespace

void SymFun::add_term(const Partition& rho, const mpq_class& c) {
  if (c == 0) return;
  auto it = c_.find(rho);
  if (it == c_.end()) {
    c_.emplace(rho, c);
  } else {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

SymFun SymFun::p(const Partition& rho, const mpq_class& c) {
  SymFun f;
  f.add_term(rho, c);
  return f;
}

mpz_class z_factor(const Partition& rho) {
  mpz_class z = 1;
  auto m = rho.multiplicities();
  for (size_t i = 1; i < m.size(); ++i)
    for (int k = 1; k <= m[i]; ++k) z *= mpz_class(static_cast<long>(i)) * k;
  return z;
}

SymFun SymFun::elementary(int k) {
  SymFun f;
  for (auto& rho : Partition::all(k)) {
    int sign = (k - rho.length()) % 2 == 0 ? 1 : -1;
    f.add_term(rho, mpq_class(sign, 1) / mpq_class(z_factor(rho)));
  }
  if (k == 0) f.add_term(Partition(), 1);
  return f;
}

SymFun SymFun::operator+(const SymFun& o) const {
  SymFun r = *this;
  for (auto& [k, c] : o.c_) r.add_term(k, c);
  return r;
}

SymFun SymFun::operator-(const SymFun& o) const { return *this + o.scaled(-1); }

SymFun SymFun::operator*(const SymFun& o) const {
  SymFun r;
  for (auto& [a, x] : c_)
    for (auto& [b, y] : o.c_) {
      std::vector<int> parts = a.parts();
      parts.insert(parts.end(), b.parts().begin(), b.parts().end());
      r.add_term(Partition(parts), x * y);
    }
  return r;
}

SymFun SymFun::scaled(const mpq_class& c) const {
  SymFun r;
  for (auto& [k, x] : c_) r.add_term(k, x * c);
  return r;
}

std::string SymFun::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (auto& [k, c] : c_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.get_str() + ")*p" + k.to_string();
  }
  return s;
}

SymFun macdonald_psi(const DvrHallElement<mpq_class>& a) {
  SymFun out;
  for (auto& [l, c] : a.terms()) {
    const PsiData& d = psi_data(a.q(), l.size());
    size_t i = std::find(d.parts.begin(), d.parts.end(), l) - d.parts.begin();
    out = out + d.image[i].scaled(c);
  }
  return out;
}

DvrHallElement<mpq_class> macdonald_psi_inverse(const SymFun& f, long q) {
  DvrHallElement<mpq_class> out(q);
  for (auto& [rho, c] : f.terms()) {
    const PsiData& d = psi_data(q, rho.size());
    size_t r = std::find(d.pbasis.begin(), d.pbasis.end(), rho) - d.pbasis.begin();
    for (size_t l = 0; l < d.parts.size(); ++l)
      if (d.to_hall[r][l] != 0) out.add_term(d.parts[l], c * d.to_hall[r][l]);
  }
  return out;
}

}  // namespace ehall
