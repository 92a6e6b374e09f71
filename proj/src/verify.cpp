#include "ehall/verify.hpp"

#include "ehall/autoforms.hpp"
#include "ehall/backends.hpp"
#include "ehall/elliptic_hall.hpp"
#include "ehall/symfun.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace ehall {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

namespace {

// Counts checks and keeps the first violation.
struct Tally {
  long checks = 0;
  bool failed = false;
  std::string where, lhs, rhs;

  template <class L, class R>
  bool expect(bool ok, const std::string& at, const L& l, const R& r) {
    ++checks;
    if (!ok && !failed) {
      failed = true;
      where = at;
      lhs = l();
      rhs = r();
    }
    return ok;
  }
  bool expect_eq(const CurveScalar& a, const CurveScalar& b, const std::string& at) {
    return expect(a == b, at, [&] { return a.to_string(); }, [&] { return b.to_string(); });
  }
  bool expect_true(bool ok, const std::string& at, const std::string& got = "false") {
    return expect(ok, at, [&] { return got; }, [] { return std::string("true"); });
  }
};

std::string pt(const LatticePoint& x) { return x.to_string(); }

LatticePoint random_point(std::mt19937_64& rng, int R) {
  std::uniform_int_distribution<int> d(-R, R);
  LatticePoint x;
  while (x.is_zero()) x = {d(rng), d(rng)};
  return x;
}

std::vector<Partition> partitions_up_to(int k) {
  std::vector<Partition> out;
  for (int s = 1; s <= k; ++s)
    for (auto& p : Partition::all(s)) out.push_back(p);
  return out;
}

void criterion_points_zeta(Tally& t, const VerifyConfig& cfg) {
  for (auto X : {EllipticCurve::E1(), EllipticCurve::E2()}) {
    std::string tag = X.describe();
    for (int n = 1; n <= 6; ++n) {
      Int counted = static_cast<long>(X.enumerate_points(n).size());
      Int rec = X.count_from_trace(n);
      t.expect(counted == rec, tag + " #X(F_q^" + std::to_string(n) + ")", [&] { return counted.get_str(); },
               [&] { return rec.get_str(); });
    }
    int order = cfg.order;
    TruncatedSeries<Rat> g(order, Rat(0));
    for (int k = 1; k <= order; ++k) g[k] = Rat(static_cast<long>(X.points(k).size()), k);
    auto ex = series_exp(g, Rat(1));
    auto z = X.zeta_series(1, order);
    for (int k = 0; k <= order; ++k)
      t.expect(Rat(z[k]) == ex[k], tag + " zeta coefficient t^" + std::to_string(k),
               [&] { return z[k].get_str(); }, [&] { return ex[k].get_str(); });
  }
}

void criterion_hall(Tally& t) {
  auto parts = partitions_up_to(4);
  for (long q : {2L, 3L}) {
    std::string tq = "q=" + std::to_string(q) + " ";
    for (auto& l : partitions_up_to(5))
      t.expect(enumerate_submodule_types(l, q) == enumerate_submodule_types_serial(l, q),
               tq + "parallel enumeration " + l.to_string(), [] { return std::string("parallel"); },
               [] { return std::string("serial"); });
    for (auto& a : parts)
      for (auto& b : parts) {
        if (a.size() + b.size() > 5) continue;
        t.expect(hall_product(a, b, q) == hall_product(b, a, q), tq + a.to_string() + "*" + b.to_string(),
                 [] { return std::string("g^l_{ab}"); }, [] { return std::string("g^l_{ba}"); });
        for (auto& c : parts) {
          if (a.size() + b.size() + c.size() > 5) continue;
          using H = DvrHallElement<mpq_class>;
          H x = H::basis(a, q), y = H::basis(b, q), z = H::basis(c, q);
          t.expect((x * y) * z == x * (y * z), tq + "(" + a.to_string() + b.to_string() + ")" + c.to_string(),
                   [] { return std::string("(ab)c"); }, [] { return std::string("a(bc)"); });
        }
      }
    for (auto& l : partitions_up_to(3)) {
      mpz_class f = aut_count(l, q), b = aut_count_bruteforce(l, q);
      t.expect(f == b, tq + "aut " + l.to_string(), [&] { return f.get_str(); }, [&] { return b.get_str(); });
    }
  }
}

void criterion_macdonald(Tally& t) {
  using H = DvrHallElement<mpq_class>;
  for (long q : {2L, 3L}) {
    std::string tq = "q=" + std::to_string(q) + " ";
    auto parts = partitions_up_to(3);
    for (auto& a : parts)
      for (auto& b : parts) {
        if (a.size() + b.size() > 4) continue;
        H x = H::basis(a, q), y = H::basis(b, q);
        SymFun l = macdonald_psi(x * y), r = macdonald_psi(x) * macdonald_psi(y);
        t.expect(l == r, tq + "Psi(" + a.to_string() + "*" + b.to_string() + ")", [&] { return l.to_string(); },
                 [&] { return r.to_string(); });
      }
    for (int r = 1; r <= 4; ++r)
      for (int s = 1; s <= 4; ++s) {
        mpq_class got = F_element<mpq_class>(r, q).green_pair(F_element<mpq_class>(s, q));
        mpz_class qr;
        mpz_ui_pow_ui(qr.get_mpz_t(), q, r);
        // r u^r / (u^-r - u^r) with u^-2 = q is r / (q^r - 1).
        mpq_class want = r == s ? mpq_class(mpz_class(r), qr - 1) : mpq_class(0);
        want.canonicalize();
        t.expect(got == want, tq + "(F_" + std::to_string(r) + ",F_" + std::to_string(s) + ")",
                 [&] { return got.get_str(); }, [&] { return want.get_str(); });
      }
  }
}

void check_report(Tally& t, const RelationReport& rep, const std::string& tag) {
  for (auto& c : rep.checks) t.expect(c.ok, tag + c.name, [&] { return c.residual; }, [] { return std::string("0"); });
}

void criterion_straighten(Tally& t, const VerifyConfig& cfg) {
  for (int n : {1, 2}) {
    std::string tn = "n=" + std::to_string(n) + " ";
    EllipticHallAlgebra<FormalBackend> A(FormalBackend(), n);
    A.set_sign_flip(cfg.sign_flip);
    check_report(t, verify_defining_relations(A, 5), tn);
    std::mt19937_64 rng(cfg.seed * 1000 + n);
    for (int i = 0; i < 200 && !t.failed; ++i) {
      LatticePoint x = random_point(rng, 3), y = random_point(rng, 3), z = random_point(rng, 3);
      auto a = A.generator(x), b = A.generator(y), c = A.generator(z);
      auto l = A.multiply(A.multiply(a, b), c), r = A.multiply(a, A.multiply(b, c));
      t.expect(l == r, tn + "associativity t" + pt(x) + "t" + pt(y) + "t" + pt(z), [&] { return l.to_string(); },
               [&] { return r.to_string(); });
    }
    for (int i = 0; i < 20; ++i) {
      LatticePoint x = random_point(rng, 3), y = random_point(rng, 3);
      auto a = A.generator(x), b = A.generator(y);
      for (Matrix2 g : {Matrix2{1, 1, 0, 1}, Matrix2{0, -1, 1, 0}, Matrix2{2, 1, 1, 1}}) {
        auto l = A.sl2_act(g, A.multiply(a, b)), r = A.multiply(A.sl2_act(g, a), A.sl2_act(g, b));
        t.expect(l == r, tn + "sl2 on t" + pt(x) + "t" + pt(y), [&] { return l.to_string(); },
                 [&] { return r.to_string(); });
      }
    }
  }
}

void criterion_functional(Tally& t) {
  for (int n : {1, 2}) {
    std::string tn = "n=" + std::to_string(n) + " ";
    EllipticHallAlgebra<FormalBackend> A(FormalBackend(), n);
    check_report(t, verify_quadratic_relations(A, 4), tn);
    for (long m = -3; m <= 3; ++m) {
      auto r = cubic_residue(A, m);
      t.expect(r.is_zero(), tn + "cubic m=" + std::to_string(m), [&] { return r.to_string(); },
               [] { return std::string("0"); });
    }
  }
}

void criterion_pairing(Tally& t) {
  auto X = EllipticCurve::E1();
  for (int n = 1; n <= 3; ++n)
    for (auto& r : X.primitive_orbits(n))
      for (auto& s : X.character_orbits(n)) {
        auto p = green_pair_twisted(X, r, s);
        t.expect_eq(p.brute_force, p.closed_form, "n=" + std::to_string(n) + " " + r.rep().to_string() + " vs " + s.rep().to_string());
      }
}

void criterion_hecke(Tally& t) {
  auto X = EllipticCurve::E1();
  for (int n = 1; n <= 2; ++n)
    for (int N = n; N <= 4; N += n)
      for (auto& r : X.primitive_orbits(n))
        for (auto& s : X.character_orbits(N)) {
          auto e = hecke_T0N_eigenvalue(X, r, s);
          std::string at = "n=" + std::to_string(n) + " N=" + std::to_string(N) + " " + r.rep().to_string() + " " + s.rep().to_string();
          t.expect_eq(e.character_sum, e.closed_form, at + " character sum");
          t.expect_eq(e.local_sum, e.closed_form, at + " local sum");
          if (!e.norm_match) t.expect_eq(e.closed_form, CurveScalar(), at + " vanishing");
        }
}

void criterion_lfunctions(Tally& t, const VerifyConfig& cfg) {
  auto X = EllipticCurve::E1();
  int order = cfg.order;
  auto series_str = [](const TruncatedSeries<CurveScalar>& s) {
    std::string o;
    for (auto& c : s.coefficients()) o += (o.empty() ? "" : ", ") + c.to_string();
    return "[" + o + "]";
  };
  TruncatedSeries<CurveScalar> one(order);
  one[0] = CurveScalar(1);
  for (int n = 1; n <= 2; ++n) {
    auto os = X.primitive_orbits(n);
    for (size_t i = 0; i < os.size(); ++i)
      for (size_t j = 0; j < os.size(); ++j) {
        auto L = l_function(X, os[i].rep(), os[j].rep(), order);
        auto want = i == j ? zeta_at_power(X, n, order) : one;
        std::string at = "n=" + std::to_string(n) + " L(" + os[i].rep().to_string() + "," + os[j].rep().to_string() + ")";
        t.expect(L == want, at, [&] { return series_str(L); }, [&] { return series_str(want); });
        auto Ls = l_function_serial(X, os[i].rep(), os[j].rep(), order);
        t.expect(L == Ls, at + " serial", [&] { return series_str(L); }, [&] { return series_str(Ls); });
      }
  }
  TruncatedSeries<CurveScalar> one6(6);
  one6[0] = CurveScalar(1);
  for (int m = 1; m <= 2; ++m)
    for (auto& c : X.characters(m)) {
      if (c.is_trivial()) continue;
      auto L = character_l_function(X, c, 6);
      t.expect(L == one6, "L(" + c.to_string() + ")", [&] { return series_str(L); }, [&] { return series_str(one6); });
    }
}

void criterion_census(Tally& t) {
  auto X = EllipticCurve::E1();
  for (int n = 1; n <= 3; ++n) {
    auto c = cusp_census(X, n);
    std::string at = "n=" + std::to_string(n);
    t.expect(c.by_orbits == c.by_norm_exclusion, at + " orbits vs norm exclusion",
             [&] { return std::to_string(c.by_orbits); }, [&] { return std::to_string(c.by_norm_exclusion); });
    t.expect(cusp_dimension(X, n, 0) == c.by_orbits, at + " dim AF_{n,0}",
             [&] { return std::to_string(cusp_dimension(X, n, 0)); }, [&] { return std::to_string(c.by_orbits); });
    for (int d = 1; d <= 6; ++d)
      if (d % n != 0)
        t.expect(cusp_dimension(X, n, d) == 0, at + " d=" + std::to_string(d),
                 [&] { return std::to_string(cusp_dimension(X, n, d)); }, [] { return std::string("0"); });
  }
}

void criterion_step2(Tally& t) {
  FormalBackend f;
  for (auto X : {EllipticCurve::E1(), EllipticCurve::E2()}) {
    long q = X.q(), a = X.trace();
    CurveBackend b(q, a);
    CurveScalar v = CurveScalar::v(q);
    std::string tag = X.describe() + " ";
    for (int N = 1; N <= 6; ++N) {
      Rat count(static_cast<long>(X.points(N).size()));
      CurveScalar eig = v.pow(N) * v_integer(q, N) * CurveScalar(count / Rat(N));
      t.expect_eq(f.c(N).specialize(q, a), eig, tag + "c_" + std::to_string(N));
    }
    for (int n : {1, 2}) {
      EllipticHallAlgebra<CurveBackend> A(b, n);
      for (long d = 1; n * d <= 6; ++d) {
        int N = n * static_cast<int>(d);
        Rat count(static_cast<long>(X.points(N).size()));
        CurveScalar eig = v.pow(N) * v_integer(q, N) * CurveScalar(count / Rat(N));
        auto c = A.commutator(A.generator({0, d}), A.generator({1, 0}));
        auto want = A.generator({1, d}).scaled(eig);
        t.expect(c == want, tag + "n=" + std::to_string(n) + " [t(0," + std::to_string(d) + "),t(1,0)]",
                 [&] { return c.to_string(); }, [&] { return want.to_string(); });
      }
    }
  }
}

std::string criterion_independence(Tally& t) {
  auto rep = multiplicity_one_ranks(EllipticCurve::E1(), 6);
  std::ostringstream os;
  for (auto& r : rep.rows) {
    t.expect(r.rank == r.monomials, "degree " + std::to_string(r.degree) + " mod " + std::to_string(r.prime),
             [&] { return "rank " + std::to_string(r.rank); }, [&] { return "monomials " + std::to_string(r.monomials); });
    os << (r.degree > 1 ? ", " : "") << "D=" << r.degree << ": rank " << r.rank << "/" << r.monomials;
  }
  return os.str();
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {
      "point counts and zeta",         "Hall numbers",
      "Macdonald bridge",              "straightening soundness",
      "functional relations",          "twisted scalar product",
      "Hecke action of T_(0,N)",       "L-functions",
      "cusp form census",              "commutator vs eigenvalue",
      "strengthened multiplicity one",
  };
  if (id < 1 || id > kCriteria) throw std::out_of_range("criterion_name: no such criterion");
  return names[id - 1];
}

int criterion_degree(int id, const VerifyConfig& cfg) {
  switch (id) {
    case 1: return std::max(6, cfg.order);
    case 6: return 3;
    case 7: return 4;
    case 8: return std::max(cfg.order, 12);
    case 9: return 3;
    case 10: return 6;
    case 11: return 6;
    default: return 1;
  }
}

CheckResult run_criterion(int id, const VerifyConfig& cfg) {
  CheckResult r;
  r.id = id;
  r.name = criterion_name(id);
  if (criterion_degree(id, cfg) > cfg.budget_degree) {
    r.status = Status::Skip;
    r.detail = "needs degree " + std::to_string(criterion_degree(id, cfg)) + " > budget " + std::to_string(cfg.budget_degree);
    return r;
  }
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::string extra;
  try {
    switch (id) {
      case 1: criterion_points_zeta(t, cfg); break;
      case 2: criterion_hall(t); break;
      case 3: criterion_macdonald(t); break;
      case 4: criterion_straighten(t, cfg); break;
      case 5: criterion_functional(t); break;
      case 6: criterion_pairing(t); break;
      case 7: criterion_hecke(t); break;
      case 8: criterion_lfunctions(t, cfg); break;
      case 9: criterion_census(t); break;
      case 10: criterion_step2(t); break;
      case 11: extra = criterion_independence(t); break;
    }
  } catch (const std::exception& e) {
    t.expect_true(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.status = t.failed ? Status::Fail : Status::Pass;
  r.detail = std::to_string(t.checks) + " checks";
  if (!extra.empty()) r.detail += "; " + extra;
  if (t.failed) {
    r.detail += "; first failure: " + t.where;
    r.lhs = t.lhs;
    r.rhs = t.rhs;
  }
  return r;
}

std::vector<CheckResult> run_acceptance(const VerifyConfig& cfg) {
  std::vector<int> ids = cfg.only;
  if (ids.empty())
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int id : ids)
    if (id < 1 || id > kCriteria) throw std::invalid_argument("run_acceptance: criterion ids are 1..11");
  std::vector<CheckResult> out(ids.size());
  const int m = static_cast<int>(ids.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < m; ++i) out[i] = run_criterion(ids[i], cfg);
  return out;
}

}  // namespace ehall
