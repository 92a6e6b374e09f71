#include "CLI11.hpp"
#include "json.hpp"

#include "ehall/autoforms.hpp"
#include "ehall/backends.hpp"
#include "ehall/curve.hpp"
#include "ehall/elliptic_hall.hpp"
#include "ehall/verify.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

using namespace ehall;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

// Bad input of any kind: exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string curve_source = "E1";
  std::optional<EllipticCurve> curve;
  int n = 1;
  int order = 8;
  int budget_degree = 12;
  long budget_size = 1L << 20;  // largest q^k a command may enumerate
  std::uint64_t seed = 1;
  std::string format = "json";
  bool timings = false;
};

struct Flags {
  std::string curve;
  std::optional<int> n, order, budget_degree;
  std::optional<long> budget_size;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  bool timings = false;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// Precedence: flags, then run keys in the curve file, then defaults.
RunConfig load_config(const Flags& f) {
  RunConfig c;
  std::string curve_text;
  if (f.curve.empty() || f.curve == "E1") {
    c.curve = EllipticCurve::E1();
  } else if (f.curve == "E2") {
    c.curve_source = "E2";
    c.curve = EllipticCurve::E2();
  } else {
    std::ifstream in(f.curve);
    if (!in) throw ConfigError("cannot read curve file '" + f.curve + "'");
    c.curve_source = f.curve;
    std::string line;
    while (std::getline(in, line)) {
      std::string body = trim(line.substr(0, line.find('#')));
      auto eq = body.find('=');
      std::string key = eq == std::string::npos ? "" : trim(body.substr(0, eq));
      std::string val = eq == std::string::npos ? "" : trim(body.substr(eq + 1));
      try {
        if (key == "n") c.n = std::stoi(val);
        else if (key == "order") c.order = std::stoi(val);
        else if (key == "budget_degree") c.budget_degree = std::stoi(val);
        else if (key == "budget_size") c.budget_size = std::stol(val);
        else if (key == "seed") c.seed = std::stoull(val);
        else if (key == "format") c.format = val;
        else curve_text += line + "\n";
      } catch (const std::logic_error&) {
        throw ConfigError("bad value for '" + key + "': '" + val + "'");
      }
    }
    try {
      c.curve = EllipticCurve::from_config(curve_text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (f.n) c.n = *f.n;
  if (f.order) c.order = *f.order;
  if (f.budget_degree) c.budget_degree = *f.budget_degree;
  if (f.budget_size) c.budget_size = *f.budget_size;
  if (f.seed) c.seed = *f.seed;
  if (f.format) c.format = *f.format;
  c.timings = f.timings;
  if (c.n < 1 || c.order < 1 || c.budget_degree < 1 || c.budget_size < 2) throw ConfigError("budgets and n must be positive");
  if (c.format != "json" && c.format != "csv" && c.format != "text") throw ConfigError("format must be json, csv or text");
  return c;
}

// True when F_{q^k} fits the budgets.
bool within_budget(const RunConfig& c, int k) {
  if (k > c.budget_degree) return false;
  long s = 1;
  for (int i = 0; i < k; ++i) {
    if (s > c.budget_size / c.curve->q()) return false;
    s *= c.curve->q();
  }
  return s <= c.budget_size;
}

struct Report {
  std::string command;
  json config;
  std::vector<CheckResult> checks;
  json data = json::object();
};

json config_json(const RunConfig& c) {
  return {{"curve", c.curve_source}, {"curve_equation", c.curve->describe()}, {"n", c.n}, {"order", c.order},
          {"budget_degree", c.budget_degree}, {"budget_size", c.budget_size}, {"seed", c.seed}, {"format", c.format}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return o + "\"";
}

std::string scalar_string(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

int emit(const Report& r, const RunConfig& c) {
  long pass = 0, fail = 0, skip = 0;
  for (auto& k : r.checks) (k.status == Status::Pass ? pass : k.status == Status::Fail ? fail : skip)++;
  if (c.format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = r.command;
    j["config"] = r.config;
    j["checks"] = json::array();
    for (auto& k : r.checks) {
      json e = {{"id", k.id}, {"name", k.name}, {"status", status_name(k.status)}, {"detail", k.detail}};
      if (k.status == Status::Fail) {
        e["lhs"] = k.lhs;
        e["rhs"] = k.rhs;
      }
      if (c.timings) e["seconds"] = k.seconds;
      j["checks"].push_back(e);
    }
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"skip", skip}};
    j["data"] = r.data;
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "id,name,status,detail,lhs,rhs" << (c.timings ? ",seconds" : "") << "\n";
    for (auto& k : r.checks) {
      std::cout << k.id << "," << csv_field(k.name) << "," << status_name(k.status) << "," << csv_field(k.detail) << ","
                << csv_field(k.lhs) << "," << csv_field(k.rhs);
      if (c.timings) std::cout << "," << k.seconds;
      std::cout << "\n";
    }
    if (!r.data.empty()) {
      std::cout << "\nkey,value\n";
      json flat = r.data.flatten();
      for (auto& [key, v] : flat.items()) std::cout << csv_field(key) << "," << csv_field(scalar_string(v)) << "\n";
    }
  } else {
    std::cout << r.command << " (" << c.curve->describe() << ")\n";
    for (auto& k : r.checks) {
      std::cout << "[" << status_name(k.status) << "] " << k.id << " " << k.name << ": " << k.detail;
      if (c.timings) std::cout << " (" << k.seconds << " s)";
      std::cout << "\n";
      if (k.status == Status::Fail) std::cout << "    lhs: " << k.lhs << "\n    rhs: " << k.rhs << "\n";
    }
    json flat = r.data.flatten();
    for (auto& [key, v] : flat.items()) std::cout << key << " = " << scalar_string(v) << "\n";
    std::cout << "summary: " << pass << " pass, " << fail << " fail, " << skip << " skip\n";
  }
  return fail ? 1 : 0;
}

CheckResult make_check(int id, const std::string& name, bool ok, const std::string& detail, const std::string& lhs = "",
                       const std::string& rhs = "") {
  CheckResult k;
  k.id = id;
  k.name = name;
  k.status = ok ? Status::Pass : Status::Fail;
  k.detail = detail;
  if (!ok) {
    k.lhs = lhs;
    k.rhs = rhs;
  }
  return k;
}

Report cmd_curve_info(const RunConfig& c) {
  const EllipticCurve& X = *c.curve;
  Report r{"curve-info", config_json(c)};
  long a = X.trace();
  r.data["q"] = X.q();
  const auto& co = X.coefficients();
  r.data["coefficients"] = {{"a1", co[0]}, {"a2", co[1]}, {"a3", co[2]}, {"a4", co[3]}, {"a6", co[4]}};
  r.data["trace"] = a;
  r.data["zeta_numerator"] = {"1", std::to_string(-a), std::to_string(X.q())};

  int bound = 0;
  while (within_budget(c, bound + 1)) ++bound;
  r.data["counts"] = json::array();
  r.data["groups"] = json::array();
  int id = 0;
  for (int n = 1; n <= bound; ++n) {
    Int e = static_cast<long>(X.points(n).size()), t = X.count_from_trace(n);
    r.data["counts"].push_back({{"n", n}, {"enumerated", e.get_str()}, {"from_trace", t.get_str()}});
    json inv = json::array();
    for (long d : X.picard(n).divisors) inv.push_back(d);
    r.data["groups"].push_back({{"n", n}, {"invariants", inv}});
    r.checks.push_back(make_check(++id, "count n=" + std::to_string(n), e == t, "#X(F_q^" + std::to_string(n) + ") = " + e.get_str(),
                                  e.get_str(), t.get_str()));
  }

  // zeta from the trace against exp(sum N_k t^k / k), enumerated counts where available.
  TruncatedSeries<Rat> g(c.order, Rat(0));
  for (int k = 1; k <= c.order; ++k) {
    Int Nk = k <= bound ? Int(static_cast<long>(X.points(k).size())) : X.count_from_trace(k);
    g[k] = Rat(Nk) / Rat(k);
  }
  auto ex = series_exp(g, Rat(1));
  auto z = X.zeta_series(1, c.order);
  json zs = json::array();
  bool ok = true;
  std::string lhs, rhs;
  for (int k = 0; k <= c.order; ++k) {
    zs.push_back(z[k].get_str());
    ok = ok && Rat(z[k]) == ex[k];
    lhs += (k ? "," : "") + z[k].get_str();
    rhs += (k ? "," : "") + ex[k].get_str();
  }
  r.data["zeta_series"] = zs;
  r.checks.push_back(make_check(++id, "zeta vs counts", ok, "order " + std::to_string(c.order), lhs, rhs));
  return r;
}

Report cmd_characters(const RunConfig& c) {
  const EllipticCurve& X = *c.curve;
  int n = c.n;
  if (!within_budget(c, n)) throw ConfigError("budget: level " + std::to_string(n) + " exceeds the degree or size budget");
  Report r{"characters", config_json(c)};
  auto orbits = X.character_orbits(n);
  auto prim = X.primitive_orbits(n);
  auto by_excl = X.primitive_by_norm_exclusion(n);
  json orb = json::array();
  std::set<Character> in_prim;
  for (auto& o : orbits) {
    json m = json::array();
    for (auto& ch : o.members) m.push_back(ch.to_string());
    orb.push_back({{"size", o.size()}, {"primitive", o.size() == n}, {"members", m}});
    if (o.size() == n) in_prim.insert(o.members.begin(), o.members.end());
  }
  long total = static_cast<long>(X.characters(n).size());
  r.data["level"] = n;
  r.data["group_invariants"] = X.picard(n).divisors;
  r.data["characters"] = total;
  r.data["orbits"] = orb;
  r.data["primitive_orbits"] = prim.size();
  r.data["norm_image_excluded"] = total - static_cast<long>(by_excl.size());

  std::set<Character> excl_set(by_excl.begin(), by_excl.end());
  r.checks.push_back(make_check(1, "orbit census vs norm exclusion", excl_set == in_prim,
                                std::to_string(prim.size()) + " primitive orbits",
                                std::to_string(in_prim.size()) + " characters in size-n orbits",
                                std::to_string(by_excl.size()) + " characters outside norm images"));
  bool trivial_ok = true;
  if (n > 1)
    for (auto& ch : by_excl) trivial_ok = trivial_ok && !ch.is_trivial();
  r.checks.push_back(make_check(2, "trivial character excluded", trivial_ok, n > 1 ? "n > 1" : "n = 1, trivial is primitive"));
  return r;
}

// Recursive-descent parser for sums of products of t(q,p), theta(q,p) and rational scalars.
template <class Alg>
class ExprParser {
 public:
  using E = typename Alg::Element;
  using S = std::decay_t<decltype(std::declval<Alg&>().kappa())>;
  ExprParser(Alg& a, std::string s) : a_(a), s_(std::move(s)) {}

  E parse() {
    E v = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("parse error at position " + std::to_string(i_) + ": " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char ch) {
    skip();
    if (i_ < s_.size() && s_[i_] == ch) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }
  long integer() {
    skip();
    size_t b = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    size_t d = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == d) {
      i_ = b;
      fail("expected integer");
    }
    if (i_ - d > 9) fail("integer too large");
    return std::stol(s_.substr(b, i_ - b));
  }
  E sum() {
    E v = product();
    for (;;) {
      if (eat('+')) v = v + product();
      else if (eat('-')) v = v - product();
      else return v;
    }
  }
  E product() {
    E v = factor();
    while (eat('*')) v = a_.multiply(v, factor());
    return v;
  }
  E factor() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    if (eat('-')) return factor().scaled(S(-1));
    if (eat('(')) {
      E v = sum();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      long num = integer(), den = 1;
      if (eat('/')) {
        size_t at = i_;
        den = integer();
        if (den == 0) {
          i_ = at;
          fail("zero denominator");
        }
      }
      Rat v{mpz_class(num), mpz_class(den)};
      v.canonicalize();
      return a_.one().scaled(S(v));
    }
    size_t b = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string word = s_.substr(b, i_ - b);
    if (word != "t" && word != "theta") {
      i_ = b;
      fail(word.empty() ? "unexpected '" + std::string(1, s_[b]) + "'" : "unknown symbol '" + word + "'");
    }
    expect('(');
    size_t at = i_;
    long q = integer();
    expect(',');
    long p = integer();
    expect(')');
    if (q == 0 && p == 0) {
      i_ = at;
      fail("generator at the origin");
    }
    return word == "t" ? a_.generator({q, p}) : a_.theta_of({q, p});
  }

  Alg& a_;
  std::string s_;
  size_t i_ = 0;
};

template <class Backend>
json straighten_with(Backend b, int n, const std::string& expr) {
  EllipticHallAlgebra<Backend> A(std::move(b), n);
  ExprParser<EllipticHallAlgebra<Backend>> p(A, expr);
  auto e = p.parse();
  json nf = json::object();
  for (auto& [w, c] : e.terms()) nf[word_to_string(w)] = c.to_string();
  return nf;
}

Report cmd_straighten(const RunConfig& c, const std::string& expr, bool formal) {
  Report r{"straighten", config_json(c)};
  json nf = formal ? straighten_with(FormalBackend(), c.n, expr)
                   : straighten_with(CurveBackend(c.curve->q(), c.curve->trace()), c.n, expr);
  r.data["input"] = expr;
  r.data["backend"] = formal ? "formal" : "curve";
  r.data["n"] = c.n;
  r.data["terms"] = nf.size();
  r.data["normal_form"] = nf;
  return r;
}

Report cmd_verify_all(const RunConfig& c, const std::vector<int>& only, bool flip) {
  Report r{"verify-all", config_json(c)};
  VerifyConfig v;
  v.budget_degree = c.budget_degree;
  v.order = c.order;
  v.seed = c.seed;
  v.only = only;
  v.sign_flip = flip;
  for (int id : only)
    if (id < 1 || id > kCriteria) throw ConfigError("--only: criteria are numbered 1.." + std::to_string(kCriteria));
  r.checks = run_acceptance(v);
  r.data["sign_flip"] = flip;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic Hall algebra toolkit"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--curve", f.curve, "Curve: E1, E2, or a key=value file (q, a1..a6, plus run keys)");
  app.add_option("--n", f.n, "Twist level n");
  app.add_option("--order", f.order, "Truncation order for series");
  app.add_option("--budget-degree", f.budget_degree, "Largest extension degree to touch");
  app.add_option("--budget-size", f.budget_size, "Largest field size q^k to enumerate");
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--format", f.format, "json, csv or text");
  app.add_flag("--timings", f.timings, "Include wall-clock timings (output is then not reproducible)");

  auto* info = app.add_subcommand("curve-info", "Point counts, group structures and zeta function");
  auto* chars = app.add_subcommand("characters", "Character table, Frobenius orbits and primitive orbits at level n");
  auto* str = app.add_subcommand("straighten", "Normal form of an expression in t(q,p), theta(q,p) and rationals");
  std::string expr;
  bool formal = false;
  str->add_option("expr", expr, "Expression, e.g. \"t(1,0) * t(0,1)\"")->required();
  str->add_flag("--formal", formal, "Keep sigma symbolic instead of specializing to the curve");
  auto* ver = app.add_subcommand("verify-all", "Run the acceptance checks");
  std::vector<int> only;
  bool flip = false;
  ver->add_option("--only", only, "Criterion numbers to run")->delimiter(',');
  ver->add_flag("--inject-sign-flip", flip, "Test mode: corrupt the basic commutator sign for delta >= 2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig c = load_config(f);
    Report r;
    if (*info) r = cmd_curve_info(c);
    else if (*chars) r = cmd_characters(c);
    else if (*str) r = cmd_straighten(c, expr, formal);
    else r = cmd_verify_all(c, only, flip);
    return emit(r, c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
