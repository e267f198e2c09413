// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "obk/checks.hpp"
#include "obk/cli.hpp"
#include "obk/homology.hpp"
#include "obk/report.hpp"
#include "obk/rewrite.hpp"

#include "snf_oracle.hpp"

using namespace obk;

namespace {

int failures = 0;

void verdict(int criterion, bool ok, const std::string& what, const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1: twist symplecticity sweep -------------------------------

void criterion1() {
  auto start = std::chrono::steady_clock::now();
  NumericConfig cfg;
  cfg.samples = 1000;
  cfg.seed = 2026;
  cfg.h = 1e-4;

  double worst = 0.0;
  for (int n : {1, 2, 3})
    for (long long k : {-2LL, -1LL, 1LL, 2LL}) {
      auto stats = check_twist_symplectic(n, TwistProfile{k, 0.5}, cfg);
      worst = std::max(worst, stats.max_error);
    }

  double control = 0.0;
  for (int n : {1, 2, 3}) {
    AmbientMap scaled = make_tstar_map(n, n, [n](const Vec& v) {
      Vec out = v;
      out.tail(n + 1) *= 2.0;
      return out;
    });
    control = std::max(control, pullback_error(scaled, sample(n, cfg.seed, 1000), cfg.h).max_error);
  }

  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "max error " << worst << ", control " << control << ", " << elapsed << " s";
  verdict(1, worst < 1e-6 && control > 0.1 && elapsed < 30.0,
          "twist pullback < 1e-6 for n in {1,2,3}, k in {-2,-1,1,2}; scaled-map control > 0.1",
          detail.str());
}

// --- criterion 2: embedding isotopy pullbacks ------------------------------

void criterion2() {
  NumericConfig cfg;
  cfg.samples = 1000;
  cfg.seed = 2027;
  CutoffProfile cutoff{0.2, 0.2};
  double worst = 0.0;
  for (int n : {1, 2, 3})
    for (double t : {0.0, 0.5, 1.0}) {
      AmbientMap jt = embedding_map(t, cutoff, n);
      worst = std::max(worst, pullback_error(jt, sample(n, cfg.seed, cfg.samples), cfg.h).max_error);
    }
  std::ostringstream detail;
  detail << "max error " << worst;
  verdict(2, worst < 1e-6, "embedding family pullback < 1e-6 for t in {0,1/2,1}, n in {1,2,3}",
          detail.str());
}

// --- criterion 3: full single-node pipeline sweep --------------------------

void criterion3() {
  auto start = std::chrono::steady_clock::now();
  NumericConfig cfg;
  cfg.samples = 400;
  cfg.seed = 2028;

  bool all = true;
  std::string first_failure;
  for (int n : {1, 2, 3})
    for (long long k = -2; k <= 2; ++k)
      for (long long l = -2; l <= 2; ++l) {
        Report rep = run_single_node_suite(n, k, l, cfg);
        if (!rep.pass) {
          all = false;
          if (first_failure.empty()) {
            std::ostringstream os;
            os << "(n,k,l) = (" << n << "," << k << "," << l << ")";
            for (const auto& o : rep.obligations)
              if (o.failed()) os << " " << o.name << " measured " << o.measured;
            first_failure = os.str();
          }
        }
      }
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "75 suites in " << elapsed << " s";
  if (!first_failure.empty()) detail << "; first failure " << first_failure;
  verdict(3, all && elapsed < 300.0,
          "single-node pipeline passes for n in {1,2,3}, k,l in {-2..2} within 5 minutes",
          detail.str());
}

// --- criterion 4: binding contact positivity -------------------------------

void criterion4() {
  NumericConfig cfg;
  cfg.grid_r = 200;
  cfg.grid_ang = 50;
  cfg.r_min = 1e-3;
  cfg.seed = 2029;
  BindingProfile profile = BindingProfile::standard();
  bool ok = true;
  std::ostringstream detail;
  for (int n : {1, 2}) {
    ContactCheckResult res = tw_contact_check(n, profile, cfg);
    detail << "n=" << n << ": min volume " << res.min_volume << ", overlap " << res.overlap_error
           << "; ";
    ok = ok && res.min_volume > 0.0 && res.signs_agree && res.overlap_error < 1e-12;
  }
  verdict(4, ok,
          "binding form positive on the 200x50 grid, overlap identity exact, signs agree",
          detail.str());
}

// --- criterion 5: exact matrix identities ----------------------------------

void criterion5() {
  bool ok = true;
  std::string why;
  for (int g : {2, 3}) {
    CurveSystem sys = extended_humphries_system(g);
    auto spine = blue_curves(g);

    std::vector<std::pair<std::string, std::string>> adjacent;
    for (std::size_t i = 0; i + 1 < spine.size(); ++i) adjacent.push_back({spine[i], spine[i + 1]});
    adjacent.push_back({"b2", "a2"});

    for (const auto& [a, b] : adjacent) {
      IMat lhs = rho(sys, parse_word(a + " " + b + " " + a));
      IMat rhs = rho(sys, parse_word(b + " " + a + " " + b));
      if (!int_equal(lhs, rhs)) {
        ok = false;
        why = "braid identity fails for " + a + "," + b + " at g=" + std::to_string(g);
      }
      if (!is_symplectic(lhs, g)) {
        ok = false;
        why = "rho output not symplectic";
      }
    }

    std::string chain_text;
    for (const auto& c : spine) chain_text += c + " ";
    IMat boundary = int_pow(rho(sys, parse_word(chain_text)), 4 * g + 2);
    if (!is_int_identity(boundary)) {
      ok = false;
      why = "boundary chain identity fails at g=" + std::to_string(g);
    }

    IMat lhs = int_pow(rho(sys, parse_word("b1 a1 c1")), 4);
    IMat rhs = rho(sys, parse_word("d1 d2"));
    if (!int_equal(lhs, rhs)) {
      ok = false;
      why = "three-chain relation fails at g=" + std::to_string(g);
    }
    for (const auto& c : sys.curves())
      for (long long k : {-2LL, 1LL, 3LL})
        if (!is_symplectic(twist_matrix(sys, CurveRef::plain(c), k), g)) {
          ok = false;
          why = "twist matrix not symplectic for " + c;
        }
  }
  verdict(5, ok, "braid, boundary-chain and three-chain identities hold exactly in Sp(2g,Z)",
          why);
}

// --- criterion 6: homology against the independent oracle ------------------

void criterion6() {
  bool ok = true;
  std::string why;

  auto check_against_oracle = [&](const CurveSystem& sys, const TwistWord& w,
                                  const HomologySummary& expect, const std::string& label) {
    IMat m = rho(sys, w);
    IMat mi = (m - int_identity(m.rows())).eval();
    HomologySummary mine = open_book_homology(sys, w);

    auto oracle_diag = obk::testing::snf_by_minor_gcd(mi);
    HomologySummary oracle;
    for (const auto& d : oracle_diag) {
      if (d == 0)
        ++oracle.free_rank;
      else if (d > 1)
        oracle.torsion.push_back(d);
    }
    if (!(mine == oracle)) {
      ok = false;
      why = label + ": implementation disagrees with the minor-gcd oracle";
    }
    if (!(mine == expect)) {
      ok = false;
      why = label + ": unexpected invariants";
    }
  };

  CurveSystem g1 = default_humphries_system(1);
  check_against_oracle(g1, parse_word("a1 b1"), HomologySummary{0, {}}, "S3 monodromy");
  check_against_oracle(g1, parse_word("a1 b1").pow(5), HomologySummary{0, {}},
                       "fifth-power monodromy");
  for (int g : {1, 2, 3}) {
    CurveSystem sys = default_humphries_system(g);
    check_against_oracle(sys, TwistWord(), HomologySummary{2 * g, {}},
                         "identity monodromy g=" + std::to_string(g));
  }
  verdict(6, ok, "homology invariants match the independent Smith-form oracle", why);
}

// --- criterion 7: surface pipeline round trips -----------------------------

void criterion7() {
  bool ok = true;
  std::string why;
  std::uint64_t state = 2030;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  };

  auto tmp = std::filesystem::temp_directory_path();
  int verified = 0;
  for (int g : {1, 2, 3}) {
    auto blue = blue_curves(g);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      int len = 1 + static_cast<int>(next() % 10);
      std::string word;
      for (int i = 0; i < len; ++i) {
        long long p = static_cast<long long>(next() % 5) - 2;
        if (p == 0) p = 1;
        word += blue[next() % blue.size()] + "^" + std::to_string(p) + " ";
      }
      std::string cert = (tmp / ("obk_acc7_" + std::to_string(g) + "_" +
                                 std::to_string(trial) + ".json")).string();
      std::ostringstream out, err;
      int e = cli::run({"embed", "--emit", cert, "surface", "--genus", std::to_string(g),
                        "--word", word},
                       out, err);
      if (e != 0) {
        ok = false;
        why = "embed failed for '" + word + "': " + err.str();
        break;
      }
      std::ostringstream vout, verr;
      int v = cli::run({"--samples", "120", "--seed", "5", "verify", cert}, vout, verr);
      if (v != 0) {
        ok = false;
        why = "verify exited " + std::to_string(v) + " for '" + word + "'";
      }
      std::filesystem::remove(cert);
      std::filesystem::remove(cert + ".report.json");
      ++verified;
    }
  }

  // any word mentioning b2 is rejected with the documented diagnostic
  for (const char* word_cstr : {"b2", "a1 b2^2 c1", "b2(a2)"}) {
    std::string word(word_cstr);
    std::ostringstream out, err;
    int e = cli::run({"embed", "surface", "--genus", "2", "--word", word}, out, err);
    if (e != 1 || err.str().find("b2") == std::string::npos ||
        err.str().find("not a proof") == std::string::npos) {
      ok = false;
      why = "b2 rejection diagnostic missing for '" + word + "'";
    }
  }
  std::ostringstream detail;
  detail << verified << " certificates verified";
  verdict(7, ok, "surface pipeline: random spine words embed and verify; b2 words are rejected",
          ok ? detail.str() : why);
}

// --- criterion 8: catalog conformance ---------------------------------------

void criterion8() {
  bool ok = true;
  std::string why;
  for (int n = 1; n <= 5 && ok; ++n) {
    CatalogRequest req;
    req.which = "xi_n";
    req.n = n;
    OpenBook ob = catalog(req);
    if (static_cast<int>(ob.page.nodes.size()) != n ||
        static_cast<int>(ob.monodromy.size()) != n) {
      ok = false;
      why = "xi_n shape off at n=" + std::to_string(n);
    }
    for (const auto& l : ob.monodromy.letters())
      if (l.power != -1) {
        ok = false;
        why = "xi_n word is not all -1 twists";
      }
    for (const auto& [name, base] : ob.page.nodes)
      if (!(base == BaseLabel::sphere(1))) {
        ok = false;
        why = "xi_n node is not DT*S^1";
      }
  }

  CatalogRequest rp;
  rp.which = "rp3";
  OpenBook rp3 = catalog(rp);
  if (rp3.page.nodes.size() != 1 || !(rp3.monodromy == parse_word("v1^2"))) {
    ok = false;
    why = "rp3 catalog shape";
  }

  for (int m : {2, 3})
    for (long long k : {1LL, 3LL, 5LL}) {
      CatalogRequest u;
      u.which = "ustilovsky";
      u.m = m;
      u.k = k;
      OpenBook ob = catalog(u);
      if (ob.page.nodes.size() != 1 || ob.page.node("v1").n != 2 * m ||
          ob.monodromy.letters()[0].power != k) {
        ok = false;
        why = "ustilovsky shape at m=" + std::to_string(m) + " k=" + std::to_string(k);
      }
    }
  bool rejected = false;
  try {
    CatalogRequest u;
    u.which = "ustilovsky";
    u.m = 2;
    u.k = 4;
    catalog(u);
  } catch (const Error&) {
    rejected = true;
  }
  if (!rejected) {
    ok = false;
    why = "even twist power accepted";
  }
  verdict(8, ok, "catalog pages and monodromies match their stated shapes; even powers rejected",
          why);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures == 0)
    std::printf("acceptance: all 8 criteria pass\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
