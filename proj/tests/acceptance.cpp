// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "skdv/combinatorics.hpp"
#include "skdv/kappa.hpp"
#include "skdv/recursion.hpp"
#include "skdv/spectral.hpp"
#include "skdv/spin.hpp"
#include "skdv/virasoro.hpp"
#include "skdv/volume.hpp"
#include "skdv_cli/cli.hpp"

using namespace skdv;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.ok = false;
    o.note("over time budget");
  }
  if (!o.ok) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1fs", secs);
  std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << " (" << timing
            << (o.detail.empty() ? "" : ", " + o.detail) << ")" << std::endl;
}

std::string n(std::size_t v) { return std::to_string(v); }

OddDifferentialTable up_to_level(const OddDifferentialTable& t, int level) {
  OddDifferentialTable f(t.engine());
  for (const auto& [k, v] : t.entries())
    if (2 * k.first - 2 + static_cast<int>(k.second.size()) <= level) f.set(k.first, k.second, v);
  return f;
}

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  int c = cli::run(args, out, err);
  if (code) *code = c;
  return out.str();
}

}  // namespace

int main() {
  criterion(1, "BGW, Omega and D Z^K agree at gmax=2 dmax=4 smax=6", 60, [](Outcome& o) {
    ComparisonReport r = theorem1_compare(Truncation{2, 6, 4, 6});
    o.require(r.routes.size() == 3, "three routes");
    o.require(r.ok(), n(r.mismatches.size()) + " mismatches");
    o.require(r.nonzero >= 100, "at least 100 nonzero coefficients");
    o.note(n(r.compared) + " compared, " + n(r.nonzero) + " nonzero, " + n(r.mismatches.size()) + " mismatches");
  });

  criterion(2, "genus 0 closed form for n<=5, |m|<=4", 0, [](Outcome& o) {
    Genus0Trr trr;
    std::size_t compared = 0, bad = 0;
    for (int len = 1; len <= 5; ++len)
      for_each_multiset_bounded(len, 4, 4, [&](const Multiset& m) {
        Rational v = len == 1 ? spin_one_point(m[0]) : len == 2 ? spin_two_point(m[0], m[1]) : trr.correlator(m);
        ++compared;
        if (v != genus0_closed_form(m)) ++bad;
      });
    o.require(bad == 0, n(bad) + " mismatches");
    o.require(trr.correlator({0, 0, 0}) == Rational(1), "<tau_0^3> = 1");
    o.require(trr.correlator({0, 0, 1}) == Rational(1, 2), "<tau_1 tau_0^2> = 1/2");
    o.require(spin_one_point(0) == Rational(1, 2), "<tau_0> = 1/2");
    o.require(spin_two_point(1, 0) == Rational(1, 8), "<tau_1 tau_0> = 1/8");
    o.note(n(compared) + " multi-indices");
  });

  criterion(3, "constants: Theta_{1,1}, F_{0,1}, F_{0,2}, K_1..K_4, vacuum", 0, [](Outcome& o) {
    CorrelatorSolver bgw(Model::gBGW);
    o.require(bgw.correlator(1, {0}) == Rational(1, 8), "Theta_{1,1} = 1/8");
    GradedSeries omega = assemble_z_omega(Truncation{1, 5, 2, 6});
    for (int m = 0; m <= 5; ++m) {
      Rational f01 = Rational(1) / (Rational(power_of_two(m + 1)) * Rational((m + 1) * (2 * m + 1)) *
                                    Rational(factorial(m)));
      o.require(omega.coefficient(-1, m + 1, Monomial::variable(m)) == f01, "F_{0,1} m=" + std::to_string(m));
      o.require(bgw.correlator(0, {m}) == f01, "<tau_m>_0 m=" + std::to_string(m));
    }
    for (int m1 = 0; m1 <= 5; ++m1)
      for (int m2 = m1; m1 + m2 <= 5; ++m2) {
        int s = m1 + m2;
        Rational c = Rational(1) / (Rational(power_of_two(s + 1)) * Rational(s + 1) *
                                    Rational(factorial(m1) * factorial(m2)));
        // log Z carries F_{0,2}/2 summed over ordered pairs.
        Rational expect = m1 == m2 ? c / Rational(2) : c;
        o.require(omega.coefficient(-1, s + 1, Monomial::variable(m1) * Monomial::variable(m2)) == expect,
                  "F_{0,2} (" + std::to_string(m1) + "," + std::to_string(m2) + ")");
      }
    auto K = k_polynomials(4);
    o.require(K[1].poly.size() == 1 && K[1].poly.coefficient({1}) == Rational(3), "K_1 = 3 kappa_1");
    o.require(K[2].poly.size() == 2 && K[2].poly.coefficient({2}) == Rational(9, 2) &&
                  K[2].poly.coefficient({0, 1}) == Rational(-21, 2),
              "K_2 = 3/2(3 kappa_1^2 - 7 kappa_2)");
    o.require(K[3].poly.size() == 3 && K[3].poly.coefficient({3}) == Rational(9, 2) &&
                  K[3].poly.coefficient({1, 1}) == Rational(-63, 2) &&
                  K[3].poly.coefficient({0, 0, 1}) == Rational(69),
              "K_3");
    o.require(K[4].poly.size() == 5 && K[4].poly.coefficient({4}) == Rational(27, 8) &&
                  K[4].poly.coefficient({2, 1}) == Rational(-189, 4) &&
                  K[4].poly.coefficient({1, 0, 1}) == Rational(207) &&
                  K[4].poly.coefficient({0, 2}) == Rational(441, 8) &&
                  K[4].poly.coefficient({0, 0, 0, 1}) == Rational(-2529, 4),
              "K_4");
    Rational from_bernoulli = bernoulli(4) / Rational(4 * 2);
    o.require(euler_characteristic_constant(2) == Rational(-1, 240) && from_bernoulli == Rational(-1, 240),
              "int_{M_2} K = -1/240");
    KappaIntegrals ki;
    o.require(ki.zk_via_shift(2, {}) == Rational(-1, 240), "vacuum by shift");
  });

  criterion(4, "vanishing of K_m above 2g-2+n", 0, [](Outcome& o) {
    Rational a = vanishing_check(2, 1, 4, {}, {0});
    Rational b = vanishing_check(3, 0, 5, {1}, {});
    o.require(a.is_zero(), "int_{M_{2,1}} K_4 = " + a.str());
    o.require(b.is_zero(), "int_{M_3} K_5 kappa_1 = " + b.str());
    bool rejected = false;
    try {
      vanishing_check(2, 0, 3, {}, {});
    } catch (const ExceptionalPair&) {
      rejected = true;
    }
    o.require(rejected, "(3g-3,0) rejected");
    KappaIntegrals ki;
    o.require(ki.zk_via_kappa(2, {}) == Rational(-1, 240), "int_{M_2} K_3 = -1/240");
  });

  criterion(5, "KdV residuals at gmax=2 dmax=5", 60, [](Outcome& o) {
    Truncation t{2, 6, 5, 8};
    std::vector<std::pair<std::string, GradedSeries>> series = {
        {"kw", kw_free_energy(t)}, {"zk", zk_free_energy(t, true)}, {"bgw", bgw_free_energy(t)}, {"omega", assemble_z_omega(t)}};
    for (const auto& [name, s] : series) {
      KdvResidual r = kdv_residual(s);
      o.require(r.residual.is_zero(), name + " residual " + n(r.residual.size()) + " terms");
      if (name == "kw") o.note("certified t-degree " + std::to_string(r.certified_degree));
    }
    // At t-degree 0 the KW residual is empty by dimension; KW is also run where it is not.
    Truncation deep{2, 6, 7, 0};
    KdvResidual kw7 = kdv_residual(kw_free_energy(deep));
    o.require(kw7.residual.is_zero(), "kw at t-degree " + std::to_string(kw7.certified_degree));
    CorrelatorTable bad = bgw_correlators(t);
    bad.set(0, {0, 0, 1}, Rational(1, 3));
    o.require(!kdv_residual(bad.to_series(Grading::Spin)).residual.is_zero(), "perturbed bgw table detected");
    CorrelatorTable bad_kw = kw_correlators(deep);
    bad_kw.set(1, {0, 0, 1, 3}, bad_kw.get(1, {0, 0, 1, 3}) * Rational(2));
    o.require(!kdv_residual(bad_kw.to_series(Grading::None)).residual.is_zero(), "perturbed kw table detected");
  });

  criterion(6, "Virasoro m<=4 on both engines, homogeneity", 0, [](Outcome& o) {
    Truncation t{2, 6, 5, 8};
    GradedSeries kw = kw_free_energy(t), bgw = bgw_free_energy(t), omega = assemble_z_omega(t);
    std::size_t checked = 0;
    for (int m = -1; m <= 4; ++m, ++checked)
      o.require(apply_virasoro_oracle(kw, VirasoroSpec::kw(), m).is_zero(), "KW L_" + std::to_string(m));
    for (int m = 0; m <= 4; ++m, checked += 2) {
      o.require(apply_virasoro_oracle(bgw, VirasoroSpec::gbgw(), m).is_zero(), "BGW L_" + std::to_string(m));
      o.require(apply_virasoro_oracle(omega, VirasoroSpec::gbgw(), m).is_zero(), "Omega L_" + std::to_string(m));
    }
    o.require(check_homogeneity(bgw).is_zero(), "BGW homogeneous");
    o.require(check_homogeneity(omega).is_zero(), "Omega homogeneous");
    o.require(!check_homogeneity(kw).is_zero(), "KW not homogeneous");
    o.note(n(checked) + " constraint residuals zero");
  });

  criterion(7, "spectral curves against intersection numbers", 120, [](Outcome& o) {
    std::size_t total = 0;
    for (CurveKind kind : {CurveKind::Airy, CurveKind::Bessel, CurveKind::CK}) {
      auto tr = up_to_level(tr_correlators(kind, 3, 6), 4);
      auto ref = up_to_level(reference_table(kind, 3, 6), 4);
      TableComparison c = compare_tables(tr, ref, curve_name(kind));
      o.require(c.ok() && c.nonzero > 0, curve_name(kind) + " " + n(c.mismatches.size()) + " mismatches");
      total += c.compared;
    }
    auto ck = up_to_level(tr_correlators(CurveKind::CK, 2, 5), 3);
    auto eta = eta_reexpand(ck, 6);
    TableComparison c = compare_tables(eta, up_to_level(spin_reference(2, 5, 6), 3), "eta");
    o.require(c.ok() && c.nonzero > 0, "eta " + n(c.mismatches.size()) + " mismatches");
    o.require(eta.get(1, {1}) == s2_power(1) * Rational(5, 48), "<tau_1>_1 = 5/48 s^2");
    total += c.compared;
    o.note(n(total) + " entries compared");
  });

  criterion(8, "cns Laplace identity after sign calibration", 0, [](Outcome& o) {
    int sign = calibrate_laplace_sign();
    for (auto [g, k] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}}) {
      LaplaceReport r = cns_laplace_check(g, k, sign);
      o.require(r.comparison.ok(), "(" + std::to_string(g) + "," + std::to_string(k) + ")");
    }
    o.note("leg sign " + std::to_string(sign));
  });

  criterion(9, "super volume recursion, exact and numeric", 0, [](Outcome& o) {
    TranslatedCheckReport exact = translated_virasoro_check(Truncation{2, 6, 5, 8});
    o.require(exact.ok(), "translated constraints");
    o.note(n(exact.entries.size()) + " translated residuals zero");
    RecursionChecker checker(2);
    RecursionConvention def;
    Real delta = 0;
    for (const char* L : {"0.5", "1.3", "2.7"})
      delta = std::max(delta, checker.check(0, 1, {Real(L)}, def).orders.at(1).residual());
    o.require(delta < Real("1e-9"), "(0,1) delta term " + delta.str(3));
    Real s0 = checker.check(1, 1, {Real(1)}, def).orders.at(0).residual();
    o.require(s0 < Real("1e-9"), "(1,1) s^0 " + s0.str(3));
    std::string passing;
    for (const auto& conv : all_conventions()) {
      Real worst = std::max(checker.check(1, 1, {Real("1.7")}, conv).max_residual(),
                            checker.check(0, 3, {Real("1.1"), Real("0.7"), Real("0.4")}, conv).max_residual());
      if (worst < Real("1e-8")) passing += (passing.empty() ? "" : " | ") + conv.str();
    }
    o.require(!passing.empty(), "some convention passes through s^4");
    o.note("passing: " + passing);
  });

  criterion(10, "artifacts byte-identical across runs, threads and cache", 0, [](Outcome& o) {
    std::random_device rd;
    auto dir = std::filesystem::temp_directory_path() / ("skdv-acceptance-" + std::to_string(rd()));
    std::vector<std::vector<std::string>> requests = {
        {"correlators", "spin", "--gmax", "2", "--dmax", "4", "--smax", "6"},
        {"correlators", "zk-bracket", "--gmax", "2", "--dmax", "4", "--smax", "6"},
        {"correlators", "bgw", "--gmax", "2", "--dmax", "4", "--smax", "6", "--format", "csv"},
        {"volume", "--g", "1", "--n", "2", "--smax", "4"},
        {"tr", "--curve", "ck", "--gmax", "1", "--nmax", "3", "--eta"},
        {"tr", "--curve", "cns", "--gmax", "1", "--nmax", "2"}};
    for (auto req : requests) {
      auto with = [&](std::vector<std::string> extra) {
        auto a = req;
        a.insert(a.end(), extra.begin(), extra.end());
        int code = 0;
        std::string out = run_cli(a, &code);
        if (code != 0) out = "exit " + std::to_string(code);
        return out;
      };
      std::string one = with({"--threads", "1", "--no-cache"});
      std::string again = with({"--threads", "1", "--no-cache"});
      std::string three = with({"--threads", "3", "--no-cache"});
      std::string stored = with({"--cache-dir", dir.string()});
      std::string hit = with({"--cache-dir", dir.string(), "--threads", "2"});
      o.require(!one.empty() && one.rfind("exit", 0) != 0, req[0] + " " + req[1] + " ran");
      o.require(one == again && one == three && one == stored && one == hit, req[0] + " " + req[1] + " identical");
    }
    std::filesystem::remove_all(dir);
    o.note(n(requests.size()) + " artifacts");
  });

  return failures;
}
