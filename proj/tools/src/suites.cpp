#include "skdv_cli/suites.hpp"

#include <stdexcept>

#include "skdv/combinatorics.hpp"
#include "skdv/kappa.hpp"
#include "skdv/recursion.hpp"
#include "skdv/spectral.hpp"
#include "skdv/spin.hpp"
#include "skdv/virasoro.hpp"
#include "skdv/volume.hpp"

namespace skdv::cli {

namespace {

using nlohmann::json;

SuiteResult theorem1(const Truncation& t) {
  ComparisonReport r = theorem1_compare(t);
  std::string summary = "compared " + std::to_string(r.compared) + ", nonzero " + std::to_string(r.nonzero) +
                        ", " + std::to_string(r.mismatches.size()) + " mismatches";
  return {"theorem1", r.ok() && r.nonzero > 0, r.to_json(), summary};
}

SuiteResult kdv(const Truncation& t) {
  SuiteResult out{"kdv", true, json::object(), {}};
  std::vector<std::pair<std::string, GradedSeries>> series = {
      {"kw", kw_free_energy(t)},
      {"zk", zk_free_energy(t, true)},
      {"bgw", bgw_free_energy(t)},
      {"omega", assemble_z_omega(t)}};
  for (const auto& [name, s] : series) {
    KdvResidual r = kdv_residual(s);
    bool ok = r.residual.size() == 0;
    out.ok = out.ok && ok;
    out.report[name] = {{"certified_degree", r.certified_degree}, {"residual_terms", r.residual.size()}, {"ok", ok}};
  }
  return out;
}

SuiteResult homogeneity(const Truncation& t) {
  std::size_t bgw = check_homogeneity(bgw_free_energy(t)).size();
  std::size_t omega = check_homogeneity(assemble_z_omega(t)).size();
  std::size_t kw = check_homogeneity(kw_free_energy(t)).size();
  // KW is not homogeneous in this sense; its residual must not vanish.
  bool ok = bgw == 0 && omega == 0 && kw > 0;
  return {"homogeneity", ok,
          {{"bgw_residual_terms", bgw}, {"omega_residual_terms", omega}, {"kw_residual_terms", kw},
           {"kw_expected_nonzero", true}},
          {}};
}

SuiteResult virasoro(const Truncation& t) {
  SuiteResult out{"virasoro", true, json::object(), {}};
  GradedSeries kw = kw_free_energy(t);
  GradedSeries bgw = bgw_free_energy(t);
  GradedSeries omega = assemble_z_omega(t);
  json rows = json::array();
  auto run = [&](const std::string& name, const GradedSeries& f, const VirasoroSpec& spec) {
    for (int m = spec.m_min; m <= spec.m_max; ++m) {
      std::size_t n = apply_virasoro_oracle(f, spec, m).size();
      out.ok = out.ok && n == 0;
      rows.push_back({{"engine", name}, {"m", m}, {"residual_terms", n}});
    }
  };
  run("kw", kw, VirasoroSpec::kw());
  run("bgw", bgw, VirasoroSpec::gbgw());
  run("omega", omega, VirasoroSpec::gbgw());
  out.report["constraints"] = rows;
  TranslatedCheckReport tr = translated_virasoro_check(t);
  out.ok = out.ok && tr.ok();
  out.report["translated"] = tr.to_json();
  return out;
}

SuiteResult vanishing(const Truncation&) {
  SuiteResult out{"vanishing", true, json::object(), {}};
  Rational k4 = vanishing_check(2, 1, 4, {}, {0});
  Rational k5 = vanishing_check(3, 0, 5, {1}, {});
  bool rejected = false;
  try {
    vanishing_check(2, 0, 3, {}, {});
  } catch (const ExceptionalPair&) {
    rejected = true;
  }
  KappaIntegrals ki;
  Rational k3 = ki.zk_via_shift(2, {});
  Rational chi = euler_characteristic_constant(2);
  out.ok = k4.is_zero() && k5.is_zero() && rejected && k3 == Rational(-1, 240) && chi == k3;
  out.report = {{"M21_K4", k4.str()},
                {"M3_K5_kappa1", k5.str()},
                {"exceptional_pair_rejected", rejected},
                {"M2_K3_shift", k3.str()},
                {"M2_K3_euler", chi.str()}};
  return out;
}

SuiteResult trr(const Truncation&) {
  SuiteResult out{"trr", true, json::object(), {}};
  Genus0Trr trr;
  std::size_t compared = 0;
  json bad = json::array();
  for (int n = 1; n <= 5; ++n)
    for_each_multiset_bounded(n, 4, 4, [&](const Multiset& m) {
      Rational v = n == 1 ? spin_one_point(m[0]) : n == 2 ? spin_two_point(m[0], m[1]) : trr.correlator(m);
      Rational c = genus0_closed_form(m);
      ++compared;
      if (v != c) bad.push_back({{"k", m}, {"trr", v.str()}, {"closed_form", c.str()}});
    });
  out.ok = bad.empty();
  out.report = {{"compared", compared}, {"mismatches", bad}};
  out.summary = "compared " + std::to_string(compared) + ", " + std::to_string(bad.size()) + " mismatches";
  return out;
}

SuiteResult laplace(const Truncation&) {
  SuiteResult out{"laplace", true, json::object(), {}};
  int sign = calibrate_laplace_sign();
  json rows = json::array();
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 1}}) {
    LaplaceReport r = cns_laplace_check(g, n, sign);
    out.ok = out.ok && r.comparison.ok();
    rows.push_back(r.to_json());
  }
  out.report = {{"leg_sign", sign}, {"checks", rows}};
  return out;
}

SuiteResult recursion(const Truncation& t) {
  SuiteResult out{"recursion", true, json::object(), {}};
  TranslatedCheckReport exact = translated_virasoro_check(t);
  out.report["exact"] = exact.to_json();

  const Real tol("1e-8"), tol_delta("1e-9");
  RecursionChecker checker(2);
  RecursionConvention def;
  // (0,1): the s^2 order is the delta term alone.
  Real d01 = 0;
  for (const char* L : {"0.5", "1.3", "2.7"}) {
    auto r = checker.check(0, 1, {Real(L)}, def);
    d01 = std::max(d01, r.orders.at(1).residual());
  }
  Real s0 = checker.check(1, 1, {Real(1)}, def).orders.at(0).residual();
  json scan = json::array();
  json passing = json::array();
  std::string first;
  for (const auto& conv : all_conventions()) {
    Real worst = 0;
    for (auto [g, n, L] : std::vector<std::tuple<int, int, std::vector<Real>>>{
             {1, 1, {Real("1.7")}}, {0, 3, {Real("1.1"), Real("0.7"), Real("0.4")}}})
      worst = std::max(worst, checker.check(g, n, L, conv).max_residual());
    bool ok = worst < tol;
    scan.push_back({{"convention", conv.to_json()}, {"max_residual", worst.str(6)}, {"ok", ok}});
    if (ok) {
      if (passing.empty()) first = conv.str();
      passing.push_back(conv.to_json());
    }
  }
  out.ok = exact.ok() && d01 < tol_delta && s0 < tol_delta && !passing.empty();
  out.report["delta_01_residual"] = d01.str(6);
  out.report["s0_11_residual"] = s0.str(6);
  out.report["convention_scan"] = scan;
  out.report["passing"] = passing;
  out.summary = "exact " + std::string(exact.ok() ? "zero" : "nonzero") + ", delta " + d01.str(3) + ", s^0 " +
                s0.str(3) + ", " + std::to_string(passing.size()) + " passing convention(s)";
  if (!first.empty()) out.summary += ": " + first;
  return out;
}

SuiteResult spectral(const Truncation&) {
  SuiteResult out{"spectral", true, json::object(), {}};
  auto level = [](const OddDifferentialTable& t, int lmax) {
    OddDifferentialTable f(t.engine());
    for (const auto& [k, v] : t.entries())
      if (2 * k.first - 2 + static_cast<int>(k.second.size()) <= lmax) f.set(k.first, k.second, v);
    return f;
  };
  json rows = json::array();
  auto add = [&](const TableComparison& c) {
    out.ok = out.ok && c.ok() && c.nonzero > 0;
    rows.push_back(c.to_json());
  };
  for (CurveKind kind : {CurveKind::Airy, CurveKind::Bessel, CurveKind::CK}) {
    auto tr = level(tr_correlators(kind, 3, 6), 4);
    auto ref = level(reference_table(kind, 3, 6), 4);
    add(compare_tables(tr, ref, curve_name(kind) + " vs " + ref.engine()));
    if (!symmetry_violations(tr).empty()) out.ok = false;
  }
  auto ck = level(tr_correlators(CurveKind::CK, 2, 5), 3);
  add(compare_tables(eta_reexpand(ck, 4), level(spin_reference(2, 5, 4), 3), "ck eta vs spin"));
  add(compare_tables(at_s_zero(ck), level(tr_correlators(CurveKind::Bessel, 2, 5), 3), "ck at s=0 vs bessel"));
  for (CurveKind kind : {CurveKind::Airy, CurveKind::Bessel, CurveKind::CK, CurveKind::CNS})
    add(stability_check(kind, 2, 3, SpectralCurve::default_order(kind, 3)).comparison);
  out.report["comparisons"] = rows;
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"theorem1", "kdv",     "homogeneity", "virasoro", "vanishing",
                                                 "trr",      "laplace", "recursion",   "spectral"};
  return names;
}

static SuiteResult dispatch(const std::string& name, const Truncation& trunc) {
  if (name == "theorem1") return theorem1(trunc);
  if (name == "kdv") return kdv(trunc);
  if (name == "homogeneity") return homogeneity(trunc);
  if (name == "virasoro") return virasoro(trunc);
  if (name == "vanishing") return vanishing(trunc);
  if (name == "trr") return trr(trunc);
  if (name == "laplace") return laplace(trunc);
  if (name == "recursion") return recursion(trunc);
  if (name == "spectral") return spectral(trunc);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

SuiteResult run_suite(const std::string& name, const Truncation& trunc) {
  trunc.validate();
  SuiteResult r = dispatch(name, trunc);
  if (r.summary.empty()) r.summary = r.ok ? "all residuals zero" : "residuals nonzero";
  return r;
}

}  // namespace skdv::cli
