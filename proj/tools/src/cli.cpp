#include "skdv_cli/cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "skdv/kappa.hpp"
#include "skdv/parallel.hpp"
#include "skdv/spectral.hpp"
#include "skdv/spin.hpp"
#include "skdv/virasoro.hpp"
#include "skdv/volume.hpp"
#include "skdv_cli/cache.hpp"
#include "skdv_cli/suites.hpp"

namespace skdv::cli {

namespace {

using nlohmann::json;

struct Options {
  Truncation trunc;
  std::string format = "json";
  int threads = 1;
  std::string cache_dir;
  bool no_cache = false;
};

std::string table_text(const CorrelatorTable& t) {
  std::ostringstream os;
  os << "# " << t.engine() << " " << t.truncation().str() << "\n";
  for (const auto& [key, v] : t.entries()) {
    os << "<";
    for (std::size_t i = 0; i < key.second.size(); ++i) os << (i ? " " : "") << "tau_" << key.second[i];
    os << ">_" << key.first << " = " << v.str() << "\n";
  }
  return os.str();
}

std::string render_table(const CorrelatorTable& t, const std::string& format) {
  if (format == "csv") return t.to_csv();
  if (format == "text") return table_text(t);
  return t.to_json().dump() + "\n";
}

CorrelatorTable build_table(const std::string& engine, const Truncation& t) {
  if (engine == "kw") return kw_correlators(t);
  if (engine == "bgw") return bgw_correlators(t);
  if (engine == "spin") return spin_correlators(t);
  if (engine == "zk") return zk_correlators(t);
  if (engine == "zk-bracket") return bracket_psi_correlators(t);
  throw std::invalid_argument("unknown engine '" + engine + "'");
}

std::string volume_csv(const VolumePolynomial& v) {
  std::ostringstream os;
  os << "s2,k,pi2_power,coefficient\n";
  for (const auto& [key, poly] : v.terms())
    for (const auto& [mono, c] : poly.terms()) {
      os << key.first << ",";
      for (std::size_t i = 0; i < key.second.size(); ++i) os << (i ? ";" : "") << key.second[i];
      os << "," << (mono.empty() ? 0 : mono[0]) << "," << c.str() << "\n";
    }
  return os.str();
}

std::string render_odd_table(const OddDifferentialTable& t, const std::string& format) {
  if (format == "csv" || format == "text") return t.to_csv();
  return t.to_json().dump() + "\n";
}

// Looks the request up in the cache, else computes and stores it.
std::string cached(const json& request, const Options& opt, std::ostream& err,
                   const std::function<std::string()>& compute) {
  if (opt.no_cache) return compute();
  ArtifactCache cache(opt.cache_dir);
  if (auto hit = cache.load(request)) {
    err << "cache hit " << cache.key(request) << "\n";
    return *hit;
  }
  std::string payload = compute();
  if (cache.enabled() && cache.store(request, payload)) err << "cache store " << cache.key(request) << "\n";
  return payload;
}

void add_common(CLI::App* cmd, Options& opt, bool with_trunc) {
  if (with_trunc) {
    cmd->add_option("--gmax", opt.trunc.gmax, "highest genus")->check(CLI::NonNegativeNumber);
    cmd->add_option("--kmax", opt.trunc.kmax, "highest psi exponent")->check(CLI::NonNegativeNumber);
    cmd->add_option("--dmax", opt.trunc.dmax, "highest t-degree")->check(CLI::NonNegativeNumber);
    cmd->add_option("--smax", opt.trunc.smax, "highest s^2 power")->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--cache-dir", opt.cache_dir, "artifact cache directory (default $SKDV_CACHE_DIR)");
  cmd->add_flag("--no-cache", opt.no_cache, "compute without the cache");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersection numbers, tau functions, super volumes and topological recursion", "skdv"};
  app.require_subcommand(1);
  Options opt;

  auto* corr = app.add_subcommand("correlators", "correlator table of one engine");
  std::string engine;
  corr->add_option("engine", engine, "engine")
      ->required()
      ->check(CLI::IsMember({"kw", "bgw", "spin", "zk", "zk-bracket"}));
  add_common(corr, opt, true);

  auto* vol = app.add_subcommand("volume", "super volume polynomial V_{g,n}");
  int g = 1, n = 1, vol_smax = 4;
  vol->add_option("--g", g, "genus")->required()->check(CLI::NonNegativeNumber);
  vol->add_option("--n", n, "boundaries")->required()->check(CLI::PositiveNumber);
  vol->add_option("--smax", vol_smax, "highest power of s kept")->check(CLI::NonNegativeNumber);
  add_common(vol, opt, false);

  auto* tr = app.add_subcommand("tr", "topological recursion on a spectral curve");
  std::string curve;
  int gmax = 2, nmax = 3, kmax = 6, order = 0;
  bool eta = false;
  tr->add_option("--curve", curve, "spectral curve")
      ->required()
      ->check(CLI::IsMember({"airy", "bessel", "ck", "cns"}));
  tr->add_option("--gmax", gmax, "highest genus")->check(CLI::NonNegativeNumber);
  tr->add_option("--nmax", nmax, "most legs")->check(CLI::PositiveNumber);
  tr->add_flag("--eta", eta, "re-expand ck in eta (ck only)");
  tr->add_option("--kmax", kmax, "highest eta index kept with --eta")->check(CLI::NonNegativeNumber);
  tr->add_option("--order", order, "series order of y (default: enough for the table)")
      ->check(CLI::NonNegativeNumber);
  add_common(tr, opt, false);

  auto* verify = app.add_subcommand("verify", "run verification suites; exit 0 iff all pass");
  std::vector<std::string> suites;
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify->add_option("suite", suites, "suite name(s)")->required()->check(CLI::IsMember(allowed));
  add_common(verify, opt, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (app.get_subcommands().empty()) out << app.help();
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kUsage;
  }

  try {
    set_default_threads(opt.threads);
    if (*corr) {
      opt.trunc.validate();
      json req = {{"command", "correlators"}, {"engine", engine}, {"truncation", to_json(opt.trunc)},
                  {"format", opt.format}};
      out << cached(req, opt, err, [&] { return render_table(build_table(engine, opt.trunc), opt.format); });
      return kOk;
    }
    if (*vol) {
      if (vol_smax % 2) throw std::invalid_argument("--smax is a power of s and must be even");
      if (n == 0 || (2 * g - 2 + n <= 0 && !(g == 0 && (n == 1 || n == 2))))
        throw std::invalid_argument("(g,n) must be stable or (0,1), (0,2)");
      json req = {{"command", "volume"}, {"g", g}, {"n", n}, {"smax", vol_smax}, {"format", opt.format}};
      out << cached(req, opt, err, [&] {
        VolumePolynomial v = volume_polynomial(g, n, vol_smax / 2);
        if (opt.format == "text") return v.str() + "\n";
        if (opt.format == "csv") return volume_csv(v);
        return v.to_json().dump() + "\n";
      });
      return kOk;
    }
    if (*tr) {
      CurveKind kind = parse_curve(curve);
      if (eta && kind != CurveKind::CK) throw std::invalid_argument("--eta applies to the ck curve only");
      int level = 2 * gmax - 2 + nmax;
      int ord = order ? order : SpectralCurve::default_order(kind, std::max(level, 1));
      json req = {{"command", "tr"}, {"curve", curve}, {"gmax", gmax}, {"nmax", nmax}, {"order", ord},
                  {"eta", eta},      {"format", opt.format}};
      if (eta) req["kmax"] = kmax;
      out << cached(req, opt, err, [&] {
        OddDifferentialTable t = tr_correlators(SpectralCurve::make(kind, ord), gmax, nmax);
        if (eta) t = eta_reexpand(t, kmax);
        return render_odd_table(t, opt.format);
      });
      return kOk;
    }
    // verify
    if (std::find(suites.begin(), suites.end(), "all") != suites.end()) suites = suite_names();
    opt.trunc.validate();
    bool all_ok = true;
    json reports = json::array();
    std::ostringstream text;
    for (const auto& name : suites) {
      SuiteResult r = run_suite(name, opt.trunc);
      all_ok = all_ok && r.ok;
      text << name << ": " << (r.ok ? "PASS" : "FAIL") << " (" << r.summary << ")\n";
      reports.push_back({{"suite", name}, {"ok", r.ok}, {"summary", r.summary}, {"report", r.report}});
    }
    if (opt.format == "json") {
      json doc = {{"truncation", to_json(opt.trunc)}, {"ok", all_ok}, {"suites", reports}};
      out << doc.dump() << "\n";
    } else {
      out << text.str();
    }
    return all_ok ? kOk : kVerifyFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
}

}  // namespace skdv::cli
