#include "hypvol/cli.hpp"

#include "hypvol/errors.hpp"
#include "hypvol/expect.hpp"
#include "hypvol/mcsim.hpp"
#include "hypvol/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

namespace hypvol {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse beta value '" + item + "'");
    }
    if (used != item.size()) throw UsageError("cannot parse beta value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty beta list");
  return out;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  try {
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("cannot parse ") + what + " '" + s + "'");
}

Representation parse_rep(const std::string& s) {
  if (s == "upper") return Representation::Upper;
  if (s == "lower") return Representation::Lower;
  return Representation::Auto;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json record(const std::string& command, Json params, const ExpectationResult& r) {
  Json j;
  j["command"] = command;
  j["params"] = std::move(params);
  j["value"] = r.value;
  j["abs_err_est"] = r.abs_err_est;
  if (r.exact) j["exact"] = r.exact->str();
  j["method"] = r.method;
  if (!r.representation.empty()) j["representation"] = r.representation;
  j["pole_path"] = r.pole_path;
  if (r.near_pole) j["near_pole"] = true;
  return j;
}

// Shared flags of expect / hypvolume / simulate.
struct SpecFlags {
  int dim = 0;
  std::string betas;
  BetaSpec spec() const {
    if (dim == 0) throw UsageError("--dim is required");
    if (betas.empty()) throw UsageError("--betas is required");
    BetaSpec s{dim, parse_list(betas)};
    s.validate();
    return s;
  }
};

ExpectationResult hypvolume_case(const std::string& name, int param, const QuadConfig& cfg, bool use_exact) {
  ExpectOptions eo;
  eo.use_exact = use_exact;
  if (name == "ideal3") {
    require(param >= 4, "ideal3 needs n >= 4");
    return expected_hyp_volume({3, std::vector<double>(param, -1.0)}, cfg, eo);
  }
  if (name == "ideal2") {
    require(param >= 3, "ideal2 needs n >= 3");
    return expected_hyp_volume({2, std::vector<double>(param, -1.0)}, cfg, eo);
  }
  if (name == "ideal-simplex") {
    require(param >= 2, "ideal-simplex needs d >= 2");
    if (!use_exact) return expected_hyp_volume({param, std::vector<double>(param + 1, -1.0)}, cfg, eo);
    return ideal_simplex_volume(param, cfg);
  }
  if (name == "polygon-beta0") {
    require(param >= 3, "polygon-beta0 needs n >= 3");
    if (!use_exact) return expected_hyp_volume({2, std::vector<double>(param, 0.0)}, cfg, eo);
    return polygon_beta0(param, cfg);
  }
  throw UsageError("unknown case '" + name + "'");
}

const char* case_param(const std::string& name) { return name == "ideal-simplex" ? "dim" : "n"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected hyperbolic volumes and beta integrals of random beta polytopes"};
  app.name("hypvol");
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict", strict, "Require an explicit --seed for randomized commands");

  SpecFlags sf;
  std::string exponent_s, rep = "auto";
  double tol = 1e-12;
  auto add_spec = [&](CLI::App* c) {
    c->add_option("--dim", sf.dim, "Dimension d >= 2");
    c->add_option("--betas", sf.betas, "Comma separated beta_i >= -1");
  };
  auto add_quad = [&](CLI::App* c) {
    c->add_option("--rep", rep, "Representation")->check(CLI::IsMember({"auto", "upper", "lower"}));
    c->add_option("--tol", tol, "Relative quadrature tolerance");
  };

  auto* expect = app.add_subcommand("expect", "Expected beta integral E int_P (1-|x|^2)^beta dx");
  add_spec(expect);
  add_quad(expect);
  expect->add_option("--exponent", exponent_s, "Exponent beta > -(d+1)/2")->required();

  auto* hyp = app.add_subcommand("hypvolume", "Expected hyperbolic volume of the hull");
  add_spec(hyp);
  add_quad(hyp);
  std::string case_name;
  int case_n = 0;
  bool force_quadrature = false;
  hyp->add_option("--case", case_name, "ideal3 | ideal-simplex | polygon-beta0 | ideal2")
      ->check(CLI::IsMember({"ideal3", "ideal-simplex", "polygon-beta0", "ideal2"}));
  hyp->add_option("--n", case_n, "Number of points for a --case");
  hyp->add_flag("--quadrature", force_quadrature, "Skip exact fast paths");

  auto* table = app.add_subcommand("table", "Tables of special cases");
  std::string range, format = "csv";
  table->add_option("--case", case_name, "ideal3 | ideal-simplex | polygon-beta0 | ideal2")
      ->required()
      ->check(CLI::IsMember({"ideal3", "ideal-simplex", "polygon-beta0", "ideal2"}));
  table->add_option("--range", range, "a:b")->required();
  table->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  table->add_flag("--quadrature", force_quadrature, "Skip exact fast paths");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo cross-check");
  add_spec(sim);
  long samples = 100000;
  std::optional<std::uint64_t> seed;
  int streams = 8;
  std::string oracle = "auto";
  sim->add_option("--samples", samples, "Sample count");
  sim->add_option("--seed", seed, "64-bit seed");
  sim->add_option("--streams", streams, "Independent RNG streams");
  sim->add_option("--oracle", oracle, "auto | absorption | gauss-bonnet | lobachevsky | simplex-mc")
      ->check(CLI::IsMember({"auto", "absorption", "gauss-bonnet", "lobachevsky", "simplex-mc"}));
  sim->add_option("--exponent", exponent_s, "Exponent for the absorption oracle (default 0)");

  auto* ver = app.add_subcommand("verify", "Run the verification suite");
  bool quick = false;
  double tolerance_scale = 1.0;
  ver->add_flag("--quick", quick, "Reduced grids");
  ver->add_option("--seed", seed, "Seed for the statistical checks");
  ver->add_option("--tolerance-scale", tolerance_scale)->group("");

  std::vector<std::string> argv_store{"hypvol"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream buf;
  try {
    QuadConfig cfg;
    cfg.rel_tol = tol;
    cfg.validate();
    ExpectOptions eo;
    eo.rep = parse_rep(rep);

    if (*expect) {
      BetaSpec s = sf.spec();
      double beta = parse_real(exponent_s, "exponent");
      auto r = expected_beta_integral(s, beta, cfg, eo);
      Json p;
      p["dim"] = s.d;
      p["betas"] = s.betas;
      p["exponent"] = beta;
      p["rep"] = rep;
      buf << record("expect", p, r).dump() << '\n';
    } else if (*hyp) {
      Json p;
      ExpectationResult r;
      if (!case_name.empty()) {
        int param = case_name == "ideal-simplex" ? sf.dim : case_n;
        if (param == 0) throw UsageError(std::string("--case ") + case_name + " needs --" + case_param(case_name));
        p["case"] = case_name;
        p[case_param(case_name)] = param;
        r = hypvolume_case(case_name, param, cfg, !force_quadrature);
      } else {
        BetaSpec s = sf.spec();
        eo.use_exact = !force_quadrature;
        p["dim"] = s.d;
        p["betas"] = s.betas;
        p["rep"] = rep;
        r = expected_hyp_volume(s, cfg, eo);
      }
      buf << record("hypvolume", p, r).dump() << '\n';
    } else if (*table) {
      auto colon = range.find(':');
      if (colon == std::string::npos) throw UsageError("--range must look like a:b");
      int lo = static_cast<int>(parse_real(range.substr(0, colon), "range start"));
      int hi = static_cast<int>(parse_real(range.substr(colon + 1), "range end"));
      if (hi < lo) throw UsageError("empty range");
      std::vector<ExpectationResult> rows;
      for (int v = lo; v <= hi; ++v) rows.push_back(hypvolume_case(case_name, v, cfg, !force_quadrature));
      if (format == "csv") {
        buf << "param,value,abs_err_est,exact\n";
        for (int v = lo; v <= hi; ++v) {
          const auto& r = rows[v - lo];
          buf << v << ',' << fmt(r.value) << ',' << fmt(r.abs_err_est) << ',' << (r.exact ? r.exact->str() : "")
              << '\n';
        }
      } else {
        Json j;
        j["command"] = "table";
        j["params"] = {{"case", case_name}, {"range", range}};
        Json arr = Json::array();
        for (int v = lo; v <= hi; ++v) {
          const auto& r = rows[v - lo];
          Json row;
          row["param"] = v;
          row["value"] = r.value;
          row["abs_err_est"] = r.abs_err_est;
          if (r.exact) row["exact"] = r.exact->str();
          row["method"] = r.method;
          arr.push_back(row);
        }
        j["rows"] = arr;
        buf << j.dump() << '\n';
      }
    } else if (*sim) {
      if (strict && !seed) throw UsageError("--strict requires --seed");
      BetaSpec s = sf.spec();
      SampleConfig sc{seed.value_or(1), samples, streams};
      sc.validate();
      std::string o = oracle;
      bool all_ideal = s.all_equal(-1);
      bool all_inside = std::all_of(s.betas.begin(), s.betas.end(), [](double b) { return b > -1; });
      if (o == "auto") {
        if (s.d == 2)
          o = "gauss-bonnet";
        else if (s.d == 3 && all_ideal)
          o = "lobachevsky";
        else if (s.d == 3 && all_inside && static_cast<int>(s.n()) == 4)
          o = "simplex-mc";
        else
          o = "absorption";
      }
      McEstimate e;
      double target;
      Json p;
      p["dim"] = s.d;
      p["betas"] = s.betas;
      p["samples"] = samples;
      p["streams"] = streams;
      p["oracle"] = o;
      if (o == "absorption") {
        double beta = exponent_s.empty() ? 0.0 : parse_real(exponent_s, "exponent");
        p["exponent"] = beta;
        e = mc_absorption(s, beta, sc);
        target = expected_beta_integral(s, beta, cfg, eo).value;
      } else {
        if (!exponent_s.empty()) throw UsageError("--exponent only applies to the absorption oracle");
        if (o == "gauss-bonnet") {
          if (s.d != 2) throw UsageError("gauss-bonnet oracle needs --dim 2");
          e = mc_polygon_area(s, sc);
        } else if (o == "lobachevsky") {
          if (s.d != 3 || !all_ideal) throw UsageError("lobachevsky oracle needs --dim 3 and all betas -1");
          e = mc_ideal_polytope3_volume(static_cast<int>(s.n()), sc);
        } else {
          if ((s.d != 2 && s.d != 3) || static_cast<int>(s.n()) != s.d + 1 || !all_inside)
            throw UsageError("simplex-mc oracle needs d in {2,3}, d+1 points and betas > -1");
          e = mc_simplex_volume(s, sc);
        }
        target = expected_hyp_volume(s, cfg, eo).value;
      }
      Json j;
      j["command"] = "simulate";
      j["params"] = p;
      j["value"] = e.mean;
      j["abs_err_est"] = e.stderr_;
      j["method"] = "monte-carlo:" + o;
      j["seed"] = sc.seed;
      j["n"] = e.n;
      j["target"] = target;
      double dev = e.mean - target;
      if (e.stderr_ > 1e-12 * std::max(1.0, std::fabs(e.mean)))
        j["z_score"] = dev / e.stderr_;
      else
        j["z_score"] = std::fabs(dev) <= 1e-9 * std::max(1.0, std::fabs(target)) ? Json(0.0) : Json(nullptr);
      if (e.resampled > 0) j["resampled"] = e.resampled;
      buf << j.dump() << '\n';
    } else if (*ver) {
      VerifyOptions vo;
      vo.quick = quick;
      vo.tolerance_scale = tolerance_scale;
      if (seed) vo.seed = *seed;
      auto results = run_verification(vo);
      std::vector<std::string> failed;
      buf << std::left << std::setw(22) << "check" << std::setw(6) << "pass" << std::setw(14) << "discrepancy"
          << std::setw(14) << "tolerance" << std::setw(9) << "seconds" << "worst case\n";
      for (const auto& r : results) {
        buf << std::left << std::setw(22) << r.id << std::setw(6) << (r.pass ? "ok" : "FAIL") << std::setw(14)
            << std::setprecision(3) << r.discrepancy << std::setw(14) << r.tolerance << std::setw(9)
            << std::fixed << std::setprecision(2) << r.seconds << std::defaultfloat << r.detail << '\n';
        if (!r.pass) failed.push_back(r.id);
      }
      if (!failed.empty()) {
        buf << "failed:";
        for (const auto& id : failed) buf << ' ' << id;
        buf << '\n';
        out << buf.str();
        return 1;
      }
      buf << "all " << results.size() << " checks passed\n";
    }
  } catch (const UsageError& e) {
    err << "hypvol: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "hypvol: " << e.what() << '\n';
    return 2;
  } catch (const QuadratureError& e) {
    err << "hypvol: " << e.what() << " (best estimate " << fmt(e.best_estimate()) << ")\n";
    return 2;
  }
  out << buf.str();
  return 0;
}

}  // namespace hypvol
