#include "gbm/harness.hpp"

#include <CLI11.hpp>

#include <Eigen/Core>
#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gbm/error.hpp"
#include "gbm/metrics.hpp"

namespace gbm::harness {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string ver(int a, int b, int c) { return std::to_string(a) + "." + std::to_string(b) + "." + std::to_string(c); }

json versions() {
  json v;
  v["gbmlab"] = kVersion;
  v["eigen"] = ver(EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
  v["boost"] = ver(BOOST_VERSION / 100000, BOOST_VERSION / 100 % 1000, BOOST_VERSION % 100);
  v["compiler"] = __VERSION__;
  return v;
}

json report_head(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["config_echo"] = c.echo();
  j["rows"] = json::array();
  return j;
}

void finish(Report& r, const std::string& verdict, json summary) {
  r.json["summary"] = std::move(summary);
  r.json["verdict"] = verdict;
  r.json["versions"] = versions();
}

json gb_rows(const GBReport& g) {
  json rows = json::array();
  rows.push_back({{"term", "interior"}, {"codim", 0}, {"value", g.interior}, {"error", g.interior_error}});
  if (g.excluded_mass != 0.0)
    rows.push_back({{"term", "excluded-caps"}, {"codim", 0}, {"value", g.excluded_mass}, {"error", 0.0}});
  for (const auto& b : g.boundary)
    rows.push_back({{"term", b.face}, {"codim", b.codim}, {"value", b.value}, {"error", b.error}});
  return rows;
}

json gb_summary(const GBReport& g) {
  json s;
  s["subject"] = g.subject;
  s["interior"] = g.interior;
  if (!g.boundary.empty()) {
    s["edges"] = g.edge_sum();
    s["corners"] = g.corner_sum();
  }
  s["total"] = g.total;
  s["nearest"] = g.nearest;
  s["expected_chi"] = g.expected_chi ? json(to_string(*g.expected_chi)) : json(nullptr);
  s["converged"] = g.interior_converged;
  return s;
}

AssemblyOptions options_for(const ExperimentConfig& c, int dimension) {
  AssemblyOptions opt;
  opt.quad = c.quad_for(dimension);
  if (c.seed) opt.angles.seed = *c.seed;
  return opt;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int exit_code(Verdict v) noexcept {
  switch (v) {
    case Verdict::match: return exit_ok;
    case Verdict::mismatch: return exit_mismatch;
    case Verdict::inconclusive: return exit_inconclusive;
  }
  return exit_usage;
}

int exit_code(Errc c) noexcept {
  if (c == Errc::model_consistency) return exit_model;
  if (c == Errc::inconsistency) return exit_inconclusive;
  return exit_usage;
}

std::optional<QuadratureSpec> ExperimentConfig::quad_for(int dimension) const {
  if (!order && !tol && !seed) return std::nullopt;
  QuadratureSpec q = QuadratureSpec::for_dimension(dimension);
  if (order) q.order = *order;
  if (tol) q.abs_tol = *tol;
  if (seed) q.seed = *seed;
  q.validate();
  return q;
}

json ExperimentConfig::echo() const {
  json j;
  j["command"] = command;
  if (!target.empty()) j["target"] = target;
  if (!params.empty()) {
    json p;
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
  }
  if (!polygon.empty()) j["polygon"] = polygon;
  if (!eps.empty()) j["eps"] = eps;
  if (!cutoffs.empty()) j["cutoffs"] = cutoffs;
  if (order) j["order"] = *order;
  if (tol) j["tol"] = *tol;
  if (seed) j["seed"] = *seed;
  if (!family.empty()) j["family"] = family;
  if (g) j["g"] = *g;
  if (n) j["n"] = *n;
  if (upto) j["upto"] = *upto;
  if (expect) j["expect"] = *expect;
  j["format"] = format;
  return j;
}

Report cmd_verify_closed(const ExperimentConfig& c) {
  const MetricChart chart = metrics::by_name(c.target, c.params);
  const GBReport g = gauss_bonnet_closed(chart, options_for(c, chart.dimension()));
  Report r{report_head(c), exit_code(g.verdict)};
  r.json["rows"] = gb_rows(g);
  finish(r, to_string(g.verdict), gb_summary(g));
  return r;
}

Report cmd_polygon(const ExperimentConfig& c) {
  if (c.polygon.empty()) throw Error(Errc::configuration, "polygon needs --polygon");
  const Region region = regions::polygon_by_name(c.polygon);
  const GBReport g = gauss_bonnet_2d_region(region, options_for(c, 2));
  Report r{report_head(c), exit_code(g.verdict)};
  r.json["rows"] = gb_rows(g);
  finish(r, to_string(g.verdict), gb_summary(g));
  return r;
}

Report cmd_exhaust(const ExperimentConfig& c) {
  if (c.eps.empty() == c.cutoffs.empty()) throw Error(Errc::configuration, "exhaust needs exactly one of --eps, --cutoffs");
  const ExhaustibleModel model = model_by_name(c.target, c.params);
  std::vector<double> eps = c.eps;
  for (double cut : c.cutoffs) eps.push_back(model.eps_from_cutoff(cut));
  const int dim = model.closed_chart ? model.closed_chart->dimension() : model.thick(eps.front()).dimension();
  const ExhaustionReport rep = exhaustion_report(model, eps, options_for(c, dim));

  Report r{report_head(c), exit_code(rep.verdict)};
  json rows = json::array();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const ExhaustionRow& row = rep.rows[i];
    json j;
    if (!c.cutoffs.empty()) j["cutoff"] = c.cutoffs[i];
    j["eps"] = row.eps;
    j["integral"] = row.integral;
    j["error"] = row.error;
    j["bound"] = row.bound;
    j["nearest"] = row.nearest;
    j["gap"] = row.gap;
    j["reference"] = row.reference ? json(*row.reference) : json(nullptr);
    j["verdict"] = i + 1 == rep.rows.size() ? json(to_string(rep.verdict)) : json(nullptr);
    rows.push_back(j);
  }
  r.json["rows"] = rows;
  json s;
  s["model"] = rep.model;
  s["expected_chi"] = rep.expected_chi ? json(to_string(*rep.expected_chi)) : json(nullptr);
  s["residual_constant"] = rep.constant;
  s["residual_formula"] = residual_constant_formula();
  finish(r, to_string(rep.verdict), s);
  return r;
}

Report cmd_chi(const ExperimentConfig& c) {
  std::function<ExactRational(int)> f;
  std::string arg = "g";
  if (c.family == "punctured") f = chi_punctured;
  else if (c.family == "closed") f = chi_closed;
  else if (c.family == "zeta") f = zeta_neg;
  else if (c.family == "sp") f = chi_sp, arg = "n";
  else if (c.family == "bernoulli") f = bernoulli, arg = "n";
  else throw Error(Errc::configuration, "unknown family '" + c.family + "' (punctured, closed, zeta, sp, bernoulli)");
  const std::optional<int> start = arg == "g" ? c.g : c.n;
  if (!start) throw Error(Errc::configuration, "family '" + c.family + "' needs --" + arg);
  const int last = c.upto.value_or(*start);
  if (last < *start) throw Error(Errc::configuration, "--upto is below the start");

  Report r{report_head(c), exit_ok};
  json rows = json::array();
  ExactRational value;
  for (int k = *start; k <= last; ++k) {
    value = f(k);
    rows.push_back({{"family", c.family}, {arg, k}, {"value", to_string(value)}});
  }
  r.json["rows"] = rows;
  std::string verdict = "success";
  json s;
  if (c.expect) {
    const bool ok = parse_rational(*c.expect) == value;
    verdict = to_string(ok ? Verdict::match : Verdict::mismatch);
    r.exit = ok ? exit_ok : exit_mismatch;
    s["expected"] = to_string(parse_rational(*c.expect));
  }
  s["count"] = rows.size();
  finish(r, verdict, s);
  return r;
}

Report cmd_model_check(const ExperimentConfig& c) {
  const std::uint64_t seed = c.seed.value_or(0x3c4ec);
  Report r{report_head(c), exit_ok};
  json rows = json::array();
  bool witnesses_ok = true, model_ok = true;
  auto add = [&](const std::string& check, const std::string& parameter, double value, double expected, double tol,
                 bool model_invariant) {
    const bool pass = std::abs(value - expected) <= tol;
    (model_invariant ? model_ok : witnesses_ok) &= pass;
    rows.push_back({{"check", check}, {"parameter", parameter}, {"value", value}, {"expected", expected},
                    {"tolerance", tol}, {"pass", pass}});
  };

  const MetricChart thin = metrics::model_thin();
  for (double u : {0.5, 3.0, 9.0}) add("gauss-curvature", "u=" + std::to_string(u), gauss_curvature(thin, Eigen::Vector2d(u, 0.5)), -9, 1e-4, false);
  for (double u0 : {0.0, 1.0, 5.0, 10.0}) add("level-set-ii", "u0=" + std::to_string(u0), level_set_ii(u0).numeric, 3, 1e-6, false);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 10);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    // |grad l| = sqrt(g^uu) |dl/du| with l = e^{-2u}; central difference
    const double u = U(rng), h = 1e-5;
    const ThinCoords p{u, 0.0};
    const double dl = (ThinCoords{u + h, 0}.length() - ThinCoords{u - h, 0}.length()) / (2 * h);
    const double ratio = std::sqrt(thin_model_metric(u).inverse()(0, 0)) * std::abs(dl) / p.length();
    worst = std::max(worst, std::abs(ratio - 2));
  }
  add("grad-length-ratio", "max over 50 points", 2 + worst, 2, 1e-9, false);

  for (int m : {1, 2}) {
    const double lo = thin_fibre_volume(1e-1, m).value, hi = thin_fibre_volume(1e-5, m).value;
    add("fibre-volume-slope", "m=" + std::to_string(m), (std::log(hi) - std::log(lo)) / (std::log(1e-5) - std::log(1e-1)),
        1.5 * m, 0.01, false);
  }

  const auto triples = random_fricke_triples(200, seed);
  int disagree = 0, unnested = 0;
  const std::vector<double> eps{3.0, 2.0, 1.5, 1.0, 0.5, 0.1};
  for (const FrickeTriple& t : triples) {
    if (systole(t) != systole_tree_search(t, 12)) ++disagree;
    for (std::size_t i = 0; i + 1 < eps.size(); ++i)
      if (thick_membership(t, eps[i]) && !thick_membership(t, eps[i + 1])) ++unnested;
  }
  add("systole-descent-vs-tree", "200 triples, depth 12", disagree, 0, 0, true);
  add("thick-part-nesting", "200 triples", unnested, 0, 0, true);

  r.json["rows"] = rows;
  const Verdict v = witnesses_ok && model_ok ? Verdict::match : Verdict::mismatch;
  r.exit = !model_ok ? exit_model : exit_code(v);
  json s;
  s["checks"] = rows.size();
  s["witnesses_pass"] = witnesses_ok;
  s["model_consistent"] = model_ok;
  finish(r, model_ok ? to_string(v) : "model-inconsistency", s);
  return r;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

std::string render_csv(const json& report) {
  std::vector<std::string> cols;
  for (const auto& row : report.at("rows"))
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_cell(cols[i]);
  os << "\n";
  for (const auto& row : report.at("rows")) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) os << ",";
      const auto it = row.find(cols[i]);
      if (it == row.end() || it->is_null()) continue;
      os << csv_cell(it->is_string() ? it->get<std::string>() : it->dump());
    }
    os << "\n";
  }
  return os.str();
}

namespace {

void parse_param(const std::string& kv, std::map<std::string, double>& params) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(Errc::configuration, "--param expects key=value, got '" + kv + "'");
  try {
    params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  } catch (const std::exception&) {
    throw Error(Errc::configuration, "--param value is not a number: '" + kv + "'");
  }
}

// Values from the file go to options the command line left empty.
void apply_config_file(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub.get_name()))
      throw CLI::ConversionError("config section '" + item.parents[0] + "' does not belong to " + sub.get_name());
    CLI::Option* opt = sub.get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") throw CLI::ConversionError("unknown config key '" + item.name + "'");
    if (opt->count() > 0) continue;
    for (const std::string& v : item.inputs) opt->add_result(v);
    opt->run_callback();
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Gauss-Bonnet integrals over charts, polyhedra and truncated moduli models", "gbmlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  ExperimentConfig c;
  std::string config_path;
  std::vector<std::string> params;
  double radius = 0, index = 0;
  int order = 0;
  double tol = 0;
  std::uint64_t seed = 0;
  std::string expect;

  auto common = [&](CLI::App* s) {
    s->add_option("--config", config_path, "flat key = value file; flags win")->check(CLI::ExistingFile);
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", c.out, "write the report here instead of stdout");
    s->add_option("--seed", seed, "seed for sampled parts");
  };
  auto quad = [&](CLI::App* s) {
    s->add_option("--order", order, "Gauss-Legendre points per axis")->check(CLI::Range(2, 64));
    s->add_option("--tol", tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
  };
  auto target = [&](CLI::App* s, const char* what) {
    s->add_option("--metric,--model", c.target, what);
    s->add_option("--param", params, "extra model parameter key=value (repeatable)");
    s->add_option("--radius", radius, "sphere radius");
    s->add_option("--index", index, "covering index of the modular model");
  };

  CLI::App* verify = app.add_subcommand("verify-closed", "integrate Psi over a closed metric");
  target(verify, "closed metric: sphere, flat-torus, s4, s2xs2");
  quad(verify);
  common(verify);
  CLI::App* polygon = app.add_subcommand("polygon", "interior, edge and corner terms of a builtin polygon");
  polygon->add_option("--polygon", c.polygon, "square, spherical-triangle, hyperbolic-pentagon, hemisphere");
  quad(polygon);
  common(polygon);
  CLI::App* exhaust = app.add_subcommand("exhaust", "integral over thick parts for a list of eps");
  target(exhaust, "modular-curve, thin-strip, or a closed metric");
  exhaust->add_option("--eps", c.eps, "comma list, strictly decreasing")->delimiter(',');
  exhaust->add_option("--cutoffs", c.cutoffs, "comma list of model cutoffs (Y for modular-curve, u0 for thin-strip)")->delimiter(',');
  quad(exhaust);
  common(exhaust);
  CLI::App* chi = app.add_subcommand("chi", "exact Euler characteristics");
  chi->add_option("--family", c.family, "punctured, closed, zeta, sp, bernoulli");
  chi->add_option("--g", c.g, "genus");
  chi->add_option("--n", c.n, "rank or Bernoulli index");
  chi->add_option("--upto", c.upto, "tabulate from the start value up to this one");
  chi->add_option("--expect", expect, "exact value to compare the last row against");
  common(chi);
  CLI::App* check = app.add_subcommand("model-check", "invariants of the thin-part model and the trace coordinates");
  check->add_option("--model", c.target, "thin-strip (the only model with witnesses)");
  common(check);

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(*sub, config_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  auto given = [sub](const char* name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--order")) c.order = order;
  if (given("--tol")) c.tol = tol;
  if (given("--seed")) c.seed = seed;
  if (given("--expect")) c.expect = expect;

  Report r;
  try {
    for (const auto& kv : params) parse_param(kv, c.params);
    if (given("--radius")) c.params["radius"] = radius;
    if (given("--index")) c.params["index"] = index;
    if (c.command == "verify-closed") {
      if (c.target.empty()) throw Error(Errc::configuration, "verify-closed needs --metric");
      r = cmd_verify_closed(c);
    } else if (c.command == "polygon") {
      r = cmd_polygon(c);
    } else if (c.command == "exhaust") {
      if (c.target.empty()) throw Error(Errc::configuration, "exhaust needs --model");
      r = cmd_exhaust(c);
    } else if (c.command == "chi") {
      r = cmd_chi(c);
    } else {
      if (c.target.empty()) c.target = "thin-strip";
      if (c.target != "thin-strip") throw Error(Errc::configuration, "model-check only knows thin-strip");
      r = cmd_model_check(c);
    }
  } catch (const Error& e) {
    err << c.command << ": " << e.what() << "\n";
    return exit_code(e.code());
  }

  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.json["timestamp"] = {{"utc", utc_now()}, {"runtime_ms", std::round(ms)}};
  const std::string text = c.format == "csv" ? render_csv(r.json) : render_json(r.json);
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!(f << text)) {
      err << "cannot write " << c.out << "\n";
      return exit_usage;
    }
  }
  return r.exit;
}

}  // namespace gbm::harness
