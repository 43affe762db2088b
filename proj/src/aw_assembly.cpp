#include "gbm/aw_assembly.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gbm/error.hpp"
#include "gbm/euler_form.hpp"

namespace gbm {

using std::numbers::pi;

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

double GBReport::edge_sum() const {
  double s = 0.0;
  for (const auto& b : boundary)
    if (b.codim == 1 && !b.is_bound) s += b.value;
  return s;
}

double GBReport::corner_sum() const {
  double s = 0.0;
  for (const auto& b : boundary)
    if (b.codim == 2 && !b.is_bound) s += b.value;
  return s;
}

namespace {

QuadratureSpec spec_for(const AssemblyOptions& opt, int n) { return opt.quad ? *opt.quad : QuadratureSpec::for_dimension(n); }

Verdict integer_verdict(const GBReport& r, long long target, const AssemblyOptions& opt) {
  if (!r.interior_converged || r.interior_error > opt.max_error) return Verdict::inconclusive;
  if (std::abs(r.total - static_cast<double>(r.nearest)) < opt.integer_threshold && r.nearest == target) return Verdict::match;
  return Verdict::mismatch;
}

long long as_integer(const ExactRational& q) {
  if (boost::multiprecision::denominator(q) != 1) return std::numeric_limits<long long>::min();
  return boost::multiprecision::numerator(q).convert_to<long long>();
}

}  // namespace

GBReport gauss_bonnet_closed(const MetricChart& chart, const AssemblyOptions& opt) {
  GBReport r;
  r.subject = chart.name();
  if (chart.closed_info()) {
    r.expected_chi = ExactRational(chart.closed_info()->euler_characteristic);
    r.excluded_mass = chart.closed_info()->excluded_mass;
  } else {
    for (const Axis& a : chart.domain())
      if (!a.periodic) throw Error(Errc::configuration, "chart '" + chart.name() + "' is not a known closed manifold");
    r.expected_chi = ExactRational(0);  // a torus
  }
  const QuadResult q = quad_box(
      [&chart](const Eigen::VectorXd& p) { return gb_density(chart, p).value * volume_density(chart, p); }, chart.domain(),
      spec_for(opt, chart.dimension()));
  r.interior = q.value;
  r.interior_error = q.error;
  r.interior_converged = q.converged;
  r.total = r.interior + r.excluded_mass;
  r.nearest = std::llround(r.total);
  r.verdict = integer_verdict(r, as_integer(*r.expected_chi), opt);
  return r;
}

GBReport gauss_bonnet_2d_region(const Region& region, const AssemblyOptions& opt) {
  if (region.dimension() != 2) throw Error(Errc::dimension, "polygon assembly needs a surface");
  GBReport r;
  r.subject = region.name();
  const int chi = inner_euler(region);
  r.expected_chi = ExactRational(chi);

  const QuadResult interior = quad_region(euler_integrand(region), region.as_box(), spec_for(opt, 2));
  r.interior = interior.value;
  r.interior_error = interior.error;
  r.interior_converged = interior.converged;

  QuadratureSpec edge_spec;
  edge_spec.abs_tol = 1e-10;
  edge_spec.rel_tol = 1e-10;
  for (const Face& f : region.faces()) {
    BoundaryTerm t;
    t.face = f.label;
    t.codim = static_cast<int>(f.active.size());
    if (t.codim == 1) {
      const QuadResult q = face_integral(
          region, f, [&](const Eigen::VectorXd& p) { return second_fundamental_form(region, f, p).form(0, 0); }, edge_spec);
      t.value = q.value / (2 * pi);
      t.error = q.error / (2 * pi);
      r.interior_converged = r.interior_converged && q.converged;
    } else {
      if (!f.param) throw Error(Errc::capability, "corner '" + f.label + "' has no location");
      t.value = region.multiplicity() * outer_angle_measure(region, f.param->map(Eigen::VectorXd()), opt.angles).measure;
    }
    r.boundary.push_back(t);
  }
  r.total = r.interior;
  for (const auto& b : r.boundary) r.total += b.value;
  r.nearest = std::llround(r.total);
  r.verdict = integer_verdict(r, chi, opt);
  return r;
}

double residual_constant(double psi_bound, double ii_bound, int n) {
  if (!(psi_bound >= 0 && ii_bound >= 0)) throw Error(Errc::configuration, "curvature bounds must be nonnegative");
  return std::pow(1 + psi_bound + ii_bound, n - 1);
}

std::string residual_constant_formula() { return "C = (1 + psi_bound + ii_bound)^(n-1)"; }

double residual_bound(const Region& region, double psi_bound, double ii_bound) {
  const int n = region.dimension();
  const double C = residual_constant(psi_bound, ii_bound, n);
  double volume = 0.0;
  for (const Face& f : region.faces())
    if (region.face_dimension(f) >= 1) volume += face_volume(region, f);
  return C * volume;
}

namespace {

void check_nesting(const ExhaustibleModel& model, const std::vector<double>& eps, const AssemblyOptions& opt,
                   std::uint64_t seed) {
  if (!model.thick) return;
  const Region widest = model.thick(eps.back());
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> coord;
  for (const Axis& a : widest.bounds()) coord.emplace_back(a.lo - 0.05 * a.length(), a.hi + 0.05 * a.length());
  Eigen::VectorXd p(widest.dimension());
  for (std::size_t i = 0; i + 1 < eps.size(); ++i)
    for (std::size_t s = 0; s < opt.nesting_samples; ++s) {
      for (int k = 0; k < p.size(); ++k) p[k] = coord[static_cast<std::size_t>(k)](rng);
      if (model.member(p, eps[i]) && !model.member(p, eps[i + 1]))
        throw Error(Errc::model_consistency, "thick part at eps = " + std::to_string(eps[i]) +
                                                 " is not contained in the one at eps = " + std::to_string(eps[i + 1]));
    }
}

}  // namespace

ExhaustionReport exhaustion_report(const ExhaustibleModel& model, const std::vector<double>& eps_list,
                                   const AssemblyOptions& opt) {
  if (eps_list.empty()) throw Error(Errc::configuration, "eps list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0)) throw Error(Errc::configuration, "eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw Error(Errc::configuration, "eps list must be strictly decreasing");
  }
  ExhaustionReport rep;
  rep.model = model.name;
  rep.expected_chi = model.expected_chi;

  if (model.closed_chart) {
    // nothing is cut away, so one integral serves every row
    const GBReport g = gauss_bonnet_closed(*model.closed_chart, opt);
    for (double eps : eps_list) {
      ExhaustionRow row{eps, g.total, g.interior_error, 0.0, g.nearest, 0.0, std::nullopt};
      row.gap = std::abs(g.total - g.expected_chi->convert_to<double>());
      rep.rows.push_back(row);
    }
    rep.verdict = g.verdict;
    return rep;
  }

  const QuadratureSpec spec = spec_for(opt, model.thick(eps_list.front()).dimension());
  check_nesting(model, eps_list, opt, spec.seed);
  bool converged = true;
  for (double eps : eps_list) {
    const Region region = model.thick(eps);
    rep.constant = residual_constant(model.psi_bound, model.ii_bound, region.dimension());
    const QuadResult q = quad_region(euler_integrand(region), region.as_box(), spec);
    converged = converged && q.converged;
    ExhaustionRow row;
    row.eps = eps;
    row.integral = q.value;
    row.error = q.error;
    row.bound = residual_bound(region, model.psi_bound, model.ii_bound);
    row.nearest = std::llround(q.value);
    row.gap = model.expected_chi ? std::abs(q.value - model.expected_chi->convert_to<double>())
                                 : std::abs(q.value - static_cast<double>(row.nearest));
    if (model.reference) row.reference = model.reference(eps);
    rep.rows.push_back(row);
  }

  if (!converged) {
    rep.verdict = Verdict::inconclusive;
  } else if (model.expected_chi) {
    const ExhaustionRow& last = rep.rows.back();
    const ExhaustionRow& prev = rep.rows.size() > 1 ? rep.rows[rep.rows.size() - 2] : last;
    const long long n = last.nearest;
    auto within = [n](const ExhaustionRow& r) { return std::abs(r.integral - static_cast<double>(n)) <= r.bound + r.error; };
    if (prev.nearest != n || !within(prev) || !within(last))
      rep.verdict = Verdict::inconclusive;
    else
      rep.verdict = n == as_integer(*model.expected_chi) ? Verdict::match : Verdict::mismatch;
  } else if (model.reference) {
    rep.verdict = Verdict::match;
    for (const auto& r : rep.rows)
      if (!(std::abs(r.integral - *r.reference) <= 1e-8)) rep.verdict = Verdict::mismatch;
  }
  return rep;
}

}  // namespace gbm
