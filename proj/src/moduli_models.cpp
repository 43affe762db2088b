#include "gbm/moduli_models.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gbm/error.hpp"
#include "gbm/integrate.hpp"
#include "gbm/metrics.hpp"

namespace gbm {

using std::numbers::pi;

double fricke_residual(const FrickeTriple& t) {
  const double xyz = t.x * t.y * t.z;
  return std::abs(t.x * t.x + t.y * t.y + t.z * t.z - xyz) / std::max(1.0, std::abs(xyz));
}

void check_fricke(const FrickeTriple& t) {
  if (!(t.x > 2 && t.y > 2 && t.z > 2)) throw Error(Errc::model_consistency, "Fricke triple entries must exceed 2");
  if (!(fricke_residual(t) < 1e-9)) throw Error(Errc::model_consistency, "triple is off the Markov surface x^2+y^2+z^2 = xyz");
}

FrickeTriple make_fricke(double x, double y, double z) {
  const FrickeTriple t{x, y, z};
  check_fricke(t);
  return t;
}

FrickeTriple fricke_from_pair(double x, double y, bool larger_root) {
  // z^2 - xy z + x^2 + y^2 = 0
  const double b = x * y, c = x * x + y * y;
  const double disc = b * b - 4 * c;
  if (!(disc >= 0)) throw Error(Errc::domain, "no real completion of this pair");
  const double big = 0.5 * (b + std::sqrt(disc));
  return make_fricke(x, y, larger_root ? big : c / big);
}

FrickeTriple markov_move(const FrickeTriple& t, int i) {
  if (i < 0 || i > 2) throw Error(Errc::configuration, "Markov move index must be 0, 1 or 2");
  const double a = t[(i + 1) % 3], b = t[(i + 2) % 3];
  FrickeTriple out = t;
  out[i] = (a * a + b * b) / t[i];
  check_fricke(out);
  return out;
}

Reduction fricke_reduce(const FrickeTriple& t) {
  check_fricke(t);
  Reduction r{t, 0};
  constexpr int kGuard = 1000000;
  while (true) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (r.triple[i] > r.triple[k]) k = i;
    const FrickeTriple next = markov_move(r.triple, k);
    if (!(next[k] < r.triple[k])) break;
    r.triple = next;
    if (++r.moves > kGuard) throw Error(Errc::model_consistency, "Markov descent did not terminate");
  }
  return r;
}

double trace_to_length(double trace) {
  if (!(trace >= 2)) throw Error(Errc::domain, "trace below 2 is not hyperbolic");
  return 2 * std::acosh(trace / 2);
}

double systole(const FrickeTriple& t) { return trace_to_length(fricke_reduce(t).triple.min()); }

namespace {

// Traces grow doubly exponentially along the tree. Once a moved entry x is
// huge, every later move in that branch produces at least x^2 / y, so the
// branch cannot hold the minimum and is cut before it overflows.
constexpr double kHuge = 1e100;

void search(const FrickeTriple& t, int last, int depth, double& best) {
  best = std::min(best, t.min());
  if (depth == 0) return;
  for (int i = 0; i < 3; ++i) {
    if (i == last) continue;
    const double a = t[(i + 1) % 3], b = t[(i + 2) % 3];
    if (!((a * a + b * b) / t[i] <= kHuge)) continue;
    search(markov_move(t, i), i, depth - 1, best);
  }
}

}  // namespace

double systole_tree_search(const FrickeTriple& t, int depth) {
  check_fricke(t);
  double best = std::numeric_limits<double>::infinity();
  search(t, -1, depth, best);
  return trace_to_length(best);
}

bool thick_membership(const FrickeTriple& t, double eps) {
  if (!(eps > 0)) throw Error(Errc::range, "eps must be positive");
  return systole(t) >= eps;
}

std::vector<FrickeTriple> random_fricke_triples(std::size_t count, std::uint64_t seed, int max_moves) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(2.2, 8.0);
  std::uniform_int_distribution<int> moves(0, max_moves);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<FrickeTriple> out;
  while (out.size() < count) {
    const double x = entry(rng), y = entry(rng);
    if ((x * x - 4) * (y * y - 4) < 16) continue;  // no real z
    FrickeTriple t = fricke_reduce(fricke_from_pair(x, y, coin(rng) == 1)).triple;
    int last = -1;
    const int k = moves(rng);
    for (int s = 0; s < k; ++s) {
      // only upward moves, never undoing the previous one
      int i;
      do i = std::uniform_int_distribution<int>(0, 2)(rng);
      while (i == last);
      const FrickeTriple next = markov_move(t, i);
      if (!(next[i] > t[i])) continue;
      t = next;
      last = i;
    }
    out.push_back(t);
  }
  return out;
}

double ThinCoords::length() const { return std::exp(-2 * u); }

double thin_level(double eps) {
  if (!(eps > 0 && eps <= 1)) throw Error(Errc::range, "eps must lie in (0, 1]");
  return -0.5 * std::log(eps);
}

Eigen::Matrix2d thin_model_metric(double u) { return Eigen::Vector2d(1.0, std::exp(-6 * u)).asDiagonal(); }

double grad_length_norm(double u) {
  const Eigen::Vector2d dl(-2 * std::exp(-2 * u), 0.0);
  return std::sqrt(dl.dot(thin_model_metric(u).inverse() * dl));
}

LevelSetII level_set_ii(double u0) {
  if (!(u0 >= 0)) throw Error(Errc::range, "level must be nonnegative");
  const double top = std::max(12.0, u0 + 1);
  // no closed-form partials anywhere: metric and constraint both differenced
  Region r("model-level-set", metrics::model_thin(0.0, top).finite_difference(), {Axis{u0, top}, Axis{0, 1}},
           {Constraint{"u=u0", [u0](const Eigen::VectorXd& p) { return p[0] - u0; }}});
  r.add_face({"u=u0", {0}, std::nullopt});
  LevelSetII out;
  out.numeric = second_fundamental_form(r, r.faces()[0], Eigen::Vector2d(u0, 0.5)).form(0, 0);
  return out;
}

FibreVolume thin_fibre_volume(double eps, int m) {
  if (!(eps > 0 && eps < 1)) throw Error(Errc::range, "fibre volume needs 0 < eps < 1");
  if (m < 1) throw Error(Errc::range, "fibre dimension must be positive");
  const double u0 = thin_level(eps);
  QuadratureSpec spec;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-13;
  const double fibre_factor = std::sqrt(thin_model_metric(u0)(1, 1));
  const QuadResult r = quad_box(
      [&](const Eigen::VectorXd&) {
        // induced metric on the m-torus is diagonal with m equal entries
        return std::pow(fibre_factor, m);
      },
      std::vector<Axis>(static_cast<std::size_t>(m), Axis{0, 1}), spec);
  FibreVolume out;
  out.value = r.value;
  out.riemannian_exponent = 1.5 * m;
  out.bound_exponent = 3.0 * m;
  out.bound_value = std::pow(eps, out.bound_exponent);
  return out;
}

OuterCone outer_cone(const ThinCoords& p, double eps) {
  const double u0 = thin_level(eps);
  if (std::abs(p.u - u0) > 1e-9 * std::max(1.0, u0)) throw Error(Errc::domain, "cone apex must lie on the eps level");
  return OuterCone{u0};
}

ModularArea modular_thick_area(double Y, int index) {
  if (!(Y >= 1)) throw Error(Errc::range, "cutoff must be at least 1");
  if (index < 1) throw Error(Errc::range, "covering index must be positive");
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  const std::vector<Axis> box{Axis{-0.5, 0.5}, Axis{0, 1}};
  QuadResult r;
  if (std::isinf(Y)) {
    // b = sqrt(1 - a^2) / s
    r = quad_box([](const Eigen::VectorXd& p) { return 1 / std::sqrt(1 - p[0] * p[0]); }, box, spec);
  } else {
    // b = b0 + t (Y - b0) from the arc to the cutoff
    r = quad_box(
        [Y](const Eigen::VectorXd& p) {
          const double b0 = std::sqrt(1 - p[0] * p[0]);
          const double b = b0 + p[1] * (Y - b0);
          return (Y - b0) / (b * b);
        },
        box, spec);
  }
  ModularArea out;
  out.area = index * r.value;
  out.error = index * r.error;
  out.tail = std::isinf(Y) ? 0.0 : index / Y;
  out.converged = r.converged;
  return out;
}

double chi_from_area(double area) {
  if (!(area >= 0)) throw Error(Errc::range, "area must be nonnegative");
  return -area / (2 * pi);
}

Region modular_region(double Y, int index) {
  if (!(Y >= 1)) throw Error(Errc::range, "cutoff must be at least 1");
  if (index < 1) throw Error(Errc::range, "covering index must be positive");
  const double b_lo = std::sqrt(3.0) / 2;
  Constraint arc{"unit-circle", [](const Eigen::VectorXd& p) { return p.squaredNorm() - 1; },
                 [](const Eigen::VectorXd& p) -> Eigen::VectorXd { return 2 * p; },
                 [](const Eigen::VectorXd&) -> Eigen::MatrixXd { return 2 * Eigen::MatrixXd::Identity(2, 2); }};
  Constraint horocycle{"horocycle", [Y](const Eigen::VectorXd& p) { return Y - p[1]; },
                       [](const Eigen::VectorXd&) -> Eigen::VectorXd { return Eigen::Vector2d(0, -1); },
                       [](const Eigen::VectorXd&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Zero(2, 2); }, Y};
  Region r("modular-curve", metrics::half_plane(Axis{-0.6, 0.6}, Axis{0.8, Y + 1}), {Axis{-0.5, 0.5}, Axis{b_lo, Y}},
           {arc, horocycle});
  // the arc and the vertical sides are glued by the group; only the
  // horocycle is boundary
  r.add_face({"horocycle", {1},
              FaceParametrization{{Axis{-0.5, 0.5}}, [Y](const Eigen::VectorXd& t) -> Eigen::VectorXd { return Eigen::Vector2d(t[0], Y); }}});
  r.set_multiplicity(index);
  // genus 0 with four truncated cusps
  if (index == kGamma3Index) r.set_topology({-2, 0});
  return r;
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

ExhaustibleModel model_by_name(const std::string& name, const std::map<std::string, double>& params) {
  ExhaustibleModel m;
  m.name = name;
  if (name == "modular-curve") {
    const double idx = param(params, "index", kGamma3Index);
    if (idx < 1 || idx != std::floor(idx)) throw Error(Errc::configuration, "index must be a positive integer");
    const int index = static_cast<int>(idx);
    m.thick = [index](double eps) { return modular_region(1 / eps, index); };
    m.member = [](const Eigen::VectorXd& p, double eps) {
      return std::abs(p[0]) <= 0.5 && p.squaredNorm() >= 1 && p[1] <= 1 / eps;
    };
    m.psi_bound = 1.0;  // |R_1212| = 1
    m.ii_bound = 1.0;   // horocycles have geodesic curvature 1
    m.expected_chi = chi_finite_cover(ExactRational(-1, 6), index);
    m.reference = [index](double eps) { return -index * (pi / 3 - eps) / (2 * pi); };
    m.eps_from_cutoff = [](double Y) { return 1 / Y; };
    return m;
  }
  if (name == "thin-strip") {
    m.thick = [](double eps) { return regions::thin_strip(eps); };
    m.member = [](const Eigen::VectorXd& p, double eps) { return p[0] >= 0 && p[0] <= thin_level(eps); };
    m.psi_bound = 9.0;
    m.ii_bound = 3.0;
    m.reference = [](double eps) { return -3 / (2 * pi) * (1 - std::pow(eps, 1.5)); };
    m.eps_from_cutoff = [](double u0) { return std::exp(-2 * u0); };
    return m;
  }
  if (name == "punctured-torus")
    throw Error(Errc::capability, "the punctured-torus model has trace coordinates but no integrable metric; use modular-curve");
  const auto names = metrics::catalog();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(Errc::configuration, "unknown model '" + name + "'");
  MetricChart chart = metrics::by_name(name, params);
  if (!chart.closed_info()) throw Error(Errc::configuration, "metric '" + name + "' is not a closed manifold");
  m.expected_chi = ExactRational(chart.closed_info()->euler_characteristic);
  m.closed_chart = std::move(chart);
  m.member = [](const Eigen::VectorXd&, double) { return true; };
  m.eps_from_cutoff = [](double c) { return c; };
  return m;
}

std::vector<std::string> model_catalog() { return {"modular-curve", "thin-strip", "punctured-torus", "sphere", "flat-torus", "s4", "s2xs2"}; }

}  // namespace gbm
