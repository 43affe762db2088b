#include "gbm/integrate.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "gbm/error.hpp"

namespace gbm {

QuadratureSpec QuadratureSpec::for_dimension(int n) {
  QuadratureSpec s;
  s.abs_tol = n <= 2 ? 1e-8 : 1e-4;
  return s;
}

void QuadratureSpec::validate() const {
  if (order < 2) throw Error(Errc::configuration, "quadrature order must be at least 2");
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw Error(Errc::configuration, "quadrature tolerances must be positive");
  if (max_depth < 1 || max_cells < 1) throw Error(Errc::configuration, "quadrature limits must be positive");
}

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw Error(Errc::configuration, "Gauss-Legendre order must be positive");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussLegendre gl;
  gl.nodes = es.eigenvalues();
  gl.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  // symmetrize away the eigensolver's last-bit noise
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double x = 0.5 * (gl.nodes[j] - gl.nodes[i]);
    const double w = 0.5 * (gl.weights[i] + gl.weights[j]);
    gl.nodes[i] = -x;
    gl.nodes[j] = x;
    gl.weights[i] = gl.weights[j] = w;
  }
  if (order % 2 == 1) gl.nodes[order / 2] = 0.0;
  return gl;
}

namespace {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) { return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size()); }

struct Rule {
  Eigen::VectorXd x, w, null1, null2;
};

struct Cell {
  Eigen::VectorXd lo, hi;
  std::vector<int> depth;
  double value = 0.0;
  double error = 0.0;
  int split_axis = 0;
  std::size_t id = 0;
};

class BoxIntegrator {
 public:
  BoxIntegrator(const Integrand& f, int n, const QuadratureSpec& spec) : f_(f), n_(n), spec_(spec) {
    const GaussLegendre gl = gauss_legendre(spec.order);
    rule_.x = gl.nodes;
    rule_.w = gl.weights;
    rule_.null1.resize(spec.order);
    rule_.null2.resize(spec.order);
    for (int i = 0; i < spec.order; ++i) {
      rule_.null1[i] = gl.weights[i] * legendre(spec.order - 1, gl.nodes[i]);
      rule_.null2[i] = gl.weights[i] * legendre(spec.order - 2, gl.nodes[i]);
    }
  }

  void evaluate(Cell& c) {
    const int m = spec_.order;
    const Eigen::VectorXd half = 0.5 * (c.hi - c.lo);
    const Eigen::VectorXd mid = 0.5 * (c.hi + c.lo);
    std::vector<int> idx(static_cast<std::size_t>(n_), 0);
    Eigen::VectorXd p(n_);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(std::pow(m, n_)));
    Eigen::VectorXd n1 = Eigen::VectorXd::Zero(n_), n2 = Eigen::VectorXd::Zero(n_);
    double abs_sum = 0.0;
    const double jac = half.prod();
    while (true) {
      double W = 1.0;
      for (int k = 0; k < n_; ++k) {
        const int i = idx[static_cast<std::size_t>(k)];
        p[k] = mid[k] + half[k] * rule_.x[i];
        W *= rule_.w[i];
      }
      const double fv = f_(p);
      ++evaluations_;
      if (!std::isfinite(fv)) throw Error(Errc::numerical_quality, "integrand is not finite at a quadrature node");
      terms.push_back(W * fv);
      abs_sum += std::abs(W * fv);
      for (int k = 0; k < n_; ++k) {
        const int i = idx[static_cast<std::size_t>(k)];
        const double rest = W / rule_.w[i];
        n1[k] += rest * rule_.null1[i] * fv;
        n2[k] += rest * rule_.null2[i] * fv;
      }
      int k = n_ - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == m) idx[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
    c.value = jac * pairwise_sum(terms);
    double worst = -1.0;
    double total = 0.0;
    for (int k = 0; k < n_; ++k) {
      const double e = jac * std::max(std::abs(n1[k]), std::abs(n2[k]));
      total += e;
      if (e > worst && c.depth[static_cast<std::size_t>(k)] < spec_.max_depth) {
        worst = e;
        c.split_axis = k;
      }
    }
    if (worst < 0) c.split_axis = -1;
    // roundoff floor
    c.error = std::max(total, 50 * std::numeric_limits<double>::epsilon() * jac * abs_sum);
  }

  QuadResult run(const std::vector<Axis>& box) {
    Cell root;
    root.lo.resize(n_);
    root.hi.resize(n_);
    for (int k = 0; k < n_; ++k) {
      root.lo[k] = box[static_cast<std::size_t>(k)].lo;
      root.hi[k] = box[static_cast<std::size_t>(k)].hi;
    }
    root.depth.assign(static_cast<std::size_t>(n_), 0);
    evaluate(root);

    auto worse = [](const Cell& a, const Cell& b) {
      if (a.error != b.error) return a.error < b.error;
      return a.id > b.id;
    };
    std::priority_queue<Cell, std::vector<Cell>, decltype(worse)> open(worse);
    std::vector<Cell> frozen;
    std::size_t next_id = 1;
    double value = root.value, error = root.error;
    open.push(std::move(root));
    bool converged = true;

    while (!open.empty()) {
      if (error <= std::max(spec_.abs_tol, spec_.rel_tol * std::abs(value))) break;
      Cell c = open.top();
      open.pop();
      if (c.split_axis < 0) {
        frozen.push_back(std::move(c));
        continue;
      }
      if (open.size() + frozen.size() + 2 > spec_.max_cells) {
        open.push(std::move(c));
        converged = false;
        break;
      }
      const int k = c.split_axis;
      Cell a = c, b = c;
      const double m = 0.5 * (c.lo[k] + c.hi[k]);
      a.hi[k] = m;
      b.lo[k] = m;
      ++a.depth[static_cast<std::size_t>(k)];
      ++b.depth[static_cast<std::size_t>(k)];
      a.id = next_id++;
      b.id = next_id++;
      evaluate(a);
      evaluate(b);
      value += a.value + b.value - c.value;
      error += a.error + b.error - c.error;
      open.push(std::move(a));
      open.push(std::move(b));
    }

    std::vector<Cell> cells = std::move(frozen);
    while (!open.empty()) {
      cells.push_back(open.top());
      open.pop();
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
    std::vector<double> vals, errs;
    for (const auto& c : cells) {
      vals.push_back(c.value);
      errs.push_back(c.error);
    }
    QuadResult r;
    r.value = pairwise_sum(vals);
    r.error = pairwise_sum(errs);
    r.cells = cells.size();
    r.evaluations = evaluations_;
    if (r.error > std::max(spec_.abs_tol, spec_.rel_tol * std::abs(r.value))) converged = false;
    r.converged = converged;
    if (!converged) r.error *= 10;
    return r;
  }

 private:
  const Integrand& f_;
  int n_;
  QuadratureSpec spec_;
  Rule rule_;
  std::size_t evaluations_ = 0;
};

}  // namespace

QuadResult quad_box(const Integrand& f, const std::vector<Axis>& box, const QuadratureSpec& spec) {
  spec.validate();
  if (box.empty()) throw Error(Errc::configuration, "empty integration box");
  for (const auto& a : box)
    if (!(a.hi >= a.lo)) throw Error(Errc::configuration, "integration box has an inverted axis");
  for (const auto& a : box)
    if (a.hi == a.lo) return QuadResult{};
  BoxIntegrator integrator(f, static_cast<int>(box.size()), spec);
  return integrator.run(box);
}

QuadResult monte_carlo(const Integrand& f, const std::vector<Axis>& box, std::size_t samples, std::uint64_t seed,
                       const std::function<bool(const Eigen::VectorXd&)>& inside) {
  if (samples < 2) throw Error(Errc::configuration, "Monte Carlo needs at least two samples");
  const int n = static_cast<int>(box.size());
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> dist;
  double volume = 1.0;
  for (const auto& a : box) {
    dist.emplace_back(a.lo, a.hi);
    volume *= a.length();
  }
  Eigen::VectorXd p(n);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (int k = 0; k < n; ++k) p[k] = dist[static_cast<std::size_t>(k)](rng);
    const double v = (!inside || inside(p)) ? f(p) : 0.0;
    const double d = v - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (v - mean);
  }
  QuadResult r;
  r.value = volume * mean;
  r.error = volume * std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  r.evaluations = samples;
  r.cells = 1;
  return r;
}

bool ConstrainedBox::contains(const Eigen::VectorXd& p) const {
  for (int k = 0; k < p.size(); ++k) {
    const Axis& a = bounds[static_cast<std::size_t>(k)];
    if (p[k] < a.lo || p[k] > a.hi) return false;
  }
  for (const auto& c : constraints)
    if (!(c(p) >= 0)) return false;
  return true;
}

namespace {

// Sign changes of every constraint along the last axis, with outer
// coordinates fixed. Interior extrema seen on the sample grid are located
// so that a constraint dipping below zero between two samples is not missed.
std::vector<double> breakpoints(const ConstrainedBox& region, Eigen::VectorXd p, double lo, double hi) {
  const int last = static_cast<int>(p.size()) - 1;
  constexpr int kSamples = 64;
  std::vector<double> cuts{lo, hi};
  for (const auto& c : region.constraints) {
    auto g = [&](double t) {
      p[last] = t;
      return c(p);
    };
    std::vector<double> ts, vs;
    for (int j = 0; j <= kSamples; ++j) {
      const double t = lo + (hi - lo) * j / kSamples;
      ts.push_back(t);
      vs.push_back(g(t));
    }
    std::vector<std::pair<double, double>> pts;
    for (int j = 0; j <= kSamples; ++j) pts.emplace_back(ts[static_cast<std::size_t>(j)], vs[static_cast<std::size_t>(j)]);
    for (int j = 1; j < kSamples; ++j) {
      const auto J = static_cast<std::size_t>(j);
      const double dl = vs[J] - vs[J - 1], dr = vs[J + 1] - vs[J];
      if (dl * dr >= 0) continue;
      const double sgn = dl < 0 ? 1.0 : -1.0;  // minimise sgn * g
      const auto m = boost::math::tools::brent_find_minima([&](double t) { return sgn * g(t); }, ts[J - 1], ts[J + 1], 50);
      pts.emplace_back(m.first, sgn * m.second);
    }
    std::sort(pts.begin(), pts.end());
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
      const auto [a, fa] = pts[j];
      const auto [b, fb] = pts[j + 1];
      if (fa == 0.0) {
        cuts.push_back(a);
        continue;
      }
      if ((fa < 0) == (fb < 0) || fb == 0.0) continue;
      std::uintmax_t iters = 200;
      const auto root = boost::math::tools::toms748_solve(g, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      cuts.push_back(0.5 * (root.first + root.second));
    }
    if (pts.back().second == 0.0) cuts.push_back(pts.back().first);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Inside pieces of the last-axis slice through p.
std::vector<std::pair<double, double>> slice_pieces(const ConstrainedBox& region, const Eigen::VectorXd& p) {
  const int last = static_cast<int>(p.size()) - 1;
  const Axis& ax = region.bounds[static_cast<std::size_t>(last)];
  const std::vector<double> cuts = breakpoints(region, p, ax.lo, ax.hi);
  std::vector<std::pair<double, double>> pieces;
  Eigen::VectorXd q = p;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double a = cuts[j], b = cuts[j + 1];
    if (!(b > a)) continue;
    q[last] = 0.5 * (a + b);
    bool inside = true;
    for (const auto& c : region.constraints) inside = inside && c(q) >= 0;
    if (!inside) continue;
    if (!pieces.empty() && pieces.back().second == a)
      pieces.back().second = b;
    else
      pieces.emplace_back(a, b);
  }
  return pieces;
}

// Points along axis n-2 where the number of slice pieces changes: the slice
// appears, vanishes or splits there, and the slice integral has a jump or a
// square-root kink. Found on a sample grid and refined by bisection.
std::vector<double> outer_breakpoints(const ConstrainedBox& region, Eigen::VectorXd p, int axis) {
  constexpr int kSamples = 64;
  const Axis& ax = region.bounds[static_cast<std::size_t>(axis)];
  auto signature = [&](double t) {
    p[axis] = t;
    return slice_pieces(region, p).size();
  };
  std::vector<double> cuts{ax.lo, ax.hi};
  double a = ax.lo;
  std::size_t sa = signature(a);
  for (int j = 1; j <= kSamples; ++j) {
    const double b = ax.lo + ax.length() * j / kSamples;
    const std::size_t sb = signature(b);
    if (sb != sa) {
      double lo = a, hi = b;
      while (hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (signature(mid) == sa ? lo : hi) = mid;
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    a = b;
    sa = sb;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Outer axes carry the jumps of the sharp indicator, where the cell
// estimates are least reliable; they get a tenfold safety margin.
constexpr double kOuterSafety = 0.1;

struct Iterated {
  const Integrand& f;
  const ConstrainedBox& region;
  QuadratureSpec spec;
  double inner_error = 0.0;
  double outer_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;

  double integrate_axis(Eigen::VectorXd p, int axis, double tol) {
    const int n = static_cast<int>(p.size());
    const Axis& ax = region.bounds[static_cast<std::size_t>(axis)];
    QuadratureSpec s = spec;
    if (axis == n - 1) {
      double total = 0.0, err = 0.0;
      for (const auto& [a, b] : slice_pieces(region, p)) {
        Eigen::VectorXd q = p;
        s.abs_tol = tol * (b - a) / ax.length();
        const QuadResult r = quad_box(
            [&](const Eigen::VectorXd& t) {
              q[axis] = t[0];
              return f(q);
            },
            {Axis{a, b}}, s);
        total += r.value;
        err += r.error;
        evaluations += r.evaluations;
        converged = converged && r.converged;
      }
      inner_error = std::max(inner_error, err);
      return total;
    }
    std::vector<double> cuts{ax.lo, ax.hi};
    if (axis == n - 2) cuts = outer_breakpoints(region, p, axis);
    double total = 0.0, err = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const double a = cuts[j], b = cuts[j + 1];
      if (!(b > a)) continue;
      s.abs_tol = kOuterSafety * tol * (b - a) / ax.length();
      const QuadResult r = quad_box(
          [&](const Eigen::VectorXd& t) {
            p[axis] = t[0];
            return integrate_axis(p, axis + 1, kOuterSafety * tol / ax.length());
          },
          {Axis{a, b}}, s);
      total += r.value;
      err += r.error;
      converged = converged && r.converged;
    }
    if (axis == 0)
      outer_error = err;
    else
      inner_error = std::max(inner_error, err);
    return total;
  }
};

}  // namespace

QuadResult quad_region_iterated(const Integrand& f, const ConstrainedBox& region, const QuadratureSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(region.bounds.size());
  if (n == 0) throw Error(Errc::configuration, "empty integration box");
  Iterated it{f, region, spec};
  const double value = it.integrate_axis(Eigen::VectorXd::Zero(n), 0, spec.abs_tol);
  double vol_outer = 1.0;
  for (int k = 0; k + 1 < n; ++k) vol_outer *= region.bounds[static_cast<std::size_t>(k)].length();
  QuadResult r;
  r.value = value;
  r.error = it.outer_error + vol_outer * it.inner_error;
  r.converged = it.converged;
  r.evaluations = it.evaluations;
  r.cells = 1;
  return r;
}

QuadResult quad_region(const Integrand& f, const ConstrainedBox& region, const QuadratureSpec& spec) {
  QuadResult q = quad_region_iterated(f, region, spec);
  const QuadResult mc =
      monte_carlo(f, region.bounds, spec.mc_samples, spec.seed, [&](const Eigen::VectorXd& p) { return region.contains(p); });
  // the floor only matters when both estimates vanish (e.g. f = 0)
  const double allowed = 5 * (q.error + mc.error) + 1e-12 * (1 + std::abs(q.value));
  if (std::abs(q.value - mc.value) > allowed)
    throw Error(Errc::inconsistency, "quadrature and Monte Carlo disagree on the region integral");
  q.error = std::max(q.error, mc.error);
  q.evaluations += mc.evaluations;
  return q;
}

}  // namespace gbm
