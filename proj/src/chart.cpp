#include "gbm/chart.hpp"

#include <cmath>
#include <sstream>

#include "gbm/error.hpp"

namespace gbm {

namespace {

double default_step(const Axis& axis) { return std::max(1e-5, 1e-6 * axis.length()); }

// Second differences lose eps / h^2 to cancellation; they use a wider step.
constexpr double kSecondStepFactor = 100.0;

Eigen::VectorXd shifted(const Eigen::VectorXd& p, int k, double hk) {
  Eigen::VectorXd q = p;
  q[k] += hk;
  return q;
}

Eigen::VectorXd shifted(const Eigen::VectorXd& p, int k, double hk, int l, double hl) {
  Eigen::VectorXd q = p;
  q[k] += hk;
  q[l] += hl;
  return q;
}

}  // namespace

MetricChart::MetricChart(std::string name, std::vector<Axis> domain, MetricFn metric)
    : name_(std::move(name)), domain_(std::move(domain)), metric_(std::move(metric)) {
  if (domain_.empty()) throw Error(Errc::configuration, "chart '" + name_ + "' has no axes");
  for (const auto& a : domain_)
    if (!(a.hi > a.lo)) throw Error(Errc::configuration, "chart '" + name_ + "' has an empty axis");
}

MetricChart::MetricChart(std::string name, std::vector<Axis> domain, MetricFn metric, DerivativeFn partials)
    : MetricChart(std::move(name), std::move(domain), std::move(metric)) {
  partials_ = std::move(partials);
}

Eigen::VectorXd MetricChart::wrap(const Eigen::VectorXd& p) const {
  if (p.size() != dimension()) throw Error(Errc::domain, "point has wrong dimension for chart '" + name_ + "'");
  Eigen::VectorXd q = p;
  for (int k = 0; k < dimension(); ++k) {
    const Axis& a = domain_[static_cast<std::size_t>(k)];
    if (a.periodic) {
      const double L = a.length();
      double t = std::fmod(q[k] - a.lo, L);
      if (t < 0) t += L;
      q[k] = a.lo + t;
    } else if (!(q[k] >= a.lo && q[k] <= a.hi)) {
      std::ostringstream os;
      os << "coordinate " << k << " = " << q[k] << " outside [" << a.lo << ", " << a.hi << "] of chart '" << name_
         << "'";
      throw Error(Errc::domain, os.str());
    }
  }
  return q;
}

bool MetricChart::contains(const Eigen::VectorXd& p) const {
  if (p.size() != dimension()) return false;
  for (int k = 0; k < dimension(); ++k) {
    const Axis& a = domain_[static_cast<std::size_t>(k)];
    if (!a.periodic && !(p[k] >= a.lo && p[k] <= a.hi)) return false;
  }
  return true;
}

void check_spd(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols()) throw Error(Errc::definiteness, "metric is not square");
  if (!g.allFinite()) throw Error(Errc::definiteness, "metric has non-finite entries");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(Errc::definiteness, "metric is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw Error(Errc::definiteness, "metric is not positive definite");
}

Eigen::MatrixXd MetricChart::metric(const Eigen::VectorXd& p) const {
  Eigen::MatrixXd g = metric_(wrap(p));
  if (g.rows() != dimension()) throw Error(Errc::definiteness, "metric has wrong size");
  check_spd(g);
  return g;
}

double MetricChart::fd_step(int axis) const {
  if (partials_) return 0.0;
  if (step_override_) return *step_override_;
  return default_step(domain_[static_cast<std::size_t>(axis)]);
}

void MetricChart::set_fd_step(double h) {
  for (const auto& a : domain_)
    if (!(h >= 1e-10 * a.length()))
      throw Error(Errc::configuration, "difference step underflows the chart scale");
  step_override_ = h;
}

MetricChart MetricChart::finite_difference() const {
  MetricChart c(name_, domain_, metric_);
  c.step_override_ = step_override_;
  c.closed_ = closed_;
  return c;
}

MetricChart MetricChart::scaled(double c) const {
  const double c2 = c * c;
  MetricFn m = [f = metric_, c2](const Eigen::VectorXd& p) -> Eigen::MatrixXd { return c2 * f(p); };
  MetricChart out(name_, domain_, m);
  if (partials_) {
    out.partials_ = [f = partials_, c2](const Eigen::VectorXd& p) {
      MetricDerivatives d = f(p);
      for (auto& m1 : d.first) m1 *= c2;
      for (auto& m2 : d.second) m2 *= c2;
      return d;
    };
  }
  out.step_override_ = step_override_;
  out.closed_ = closed_;
  return out;
}

MetricDerivatives MetricChart::derivatives(const Eigen::VectorXd& p0) const {
  const Eigen::VectorXd p = wrap(p0);
  if (partials_) return partials_(p);

  const int n = dimension();
  MetricDerivatives d;
  d.first.resize(static_cast<std::size_t>(n));
  d.second.resize(static_cast<std::size_t>(n * n));
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    h[static_cast<std::size_t>(k)] = fd_step(k);
    if (h[static_cast<std::size_t>(k)] < 1e-10 * domain_[static_cast<std::size_t>(k)].length())
      throw Error(Errc::configuration, "difference step underflows the chart scale");
  }

  const Eigen::MatrixXd g0 = metric_(p);
  // Richardson: D = (4 D(h) - D(2h)) / 3 for every second-order stencil below.
  for (int k = 0; k < n; ++k) {
    const double hk = h[static_cast<std::size_t>(k)];
    const Eigen::MatrixXd d1 = (metric_(shifted(p, k, hk)) - metric_(shifted(p, k, -hk))) / (2 * hk);
    const Eigen::MatrixXd d2 = (metric_(shifted(p, k, 2 * hk)) - metric_(shifted(p, k, -2 * hk))) / (4 * hk);
    d.first[static_cast<std::size_t>(k)] = (4 * d1 - d2) / 3;

    const double sk = kSecondStepFactor * hk;
    const Eigen::MatrixXd s1 = (metric_(shifted(p, k, sk)) - 2 * g0 + metric_(shifted(p, k, -sk))) / (sk * sk);
    const Eigen::MatrixXd s2 = (metric_(shifted(p, k, 2 * sk)) - 2 * g0 + metric_(shifted(p, k, -2 * sk))) / (4 * sk * sk);
    d.second[static_cast<std::size_t>(k * n + k)] = (4 * s1 - s2) / 3;
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const double hk = kSecondStepFactor * h[static_cast<std::size_t>(k)];
      const double hl = kSecondStepFactor * h[static_cast<std::size_t>(l)];
      auto mixed = [&](double s) -> Eigen::MatrixXd {
        return (metric_(shifted(p, k, s * hk, l, s * hl)) - metric_(shifted(p, k, s * hk, l, -s * hl)) -
                metric_(shifted(p, k, -s * hk, l, s * hl)) + metric_(shifted(p, k, -s * hk, l, -s * hl))) /
               (4 * s * s * hk * hl);
      };
      const Eigen::MatrixXd m = (4 * mixed(1.0) - mixed(2.0)) / 3;
      d.second[static_cast<std::size_t>(k * n + l)] = m;
      d.second[static_cast<std::size_t>(l * n + k)] = m;
    }
  }
  return d;
}

namespace {

// Lowered symbols Gamma_{l,ij} = 1/2 (d_i g_lj + d_j g_li - d_l g_ij).
double christoffel_first_kind(const MetricDerivatives& d, int l, int i, int j) {
  return 0.5 * (d.first[static_cast<std::size_t>(i)](l, j) + d.first[static_cast<std::size_t>(j)](l, i) -
                d.first[static_cast<std::size_t>(l)](i, j));
}

Christoffel christoffel_from(const Eigen::MatrixXd& g, const MetricDerivatives& d) {
  const int n = static_cast<int>(g.rows());
  const Eigen::MatrixXd ginv = g.llt().solve(Eigen::MatrixXd::Identity(n, n));
  Christoffel c;
  c.symbols.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * christoffel_first_kind(d, l, i, j);
        c.symbols[static_cast<std::size_t>(k)](i, j) = s;
        c.symbols[static_cast<std::size_t>(k)](j, i) = s;
      }
  return c;
}

double max_step(const MetricChart& chart) {
  double h = 0.0;
  for (int k = 0; k < chart.dimension(); ++k) h = std::max(h, chart.fd_step(k));
  return h;
}

}  // namespace

Christoffel christoffel(const MetricChart& chart, const Eigen::VectorXd& p) {
  const Eigen::MatrixXd g = chart.metric(p);
  Christoffel c = christoffel_from(g, chart.derivatives(p));
  c.step = max_step(chart);
  return c;
}

CurvatureTensor<double> riemann_covariant(const MetricChart& chart, const Eigen::VectorXd& p) {
  const Eigen::MatrixXd g = chart.metric(p);
  const MetricDerivatives d = chart.derivatives(p);
  const Christoffel G = christoffel_from(g, d);
  const int n = chart.dimension();

  // R_iklm = 1/2 (d_k d_l g_im + d_i d_m g_kl - d_k d_m g_il - d_i d_l g_km)
  //        + g_np (Gamma^n_kl Gamma^p_im - Gamma^n_km Gamma^p_il)
  // Lowered Gamma_{p,im} = g_pn Gamma^n_im saves one contraction.
  std::vector<Eigen::MatrixXd> lowered(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) lowered[static_cast<std::size_t>(q)](i, m) = christoffel_first_kind(d, q, i, m);

  CurvatureTensor<double> R(n);
  R.for_each_index([&](int i, int k, int l, int m) {
    double v = 0.5 * (d.d2(k, l)(i, m) + d.d2(i, m)(k, l) - d.d2(k, m)(i, l) - d.d2(i, l)(k, m));
    for (int q = 0; q < n; ++q)
      v += G(q, k, l) * lowered[static_cast<std::size_t>(q)](i, m) - G(q, k, m) * lowered[static_cast<std::size_t>(q)](i, l);
    R(i, k, l, m) = v;
  });
  return R;
}

Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g) {
  check_spd(g);
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    // Two modified Gram-Schmidt passes keep E^T g E = I at round-off level.
    for (int pass = 0; pass < 2; ++pass)
      for (int b = 0; b < a; ++b) E.col(a) -= (E.col(b).dot(g * E.col(a))) * E.col(b);
    E.col(a) /= std::sqrt(E.col(a).dot(g * E.col(a)));
  }
  return E;
}

Eigen::MatrixXd orthonormal_frame(const MetricChart& chart, const Eigen::VectorXd& p) {
  return orthonormal_frame(chart.metric(p));
}

CurvatureTensor<double> riemann_orthonormal(const MetricChart& chart, const Eigen::VectorXd& p) {
  CurvatureTensor<double> R = riemann_covariant(chart, p).transformed(orthonormal_frame(chart, p));
  R.symmetrize();
  return R;
}

double gauss_curvature(const MetricChart& chart, const Eigen::VectorXd& p) {
  if (chart.dimension() != 2) throw Error(Errc::dimension, "Gauss curvature needs a two-dimensional chart");
  return riemann_orthonormal(chart, p)(0, 1, 0, 1);
}

double volume_density(const MetricChart& chart, const Eigen::VectorXd& p) {
  return std::sqrt(chart.metric(p).determinant());
}

}  // namespace gbm
