#include "gbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbm/error.hpp"

namespace gbm::metrics {

using std::numbers::pi;

namespace {

MetricDerivatives zero_derivatives(int n) {
  MetricDerivatives d;
  d.first.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  d.second.assign(static_cast<std::size_t>(n * n), Eigen::MatrixXd::Zero(n, n));
  return d;
}

// int_delta^{pi - delta} sin^k
double sin_power_band(int k, double delta) {
  const double c = std::cos(delta);
  switch (k) {
    case 1: return 2 * c;
    case 2: return (pi - 2 * delta) / 2 + std::sin(2 * delta) / 2;
    case 3: return 2 * (c - c * c * c / 3);
    default: throw Error(Errc::capability, "sin power band");
  }
}

}  // namespace

MetricChart euclidean(int n) { return euclidean(std::vector<Axis>(static_cast<std::size_t>(n), Axis{0.0, 1.0})); }

MetricChart euclidean(std::vector<Axis> box) {
  const int n = static_cast<int>(box.size());
  return MetricChart(
      "euclidean", std::move(box), [n](const Eigen::VectorXd&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Identity(n, n); },
      [n](const Eigen::VectorXd&) { return zero_derivatives(n); });
}

MetricChart sphere(double r) {
  if (!(r > 0)) throw Error(Errc::configuration, "sphere radius must be positive");
  const double r2 = r * r;
  MetricChart chart(
      "sphere", {Axis{kPolarCap, pi - kPolarCap}, Axis{0.0, 2 * pi, true}},
      [r2](const Eigen::VectorXd& p) -> Eigen::MatrixXd {
        const double s = std::sin(p[0]);
        return Eigen::Vector2d(r2, r2 * s * s).asDiagonal();
      },
      [r2](const Eigen::VectorXd& p) {
        MetricDerivatives d = zero_derivatives(2);
        d.first[0](1, 1) = r2 * std::sin(2 * p[0]);
        d.second[0](1, 1) = 2 * r2 * std::cos(2 * p[0]);
        return d;
      });
  // Each removed cap carries K/(2 pi) times its area 2 pi r^2 (1 - cos delta).
  chart.set_closed_info({2, 2 * (1 - std::cos(kPolarCap))});
  return chart;
}

namespace {
const Eigen::Vector3d kTiltAxis = Eigen::Vector3d(1, -1, 0) / std::sqrt(2.0);
const Eigen::Vector3d kTiltE1 = Eigen::Vector3d(0, 0, 1);
const Eigen::Vector3d kTiltE2 = Eigen::Vector3d(-1, -1, 0) / std::sqrt(2.0);
}  // namespace

Eigen::Vector3d tilted_to_cartesian(double theta, double phi) {
  return std::sin(theta) * std::cos(phi) * kTiltE1 + std::sin(theta) * std::sin(phi) * kTiltE2 +
         std::cos(theta) * kTiltAxis;
}

Eigen::Vector2d cartesian_to_tilted(const Eigen::Vector3d& v) {
  const Eigen::Vector3d u = v.normalized();
  return {std::acos(std::clamp(u.dot(kTiltAxis), -1.0, 1.0)), std::atan2(u.dot(kTiltE2), u.dot(kTiltE1))};
}

MetricChart sphere_tilted(double r) {
  MetricChart base = sphere(r);
  return MetricChart(
      "sphere-tilted", {Axis{0.1, pi - 0.1}, Axis{-pi, pi, true}},
      [base](const Eigen::VectorXd& p) { return base.raw_metric(p); },
      [base](const Eigen::VectorXd& p) { return base.derivatives(p); });
}

MetricChart half_plane(Axis x, Axis y) {
  if (!(y.lo > 0)) throw Error(Errc::configuration, "half-plane box must stay above y = 0");
  return MetricChart(
      "half-plane", {x, y},
      [](const Eigen::VectorXd& p) -> Eigen::MatrixXd { return Eigen::MatrixXd::Identity(2, 2) / (p[1] * p[1]); },
      [](const Eigen::VectorXd& p) {
        MetricDerivatives d = zero_derivatives(2);
        const double y = p[1];
        d.first[1] = Eigen::MatrixXd::Identity(2, 2) * (-2 / (y * y * y));
        d.second[3] = Eigen::MatrixXd::Identity(2, 2) * (6 / (y * y * y * y));
        return d;
      });
}

MetricChart flat_torus(double a, double b) {
  MetricChart chart(
      "flat-torus", {Axis{0.0, a, true}, Axis{0.0, b, true}},
      [](const Eigen::VectorXd&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Identity(2, 2); });
  chart.set_closed_info({0, 0.0});
  return chart;
}

MetricChart product(const MetricChart& first, const MetricChart& second) {
  const int n1 = first.dimension();
  const int n2 = second.dimension();
  const int n = n1 + n2;
  std::vector<Axis> box = first.domain();
  box.insert(box.end(), second.domain().begin(), second.domain().end());

  auto metric = [first, second, n1, n2, n](const Eigen::VectorXd& p) -> Eigen::MatrixXd {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g.topLeftCorner(n1, n1) = first.raw_metric(p.head(n1));
    g.bottomRightCorner(n2, n2) = second.raw_metric(p.tail(n2));
    return g;
  };
  const std::string name = first.name() + "x" + second.name();
  MetricChart out = [&]() {
    if (first.derivative_mode() == DerivativeMode::analytic && second.derivative_mode() == DerivativeMode::analytic) {
      return MetricChart(name, box, metric, [first, second, n1, n2, n](const Eigen::VectorXd& p) {
        const MetricDerivatives a = first.derivatives(p.head(n1));
        const MetricDerivatives b = second.derivatives(p.tail(n2));
        MetricDerivatives d = zero_derivatives(n);
        for (int k = 0; k < n1; ++k) {
          d.first[static_cast<std::size_t>(k)].topLeftCorner(n1, n1) = a.first[static_cast<std::size_t>(k)];
          for (int l = 0; l < n1; ++l) d.second[static_cast<std::size_t>(k * n + l)].topLeftCorner(n1, n1) = a.d2(k, l);
        }
        for (int k = 0; k < n2; ++k) {
          d.first[static_cast<std::size_t>(n1 + k)].bottomRightCorner(n2, n2) = b.first[static_cast<std::size_t>(k)];
          for (int l = 0; l < n2; ++l)
            d.second[static_cast<std::size_t>((n1 + k) * n + n1 + l)].bottomRightCorner(n2, n2) = b.d2(k, l);
        }
        return d;
      });
    }
    return MetricChart(name, box, metric);
  }();

  if (first.closed_info() && second.closed_info()) {
    // The Euler density of a product is the product of the factor densities,
    // so the kept region integrates to (chi1 - e1)(chi2 - e2).
    const auto& a = *first.closed_info();
    const auto& b = *second.closed_info();
    const double kept = (a.euler_characteristic - a.excluded_mass) * (b.euler_characteristic - b.excluded_mass);
    const int chi = a.euler_characteristic * b.euler_characteristic;
    out.set_closed_info({chi, chi - kept});
  }
  return out;
}

MetricChart model_thin(double u_lo, double u_hi) {
  return MetricChart(
      "model-thin", {Axis{u_lo, u_hi}, Axis{0.0, 1.0, true}},
      [](const Eigen::VectorXd& p) -> Eigen::MatrixXd { return Eigen::Vector2d(1.0, std::exp(-6 * p[0])).asDiagonal(); },
      [](const Eigen::VectorXd& p) {
        MetricDerivatives d = zero_derivatives(2);
        const double f = std::exp(-6 * p[0]);
        d.first[0](1, 1) = -6 * f;
        d.second[0](1, 1) = 36 * f;
        return d;
      });
}

MetricChart round_s4() {
  const double c = kPolarCap;
  MetricChart chart("s4", {Axis{c, pi - c}, Axis{c, pi - c}, Axis{c, pi - c}, Axis{0.0, 2 * pi, true}},
                    [](const Eigen::VectorXd& p) -> Eigen::MatrixXd {
                      const double s1 = std::sin(p[0]), s2 = std::sin(p[1]), s3 = std::sin(p[2]);
                      const double a = s1 * s1, b = a * s2 * s2, d = b * s3 * s3;
                      return Eigen::Vector4d(1.0, a, b, d).asDiagonal();
                    });
  // Density 3/(4 pi^2) on the unit sphere; volume element sin^3 sin^2 sin.
  const double kept = 3 / (4 * pi * pi) * 2 * pi * sin_power_band(3, c) * sin_power_band(2, c) * sin_power_band(1, c);
  chart.set_closed_info({2, 2 - kept});
  return chart;
}

MetricChart s2xs2() { return product(sphere(1.0), sphere(1.0)).finite_difference(); }

MetricChart by_name(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "euclidean") return euclidean(static_cast<int>(get("n", 2)));
  if (name == "sphere") return sphere(get("radius", 1.0));
  if (name == "half-plane") return half_plane();
  if (name == "flat-torus") return flat_torus(get("a", 1.0), get("b", 1.0));
  if (name == "model-thin") return model_thin(get("u_lo", 0.0), get("u_hi", 12.0));
  if (name == "s4") return round_s4();
  if (name == "s2xs2") return s2xs2();
  throw Error(Errc::configuration, "unknown metric '" + name + "'");
}

std::vector<std::string> catalog() {
  return {"euclidean", "sphere", "half-plane", "flat-torus", "model-thin", "s4", "s2xs2"};
}

}  // namespace gbm::metrics
