#pragma once

#include <map>
#include <string>
#include <vector>

#include "gbm/chart.hpp"

namespace gbm::metrics {

/// Coordinate radius of the polar caps removed from spherical charts.
inline constexpr double kPolarCap = 1e-4;

/// Flat R^n on [0,1]^n (or the given box).
MetricChart euclidean(int n);
MetricChart euclidean(std::vector<Axis> box);

/// Round sphere of radius r in (theta, phi), caps of radius kPolarCap removed.
MetricChart sphere(double r = 1.0);

/// Round sphere of radius r in a chart whose polar axis is (1,-1,0)/sqrt(2),
/// so that the positive octant stays clear of the coordinate poles.
/// Coordinates (theta, phi) with theta in [0.1, pi - 0.1] and phi periodic in [-pi, pi).
MetricChart sphere_tilted(double r = 1.0);
/// Cartesian point of sphere_tilted coordinates (unit radius).
Eigen::Vector3d tilted_to_cartesian(double theta, double phi);
Eigen::Vector2d cartesian_to_tilted(const Eigen::Vector3d& v);

/// Upper half-plane y^-2 (dx^2 + dy^2) on the given box.
MetricChart half_plane(Axis x = {-5.0, 5.0}, Axis y = {0.05, 20.0});

/// Flat torus with periods a, b.
MetricChart flat_torus(double a = 1.0, double b = 1.0);

/// Riemannian product; analytic when both factors are.
MetricChart product(const MetricChart& first, const MetricChart& second);

/// du^2 + e^{-6u} dtheta^2 on u in [u_lo, u_hi], theta periodic in [0, 1).
MetricChart model_thin(double u_lo = 0.0, double u_hi = 12.0);

/// Unit round S^4 in hyperspherical coordinates, finite-difference partials.
MetricChart round_s4();

/// Unit S^2 x S^2 with finite-difference partials.
MetricChart s2xs2();

/// Catalog lookup. Parameters: sphere {radius}, flat-torus {a, b},
/// euclidean {n}, model-thin {u_lo, u_hi}. Throws Errc::configuration for
/// unknown names.
MetricChart by_name(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> catalog();

}  // namespace gbm::metrics
