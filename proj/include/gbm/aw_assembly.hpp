#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbm/chart.hpp"
#include "gbm/chi_oracle.hpp"
#include "gbm/integrate.hpp"
#include "gbm/moduli_models.hpp"
#include "gbm/polyhedra.hpp"

namespace gbm {

enum class Verdict { match, mismatch, inconclusive };
const char* to_string(Verdict v) noexcept;

struct BoundaryTerm {
  std::string face;
  /// codimension of the face
  int codim = 1;
  double value = 0.0;
  double error = 0.0;
  /// value is an upper bound for |term| rather than the term itself
  bool is_bound = false;
};

struct GBReport {
  std::string subject;
  double interior = 0.0;
  double interior_error = 0.0;
  bool interior_converged = true;
  /// integral of Psi over coordinate caps left out of the quadrature (closed charts)
  double excluded_mass = 0.0;
  std::vector<BoundaryTerm> boundary;
  double total = 0.0;
  std::optional<ExactRational> expected_chi;
  long long nearest = 0;
  Verdict verdict = Verdict::inconclusive;

  /// sums of the exact codimension-1 and codimension-2 terms
  double edge_sum() const;
  double corner_sum() const;
};

struct AssemblyOptions {
  /// unset: QuadratureSpec::for_dimension(n)
  std::optional<QuadratureSpec> quad;
  /// |total - integer| below this counts as landing on the integer
  double integer_threshold = 0.01;
  /// interior error estimates above this make the verdict inconclusive
  double max_error = 0.05;
  OuterAngleOptions angles;
  /// points per eps pair in the nesting check
  std::size_t nesting_samples = 20000;
};

/// Integral of Psi over a closed manifold given by one chart: builtins with
/// known cap data, or any chart whose axes are all periodic (a torus).
/// Errc::configuration otherwise.
GBReport gauss_bonnet_closed(const MetricChart& chart, const AssemblyOptions& opt = {});

/// Two-dimensional polygon: interior integral of Psi, (1/2 pi) times the
/// integrated geodesic curvature of every edge, and the normalized outer
/// angle of every corner, compared against inner_euler(region).
GBReport gauss_bonnet_2d_region(const Region& region, const AssemblyOptions& opt = {});

/// C = (1 + psi_bound + ii_bound)^(n - 1).
double residual_constant(double psi_bound, double ii_bound, int n);
std::string residual_constant_formula();
/// C times the total volume of the faces of positive dimension. Corners are
/// not covered by this bound.
double residual_bound(const Region& region, double psi_bound, double ii_bound);

struct ExhaustionRow {
  double eps = 0.0;
  double integral = 0.0;
  double error = 0.0;
  double bound = 0.0;
  long long nearest = 0;
  /// |integral - expected chi| when chi is known, else |integral - nearest|
  double gap = 0.0;
  std::optional<double> reference;
};

struct ExhaustionReport {
  std::string model;
  std::vector<ExhaustionRow> rows;
  std::optional<ExactRational> expected_chi;
  double constant = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Integrates Psi over the thick part for each eps (strictly decreasing),
/// after checking on random points that the thick parts are nested
/// (Errc::model_consistency if not). Verdict: with a known chi, "match" when
/// the two smallest eps share a nearest integer that both lie within
/// bound + error of, and it equals chi; with only a closed-form reference,
/// "match" when every row agrees with it to 1e-8.
ExhaustionReport exhaustion_report(const ExhaustibleModel& model, const std::vector<double>& eps_list,
                                   const AssemblyOptions& opt = {});

}  // namespace gbm
