#include "gbm/euler_form.hpp"

namespace gbm {

EulerDensity<double> gb_density(const CurvatureTensor<double>& R) {
  const int n = R.dimension();
  if (n % 2 != 0) return {0.0, DensityMethod::permutation_sum, std::nullopt};
  if (n <= 4) {
    EulerDensity<double> d = gb_density_perm(R);
    d.cross_check = gb_density_pfaffian(R).value;
    return d;
  }
  EulerDensity<double> d = gb_density_pfaffian(R);
  if (n <= 6) d.cross_check = gb_density_perm(R).value;
  return d;
}

EulerDensity<double> gb_density(const MetricChart& chart, const Eigen::VectorXd& p) {
  return gb_density(riemann_orthonormal(chart, p));
}

}  // namespace gbm
