#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "gbm/chart.hpp"
#include "gbm/curvature_tensor.hpp"
#include "gbm/error.hpp"

namespace gbm {

enum class DensityMethod { permutation_sum, pfaffian };

/// Gauss-Bonnet-Chern density with respect to the Riemannian volume.
template <typename Scalar>
struct EulerDensity {
  Scalar value = Scalar(0);
  DensityMethod method = DensityMethod::permutation_sum;
  /// Value from the other route when both were evaluated.
  std::optional<Scalar> cross_check;
};

namespace detail {

struct SignedPermutation {
  std::vector<int> p;
  int sign = 1;
};

inline std::vector<SignedPermutation> signed_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::vector<SignedPermutation> out;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
    out.push_back({p, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline double factorial(int m) {
  double f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

/// Element of the even exterior algebra over R^n (n <= 8), stored by basis
/// mask. Even forms commute, so a Pfaffian over them expands like a
/// determinant over a commutative ring.
template <typename Scalar>
class EvenForm {
 public:
  explicit EvenForm(int n) : n_(n), c_(std::size_t{1} << n, Scalar(0)) {}

  Scalar& operator[](std::uint32_t mask) { return c_[mask]; }
  Scalar operator[](std::uint32_t mask) const { return c_[mask]; }

  EvenForm wedge(const EvenForm& o) const {
    EvenForm out(n_);
    for (std::uint32_t a = 0; a < c_.size(); ++a) {
      if (c_[a] == Scalar(0)) continue;
      for (std::uint32_t b = 0; b < o.c_.size(); ++b) {
        if ((a & b) != 0 || o.c_[b] == Scalar(0)) continue;
        out.c_[a | b] += static_cast<Scalar>(merge_sign(a, b)) * c_[a] * o.c_[b];
      }
    }
    return out;
  }

  EvenForm& operator+=(const EvenForm& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  EvenForm& operator*=(Scalar s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  Scalar top() const { return c_.back(); }

 private:
  // Sign of sorting e_A ^ e_B into increasing order: one transposition per
  // pair (i in A, j in B) with i > j.
  static int merge_sign(std::uint32_t a, std::uint32_t b) {
    int swaps = 0;
    for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      swaps += std::popcount(a & ~(bit | (bit - 1)));
    }
    return swaps % 2 == 0 ? 1 : -1;
  }

  int n_;
  std::vector<Scalar> c_;
};

template <typename Scalar>
EvenForm<Scalar> pfaffian(const std::vector<std::vector<EvenForm<Scalar>>>& omega, const std::vector<int>& rows, int n) {
  if (rows.empty()) {
    EvenForm<Scalar> one(n);
    one[0] = Scalar(1);
    return one;
  }
  EvenForm<Scalar> acc(n);
  const int first = rows[0];
  for (std::size_t j = 1; j < rows.size(); ++j) {
    std::vector<int> rest;
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (k != j) rest.push_back(rows[k]);
    EvenForm<Scalar> term = omega[static_cast<std::size_t>(first)][static_cast<std::size_t>(rows[j])].wedge(pfaffian(omega, rest, n));
    if (j % 2 == 0) term *= Scalar(-1);
    acc += term;
  }
  return acc;
}

}  // namespace detail

/// Double permutation sum over orthonormal curvature components with
/// prefactor 1 / ((2 pi)^{n/2} 2^n (n/2)!). Zero for odd n; Errc::capability
/// above n = 6.
template <typename Scalar>
EulerDensity<Scalar> gb_density_perm(const CurvatureTensor<Scalar>& R) {
  const int n = R.dimension();
  EulerDensity<Scalar> out{Scalar(0), DensityMethod::permutation_sum, std::nullopt};
  if (n % 2 != 0) return out;
  if (n > 6) throw Error(Errc::capability, "permutation sum is limited to n <= 6; use the Pfaffian route");

  const auto perms = detail::signed_permutations(n);
  Scalar sum(0);
  for (const auto& mu : perms) {
    Scalar inner(0);
    for (const auto& nu : perms) {
      Scalar prod(nu.sign);
      for (int i = 0; i < n; i += 2) {
        const auto a = static_cast<std::size_t>(i);
        prod *= R(mu.p[a], mu.p[a + 1], nu.p[a], nu.p[a + 1]);
        if (prod == Scalar(0)) break;
      }
      inner += prod;
    }
    sum += Scalar(mu.sign) * inner;
  }
  const Scalar prefactor = Scalar(1) / (std::pow(Scalar(2 * std::numbers::pi), Scalar(n / 2)) *
                                        std::pow(Scalar(2), Scalar(n)) * Scalar(detail::factorial(n / 2)));
  out.value = prefactor * sum;
  return out;
}

/// Pf(Omega) / (2 pi)^{n/2} with Omega_ab = 1/2 R_abcd e^c ^ e^d, expanded
/// recursively in the even exterior algebra (n <= 8).
template <typename Scalar>
EulerDensity<Scalar> gb_density_pfaffian(const CurvatureTensor<Scalar>& R) {
  const int n = R.dimension();
  EulerDensity<Scalar> out{Scalar(0), DensityMethod::pfaffian, std::nullopt};
  if (n % 2 != 0) return out;
  if (n > 8) throw Error(Errc::capability, "Pfaffian expansion is limited to n <= 8");
  const Scalar scale = std::max<Scalar>(Scalar(1), R.max_abs());
  if (R.antisymmetry_residual() > Scalar(1e-6) * scale)
    throw Error(Errc::numerical_quality, "curvature tensor is not antisymmetric within 1e-6");

  using Form = detail::EvenForm<Scalar>;
  std::vector<std::vector<Form>> omega(static_cast<std::size_t>(n), std::vector<Form>(static_cast<std::size_t>(n), Form(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][(1u << c) | (1u << d)] =
              (R(a, b, c, d) - R(a, b, d, c)) / Scalar(2);

  std::vector<int> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i;
  const Scalar pf = detail::pfaffian(omega, rows, n).top();
  out.value = pf / std::pow(Scalar(2 * std::numbers::pi), Scalar(n / 2));
  return out;
}

/// Euler density of the chart at p: permutation sum for n <= 4, Pfaffian
/// above; both routes are evaluated for n <= 6 and the other one is kept in
/// `cross_check`.
EulerDensity<double> gb_density(const MetricChart& chart, const Eigen::VectorXd& p);
EulerDensity<double> gb_density(const CurvatureTensor<double>& R);

}  // namespace gbm
