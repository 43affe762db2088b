#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace gbm {

/// Rank-4 curvature components R_ijkl of an n-dimensional metric, stored
/// densely. The same type holds coordinate components and orthonormal-frame
/// components; which one is meant is up to the producer.
template <typename Scalar>
class CurvatureTensor {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  CurvatureTensor() = default;
  explicit CurvatureTensor(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n), Scalar(0)) {}

  int dimension() const { return n_; }

  Scalar& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  const Scalar& operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

  Scalar max_abs() const {
    Scalar m(0);
    for (const auto& v : data_) m = std::max<Scalar>(m, std::abs(v));
    return m;
  }

  /// max |R_ijkl + R_jikl|, |R_ijkl + R_ijlk|
  Scalar antisymmetry_residual() const {
    Scalar r(0);
    for_each_index([&](int i, int j, int k, int l) {
      r = std::max<Scalar>(r, std::abs((*this)(i, j, k, l) + (*this)(j, i, k, l)));
      r = std::max<Scalar>(r, std::abs((*this)(i, j, k, l) + (*this)(i, j, l, k)));
    });
    return r;
  }

  Scalar pair_residual() const {
    Scalar r(0);
    for_each_index([&](int i, int j, int k, int l) {
      r = std::max<Scalar>(r, std::abs((*this)(i, j, k, l) - (*this)(k, l, i, j)));
    });
    return r;
  }

  Scalar bianchi_residual() const {
    Scalar r(0);
    for_each_index([&](int i, int j, int k, int l) {
      r = std::max<Scalar>(r, std::abs((*this)(i, j, k, l) + (*this)(i, k, l, j) + (*this)(i, l, j, k)));
    });
    return r;
  }

  /// Largest violation of the three algebraic symmetries, relative to
  /// max(1, max |R|).
  Scalar symmetry_residual() const {
    const Scalar scale = std::max<Scalar>(Scalar(1), max_abs());
    return std::max({antisymmetry_residual(), pair_residual(), bianchi_residual()}) / scale;
  }

  /// Projects onto algebraic curvature tensors: average over the order-8
  /// index symmetry group, then remove the totally antisymmetric part.
  /// Returns and stores the residual measured before projection.
  Scalar symmetrize() {
    residual_ = symmetry_residual();
    CurvatureTensor avg(n_);
    for_each_index([&](int i, int j, int k, int l) {
      const auto& R = *this;
      avg(i, j, k, l) = (R(i, j, k, l) - R(j, i, k, l) - R(i, j, l, k) + R(j, i, l, k) + R(k, l, i, j) -
                         R(l, k, i, j) - R(k, l, j, i) + R(l, k, j, i)) /
                        Scalar(8);
    });
    for_each_index([&](int i, int j, int k, int l) {
      const Scalar cyclic = avg(i, j, k, l) + avg(i, k, l, j) + avg(i, l, j, k);
      (*this)(i, j, k, l) = avg(i, j, k, l) - cyclic / Scalar(3);
    });
    return residual_;
  }

  /// Components in the frame whose vectors are the columns of E:
  /// R'_abcd = R_ijkl E_ia E_jb E_kc E_ld.
  CurvatureTensor transformed(const Matrix& E) const {
    const int n = n_;
    // Contract one index at a time: n^5 instead of n^8.
    std::vector<Scalar> a(data_.size()), b(data_.size());
    auto at = [n](int i, int j, int k, int l) { return static_cast<std::size_t>(((i * n + j) * n + k) * n + l); };
    for_each_index([&](int i, int j, int k, int d) {
      Scalar s(0);
      for (int l = 0; l < n; ++l) s += data_[at(i, j, k, l)] * E(l, d);
      a[at(i, j, k, d)] = s;
    });
    for_each_index([&](int i, int j, int c, int d) {
      Scalar s(0);
      for (int k = 0; k < n; ++k) s += a[at(i, j, k, d)] * E(k, c);
      b[at(i, j, c, d)] = s;
    });
    for_each_index([&](int i, int bb, int c, int d) {
      Scalar s(0);
      for (int j = 0; j < n; ++j) s += b[at(i, j, c, d)] * E(j, bb);
      a[at(i, bb, c, d)] = s;
    });
    CurvatureTensor out(n);
    for_each_index([&](int aa, int bb, int c, int d) {
      Scalar s(0);
      for (int i = 0; i < n; ++i) s += a[at(i, bb, c, d)] * E(i, aa);
      out(aa, bb, c, d) = s;
    });
    out.residual_ = residual_;
    return out;
  }

  CurvatureTensor& operator*=(Scalar s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  /// Residual recorded by the last symmetrize() call.
  Scalar residual() const { return residual_; }
  bool has_quality_warning() const { return residual_ > Scalar(1e-6); }

  template <typename F>
  void for_each_index(F&& f) const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          for (int l = 0; l < n_; ++l) f(i, j, k, l);
  }

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }

  int n_ = 0;
  std::vector<Scalar> data_;
  Scalar residual_ = Scalar(0);
};

}  // namespace gbm
