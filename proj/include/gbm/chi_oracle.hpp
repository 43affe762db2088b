#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace gbm {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "num/den", denominator always printed (e.g. "-2/1").
std::string to_string(const ExactRational& q);
/// Parses "num/den" or an integer.
ExactRational parse_rational(const std::string& s);

/// B_m from sum_{j<=m} C(m+1, j) B_j = 0 with B_0 = 1 (so B_1 = -1/2).
/// Odd m > 1 gives 0; m > 200 throws Errc::capability, m < 0 Errc::range.
ExactRational bernoulli(int m);

/// zeta(1 - 2g) = -B_{2g} / (2g), g >= 1.
ExactRational zeta_neg(int g);

/// Orbifold Euler characteristic of the mapping class group of a genus-g
/// surface with one puncture, zeta(1 - 2g). Only g > 1.
ExactRational chi_punctured(int g);

/// Closed genus-g surface: zeta(1 - 2g) / (2 - 2g). Only g > 1.
ExactRational chi_closed(int g);

/// prod_{k=1}^n zeta(1 - 2k).
ExactRational chi_sp(int n);

/// Euler characteristic of an index-`index` cover: index * chi_orb.
ExactRational chi_finite_cover(const ExactRational& chi_orb, long long index);
/// Inverse bookkeeping: chi_cover / index.
ExactRational chi_orbifold_from_cover(const ExactRational& chi_cover, long long index);

struct TeichDim {
  int d = 0;
  int dim_T = 0;
  int dim_C = 0;
};

/// d = 3g - 3 + p, real dimension of Teichmueller space 2d, dimension of the
/// curve complex d - 1. Throws Errc::range unless d > 0.
TeichDim teich_dim(int g, int p);

}  // namespace gbm
