#include "gbm/chi_oracle.hpp"

#include <vector>

#include "gbm/error.hpp"

namespace gbm {

std::string to_string(const ExactRational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

ExactRational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return ExactRational(BigInt(s));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error(Errc::domain, "zero denominator in '" + s + "'");
    return ExactRational(BigInt(s.substr(0, slash)), den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(Errc::configuration, "not a rational: '" + s + "'");
  }
}

namespace {

constexpr int kMaxBernoulli = 200;

// B_0..B_200 computed once.
const std::vector<ExactRational>& bernoulli_table() {
  static const std::vector<ExactRational> table = [] {
    std::vector<ExactRational> B(kMaxBernoulli + 1);
    B[0] = 1;
    // binom holds C(m+1, j) for the current m
    std::vector<BigInt> binom{1, 1};
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      std::vector<BigInt> next(static_cast<std::size_t>(m + 2));
      next[0] = next[static_cast<std::size_t>(m + 1)] = 1;
      for (int j = 1; j <= m; ++j) next[static_cast<std::size_t>(j)] = binom[static_cast<std::size_t>(j - 1)] + binom[static_cast<std::size_t>(j)];
      binom = std::move(next);
      if (m > 1 && m % 2 == 1) continue;  // B_m = 0
      ExactRational s = 0;
      for (int j = 0; j < m; ++j) s += ExactRational(binom[static_cast<std::size_t>(j)]) * B[static_cast<std::size_t>(j)];
      B[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    return B;
  }();
  return table;
}

}  // namespace

ExactRational bernoulli(int m) {
  if (m < 0) throw Error(Errc::range, "Bernoulli index must be nonnegative");
  if (m > kMaxBernoulli) throw Error(Errc::capability, "Bernoulli numbers are provided up to m = 200");
  return bernoulli_table()[static_cast<std::size_t>(m)];
}

ExactRational zeta_neg(int g) {
  if (g < 1) throw Error(Errc::range, "zeta(1 - 2g) needs g >= 1");
  return -bernoulli(2 * g) / (2 * g);
}

ExactRational chi_punctured(int g) {
  if (g <= 1) throw Error(Errc::range, "the punctured-surface formula holds for g > 1 only");
  return zeta_neg(g);
}

ExactRational chi_closed(int g) {
  if (g <= 1) throw Error(Errc::range, "the closed-surface formula holds for g > 1 only");
  return zeta_neg(g) / (2 - 2 * g);
}

ExactRational chi_sp(int n) {
  if (n < 1) throw Error(Errc::range, "symplectic rank must be at least 1");
  ExactRational p = 1;
  for (int k = 1; k <= n; ++k) p *= zeta_neg(k);
  return p;
}

ExactRational chi_finite_cover(const ExactRational& chi_orb, long long index) {
  if (index < 1) throw Error(Errc::range, "covering index must be positive");
  return chi_orb * index;
}

ExactRational chi_orbifold_from_cover(const ExactRational& chi_cover, long long index) {
  if (index < 1) throw Error(Errc::range, "covering index must be positive");
  return chi_cover / index;
}

TeichDim teich_dim(int g, int p) {
  if (g < 0 || p < 0) throw Error(Errc::range, "genus and punctures must be nonnegative");
  const int d = 3 * g - 3 + p;
  if (d <= 0) throw Error(Errc::range, "3g - 3 + p must be positive");
  return {d, 2 * d, d - 1};
}

}  // namespace gbm
