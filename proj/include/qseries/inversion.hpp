#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/ratfun.hpp"
#include "qseries/series.hpp"

namespace qs {

/// Lower-triangular matrix given entrywise; entry(n, k) is only queried for n >= k >= 0.
struct TriangularKernel {
    std::string name;
    std::function<RationalFunction(int n, int k)> entry;
    Registry reg;

    /// entry(n, k), or zero above the diagonal.
    RationalFunction at(int n, int k) const;
};

using Sequence = std::vector<RationalFunction>;

/// M[n,k] = [n k]_{q^2} and its inverse [n k]_{q^2} tau_2(n-k).
std::pair<TriangularKernel, TriangularKernel> kernel_qsquare_binomial(const Registry& reg);

/// Carlitz's pair
///   (q^{-n}, a q^n; q)_k / (q, aq; q)_k q^k   and
///   (a, q^{-n}; q)_k / (q, a q^{1+n}; q)_k (1 - a q^{2k})/(1 - a) q^{kn}.
/// Throws PoleError for a = 1; other poles surface when the offending entry is evaluated.
std::pair<TriangularKernel, TriangularKernel> kernel_carlitz(const SparsePoly& a);

/// alpha_n = sum_{k<=n} K(n,k) beta_k.
Sequence kernel_apply(const TriangularKernel& kernel, const Sequence& beta);

/// Solves alpha_n = sum_{k<=n} K(n,k) beta_k for beta by forward substitution.
/// Throws std::domain_error on a zero diagonal entry.
Sequence triangular_solve(const TriangularKernel& kernel, const Sequence& alpha);

/// Exact check that first * second is the identity on indices 0..size-1.
VerificationOutcome verify_inverse_pair(const TriangularKernel& first, const TriangularKernel& second, int size);

/// lambda_n(a) = 2phi1(q^{-n}, -q^{-n}; 0; q, q^2/a) (-a)^n q^{n(n-1)} / (q^2;q^2)_n.
/// `reg` must hold a variable "a"; the a-exponents of the result lie in [0, n].
RationalFunction lambda_rational(const Registry& reg, int n);

/// lambda_n(a) expanded to the profile (registry with q and a).
TruncatedSeries lambda_coeffs(int n, const TruncationProfile& profile);

/// Coefficient of x^n in (ax;q^2)_inf / (x;q)_inf, computed with x as an extra variable.
TruncatedSeries lambda_oracle(int n, const TruncationProfile& profile);

}  // namespace qs
