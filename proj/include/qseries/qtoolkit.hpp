#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qseries/ratfun.hpp"
#include "qseries/series.hpp"

namespace qs {

// ---------------------------------------------------------------- Pochhammer symbols

/// (x; q^base)_n = prod_{j<n} (1 - x q^{base*j}) as a polynomial; n >= 0.
SparsePoly poch_poly(const SparsePoly& x, int n, int base = 1);

/// (x; q^base)_n for any integer n; negative n uses (x;q)_n = 1/(x q^n; q)_{-n}.
RationalFunction poch_rf(const SparsePoly& x, int n, int base = 1);

/// 1/(x; q^base)_n for any integer n. For negative n this is the polynomial
/// (x q^{base*n}; q^base)_{-n}, which vanishes for x = q^base (so 1/(q;q)_{m<0} = 0).
RationalFunction recip_poch_rf(const SparsePoly& x, int n, int base = 1);

/// (x; q^base)_n truncated to the profile; n >= 0.
TruncatedSeries poch_finite(const SparsePoly& x, int n, const TruncationProfile& profile, int base = 1);

/// (x; q^base)_inf truncated to the profile. x must be a monomial with non-negative
/// exponents; factors whose q-exponent exceeds the cap are omitted.
TruncatedSeries poch_infinite(const SparsePoly& x, const TruncationProfile& profile, int base = 1);

/// s / (x; q^base)_n for a monomial x with non-negative exponents, n >= 0.
TruncatedSeries div_poch(const TruncatedSeries& s, const SparsePoly& x, int n, int base = 1);

/// s / (x; q^base)_inf for a monomial x with non-negative exponents.
TruncatedSeries div_poch_infinite(const TruncatedSeries& s, const SparsePoly& x, int base = 1);

/// s * (x; q^base)_inf for a monomial x with non-negative exponents.
TruncatedSeries mul_poch_infinite(const TruncatedSeries& s, const SparsePoly& x, int base = 1);

// ---------------------------------------------------------------- q-binomials and friends

/// Gaussian polynomial [n k] in q^base; 0 when k < 0 or k > n.
SparsePoly q_binomial(const Registry& reg, int n, int k, int base = 1);

/// Row [n 0], ..., [n n] in q^base.
std::vector<SparsePoly> q_binomial_row(const Registry& reg, int n, int base = 1);

/// tau_r(n) = (-1)^n q^{r n(n-1)/2}.
SparsePoly tau_factor(const Registry& reg, int r, int n);

/// h_n(a, b | q^base) = sum_k [n k]_{q^base} a^k b^{n-k}.
SparsePoly rogers_szego(int n, const SparsePoly& a, const SparsePoly& b, int base = 1);

// ---------------------------------------------------------------- basic hypergeometric series

struct PhiSpec {
    std::vector<SparsePoly> upper;
    std::vector<SparsePoly> lower;
    SparsePoly argument;
};

/// The m of the first upper parameter equal to q^{-m} (m >= 0), if any.
std::optional<int> terminating_index(const PhiSpec& spec);

/// Summands n = 0..N of r phi s, including the (tau_1(n))^{s+1-r} factor.
/// N is the terminating index when there is one, otherwise `term_bound` (required).
std::vector<RationalFunction> phi_terms(const PhiSpec& spec, std::optional<int> term_bound = std::nullopt);

/// Exact sum of a terminating (or explicitly bounded) series.
RationalFunction phi_sum(const PhiSpec& spec, std::optional<int> term_bound = std::nullopt);

/// Truncated-series value; the sum is cut at the terminating index or at `term_bound`.
TruncatedSeries phi_series(const PhiSpec& spec, const TruncationProfile& profile,
                           std::optional<int> term_bound = std::nullopt);

// ---------------------------------------------------------------- theta sums

enum class ThetaKind {
    /// 1 + 2 sum_{n>=1} a^n q^{2n^2}
    APowerQTwoNSquared,
    /// 1 + sum_{n>=1} (-1)^n q^{n(n-1)/2} (a^n + b^n)
    PentagonalPair,
};

/// Partial theta sum; `a` and `b` are the parameter values (b unused for APowerQTwoNSquared).
TruncatedSeries partial_theta(ThetaKind kind, const TruncationProfile& profile, const SparsePoly& a,
                              const SparsePoly& b);

/// sum_{|k| <= K} (-1)^k q^{scale k^2} with scale K^2 <= cap.
TruncatedSeries jacobi_triple_series(const TruncationProfile& profile, int scale = 3);

/// Both sides of (-q^{-n};q)_k = (-q;q)_n/(-q;q)_{n-k} (-1)^k q^{-nk} tau_1(k), 0 <= k <= n.
std::pair<RationalFunction, RationalFunction> neg_shift_pochhammer(const Registry& reg, int n, int k);

}  // namespace qs
