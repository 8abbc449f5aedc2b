#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qseries/ratfun.hpp"

namespace qs {

/// Parameters of T_{r,n}(s) = sum_{k=0}^n (q^{-2n};q^2)_k / (q, q^{1+r-n}; q)_k q^{(2-s)k}.
struct TSumSpec {
    int r = 0;
    int n = 0;
    /// Integer s; empty means s stays formal through y = q^s.
    std::optional<int> s;
};

/// Exact T_{r,n}(s). The symbolic form needs a registry holding "y" and
/// carries y^{-k} as Laurent monomials. Throws PoleError if a (q^{1+r-n};q)_k factor vanishes.
RationalFunction t_sum(const Registry& reg, const TSumSpec& spec);

/// (-q^{1+r};q)_n / (q^{1+r-n};q)_n (-1)^n q^{-n^2}, the value at s = 1.
RationalFunction t_closed_s1(const Registry& reg, int r, int n);

/// (q^n + q^r)/(1 + q^{r+n}) (-q^{1+r};q)_n / (q^{1+r-n};q)_n (-1)^n q^{-n^2+n}, the value at s = 0.
RationalFunction t_closed_s0(const Registry& reg, int r, int n);

/// Coefficients of T_{r,n}, T_{r,n+1}, T_{r,n+2} in the three-term recurrence,
/// as Laurent polynomials in q and y = q^s.
std::array<SparsePoly, 3> t_recurrence_coefficients(const Registry& reg, int r, int n);

/// Adds `delta` to one term (by position in term order, wrapping) of one recurrence coefficient.
struct RecurrenceMutation {
    int which = 1;
    int term = 0;
    int delta = 1;
};

/// The recurrence as an identity in (q, y). Requires r >= n + 2 (std::invalid_argument otherwise).
VerificationOutcome verify_t_recurrence(int r, int n, std::optional<RecurrenceMutation> mutation = std::nullopt);

/// t_sum at s = 1 and s = 0 against the closed forms for 0 <= n <= n_max and
/// n + r_lo <= r <= n + r_hi; requires r_lo >= 1.
VerificationOutcome verify_chu_vandermonde_evals(int n_max, int r_lo, int r_hi);

/// (-a)^M q^{M^2} sum_k (q^{-2M};q^2)_k/(q;q)_k (q/a)^k and sum_k [M k]_q (a;q)_k q^{k(k+1)/2}.
/// `reg` must hold "a".
std::pair<RationalFunction, RationalFunction> finite_q_sides(const Registry& reg, int m);

VerificationOutcome verify_finite_q_identity(int m_max);

}  // namespace qs
