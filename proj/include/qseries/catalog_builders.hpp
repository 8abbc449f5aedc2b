#pragma once

#include <utility>
#include <variant>

#include "qseries/ratfun.hpp"
#include "qseries/series.hpp"

/// Left- and right-hand sides of the series identities in the catalog.
///
/// Parameters are passed as monomials (a formal variable, a power of one, or a
/// rational constant), so the same builder serves symbolic and sampled runs.
/// `scale` multiplies every term bound; scale 1 is already sufficient for the profile.
namespace qs::builders {

using SeriesSides = std::pair<TruncatedSeries, TruncatedSeries>;

/// The shift in MASTER: an integer s, or a formal variable y standing for q^s.
using ShiftParam = std::variant<int, SparsePoly>;

/// Rational function expanded on `p`, with extra q room for Laurent numerators.
TruncatedSeries expand(const RationalFunction& f, const TruncationProfile& p);

/// Number of terms of a sum whose n-th term has total degree n in the monomials a, b.
int degree_bound(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b);

SeriesSides andrews(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale = 1);

SeriesSides gen1(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, const SparsePoly& c,
                 int scale = 1);
/// sum_n h_n(a,b|q^2) / (q, -cq; q)_n
TruncatedSeries gen1_rhs_sum(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b,
                             const SparsePoly& c, int scale = 1);

SeriesSides gen2(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, const SparsePoly& c,
                 int scale = 1);
/// sum_n (h_n(a,bq|q^2) + h_n(aq,b|q^2)) / ((q, -cq; q)_n (1 + q^n))
TruncatedSeries gen2_rhs_sum(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b,
                             const SparsePoly& c, int scale = 1);

/// a = alpha^2, b = beta^2.
SeriesSides gen3(const TruncationProfile& p, const SparsePoly& alpha, const SparsePoly& beta, const SparsePoly& c,
                 int scale = 1);
/// ((alpha+beta)(1-alpha beta) LHS, alpha(1-b) L1 + beta(1-a) L2) with L1, L2 the
/// GEN-I-type sums at (a, bq) and (aq, b) over (ab q^2; q^2)_n, both written in product form.
SeriesSides gen3_split(const TruncationProfile& p, const SparsePoly& alpha, const SparsePoly& beta,
                       const SparsePoly& c, int scale = 1);

SeriesSides master(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, const SparsePoly& c,
                   const ShiftParam& s, int scale = 1);
/// The double sum on the right of MASTER without the product prefactor.
TruncatedSeries master_rhs_sum(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b,
                               const SparsePoly& c, const ShiftParam& s, int scale = 1);

SeriesSides rs_gf(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale = 1);
SeriesSides c_qinv(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale = 1);
SeriesSides s_eval(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale = 1);
/// (-q;q)_inf against 1/(q;q^2)_inf.
SeriesSides euler_odd(const TruncationProfile& p);
/// Cross-multiplied: (alpha+beta) LHS against the numerator over (q, ab; q^2)_inf.
SeriesSides andrews_pp(const TruncationProfile& p, const SparsePoly& alpha, const SparsePoly& beta, int scale = 1);
SeriesSides aw_theta(const TruncationProfile& p, const SparsePoly& a, const SparsePoly& b, int scale = 1);
SeriesSides war_theta(const TruncationProfile& p, const SparsePoly& a, int scale = 1);
SeriesSides jacobi_triple(const TruncationProfile& p);

}  // namespace qs::builders
