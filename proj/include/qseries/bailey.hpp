#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/inversion.hpp"
#include "qseries/ratfun.hpp"
#include "qseries/series.hpp"

namespace qs {

/// (alpha_n, beta_n) with respect to `a`: beta_n = sum_k alpha_k / ((q;q)_{n-k} (aq;q)_{n+k}).
struct BaileyPair {
    std::string name;
    std::function<RationalFunction(int)> alpha;
    std::function<RationalFunction(int)> beta;
    SparsePoly a;
};

/// A rho slot of the Bailey lemma: a finite monomial value or the limit rho -> infinity.
/// In the limit (rho;q)_k (x/rho)^k becomes (-x)^k q^{k(k-1)/2} and (x/rho;q)_m becomes 1.
class RhoSpec {
public:
    static RhoSpec finite(SparsePoly value);
    static RhoSpec infinite() { return RhoSpec(); }

    bool is_infinite() const noexcept { return !value_; }
    const SparsePoly& value() const { return *value_; }
    std::string to_string() const;

private:
    std::optional<SparsePoly> value_;
};

/// gamma(n) = sum_k [n k]_q q^{k^2} / (-q;q)_k.
RationalFunction gamma_sum(const Registry& reg, int n);

/// (2(-1)^n q^{n^2}, 1/(q^2;q^2)_n + 1/(q;q)_n^2), a = 1.
BaileyPair pair_3666(const Registry& reg);

/// (2(-1)^n q^{2n^2}, 1/(q;q)_n^2 + gamma(n)/(q;q)_n), a = 1.
BaileyPair pair_great(const Registry& reg);

/// beta_0 .. beta_{size-1} from alpha_0 .. alpha_{size-1}.
Sequence beta_from_alpha(const Sequence& alpha, const SparsePoly& a);

/// PASS iff the defining relation holds for 0 <= n <= n_max; the witness label names n.
VerificationOutcome verify_bailey_pair(const BaileyPair& pair, int n_max);

/// Both sides of the Bailey lemma at index n:
///   1/(aq/rho1, aq/rho2;q)_n sum_k (rho1,rho2;q)_k (aq/rho1rho2;q)_{n-k}/(q;q)_{n-k} (aq/rho1rho2)^k beta_k
///   sum_k (rho1,rho2;q)_k / ((q;q)_{n-k} (aq;q)_{n+k} (aq/rho1,aq/rho2;q)_k) (aq/rho1rho2)^k alpha_k
std::pair<RationalFunction, RationalFunction> bailey_lemma_sides(const BaileyPair& pair, const RhoSpec& rho1,
                                                                 const RhoSpec& rho2, int n);

/// The pair (a^n q^{n^2} alpha_n, sum_k a^k q^{k^2}/(q;q)_{n-k} beta_k) given by both rho slots at infinity.
BaileyPair bailey_chain_step(const BaileyPair& pair);

// ---------------------------------------------------------------- concrete consequences

/// Which built-in pair feeds the lemma: the gamma pair or the 3666 pair.
enum class ConcreteFamily { Gamma, Pair3666 };

/// The lemma for a = 1 written out for the chosen pair, with general rho slots.
std::pair<RationalFunction, RationalFunction> concrete_sides(const Registry& reg, ConcreteFamily family,
                                                             const RhoSpec& rho1, const RhoSpec& rho2, int n);

/// The rho1 = 1/a, rho2 = q specialization; `reg` must hold "a" (or pass a scalar value for a). n >= 1.
std::pair<RationalFunction, RationalFunction> concrete_i_sides(const Registry& reg, ConcreteFamily family,
                                                               const SparsePoly& a, int n);

/// Both rho slots at infinity:
///   Gamma:    sum_k q^{k^2} gamma(k)/((q;q)_k (q;q)_{n-k}) = sum_{|k|<=n} (-1)^k q^{3k^2}/((q;q)_{n-k}(q;q)_{n+k})
///   Pair3666: sum_k q^{k^2}/((q^2;q^2)_k (q;q)_{n-k})      = sum_{|k|<=n} (-1)^k q^{2k^2}/((q;q)_{n-k}(q;q)_{n+k})
std::pair<RationalFunction, RationalFunction> concrete_ii_sides(const Registry& reg, ConcreteFamily family, int n);

/// n -> infinity in the gamma (i) identity, a formal:
///   (1-a) sum_k (1/a;q)_k a^k gamma(k) = 2 sum_k (1/a;q)_k/(aq;q)_k (-a)^k (1-q^k) q^{2k^2}.
/// `profile` holds q and a.
std::pair<TruncatedSeries, TruncatedSeries> concrete_i_limit_sides(const TruncationProfile& profile);

/// sum_k q^{k^2} gamma(k)/(q;q)_k and (q^3;q^6)_inf / (q, q^2; q^3)_inf.
std::pair<TruncatedSeries, TruncatedSeries> gamma_theta_sides(const TruncationProfile& profile);

/// sum_k q^{k^2}/((q;q)_k^2 (q;q)_{n-k}) and 1/(q;q)_n^2.
std::pair<RationalFunction, RationalFunction> closing_sum_sides(const Registry& reg, int n);

/// q^{n(n-1)/2} (1+q^n) sum_k (q^{-n}, q^n; q)_k q^k lambda_k(-q) and 2 q^{2n^2}.
std::pair<RationalFunction, RationalFunction> success_sides(const Registry& reg, int n);

VerificationOutcome verify_success_identity(int n_max);

/// Runs `sides(n)` for n in [n_min, n_max]; the witness label names n.
VerificationOutcome verify_range(int n_min, int n_max,
                                 const std::function<std::pair<RationalFunction, RationalFunction>(int)>& sides);

struct NamedOutcome {
    std::string name;
    VerificationOutcome outcome;
};

/// Every consequence above at its default depth (n <= 10, series to the given q cap).
std::vector<NamedOutcome> verify_proposition_suite(int q_cap = 60);

}  // namespace qs
