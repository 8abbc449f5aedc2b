#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "qseries/series.hpp"
#include "qseries/sparse_poly.hpp"

namespace qs {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Exact quotient of Laurent polynomials.
///
/// The numerator is kept expanded; the denominator is a multiset of
/// normalized factors (no monomial content, leading coefficient 1). Sums and
/// comparisons cross-multiply by a common multiple of the factor multisets, so
/// no polynomial gcd is ever needed.
class RationalFunction {
public:
    using Factors = std::map<SparsePoly, int>;

    RationalFunction() = default;
    explicit RationalFunction(Registry reg);
    RationalFunction(SparsePoly num);  // NOLINT(google-explicit-constructor)
    /// num / den, den taken as a single factor. Throws PoleError if den is zero.
    RationalFunction(SparsePoly num, const SparsePoly& den);

    static RationalFunction constant(Registry reg, const ExactScalar& c);
    static RationalFunction variable(Registry reg, std::string_view name, int power = 1);

    const Registry& registry() const noexcept { return num_.registry(); }
    const SparsePoly& numerator() const noexcept { return num_; }
    const Factors& denominator_factors() const noexcept { return den_; }
    SparsePoly denominator() const;
    bool is_zero() const noexcept { return num_.is_zero(); }
    /// True when the denominator is trivial (call reduced() first to cancel).
    bool is_polynomial() const noexcept { return den_.empty(); }

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& rhs);
    RationalFunction& operator-=(const RationalFunction& rhs);
    RationalFunction& operator*=(const RationalFunction& rhs);
    RationalFunction& operator/=(const RationalFunction& rhs);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

    RationalFunction inverse() const;
    RationalFunction pow(int k) const;

    /// Cancels denominator factors that divide the numerator exactly.
    RationalFunction reduced() const;

    /// Replace `var` by a polynomial value. A denominator factor that becomes zero raises PoleError.
    RationalFunction substitute(std::string_view var, const SparsePoly& value) const;
    RationalFunction substitute(std::string_view var, const ExactScalar& value) const;
    RationalFunction retarget(const Registry& target) const;

    /// Expansion as a truncated series; every denominator factor needs a non-zero constant term.
    TruncatedSeries to_series(const TruncationProfile& profile) const;

    std::string to_string() const;

    /// Cross-multiplication equality.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);

private:
    void divide_by(const SparsePoly& f, int mult = 1);

    SparsePoly num_;
    Factors den_;
};

/// Numerators of a and b over a common multiple of their denominators.
std::pair<SparsePoly, SparsePoly> cross_numerators(const RationalFunction& a, const RationalFunction& b);

/// PASS iff a == b; FAIL carries the first term where the cross-multiplied numerators differ.
VerificationOutcome rational_equal(const RationalFunction& lhs, const RationalFunction& rhs);

}  // namespace qs
