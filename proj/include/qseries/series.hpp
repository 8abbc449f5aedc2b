#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>

#include "qseries/outcome.hpp"
#include "qseries/sparse_poly.hpp"

namespace qs {

/// Per-variable exponent window [floor, cap].
struct TruncationProfile {
    Registry reg;
    std::array<int, kMaxVars> floor{};
    std::array<int, kMaxVars> cap{};

    TruncationProfile() = default;
    /// Caps not listed default to 0; floors default to 0.
    TruncationProfile(Registry r, const std::map<std::string, int>& caps);

    int cap_of(std::string_view var) const { return cap[reg->index(var)]; }
    int floor_of(std::string_view var) const { return floor[reg->index(var)]; }
    TruncationProfile& set_cap(std::string_view var, int c);
    TruncationProfile& set_floor(std::string_view var, int f);
    bool contains(const Exponents& e) const noexcept;
    std::int64_t volume() const noexcept;
    std::map<std::string, int> caps() const;
};

/// Marks a variable whose coefficients are known for every exponent
/// (the stored data is the complete content in that variable).
inline constexpr int kComplete = std::numeric_limits<int>::max();

struct SeriesError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Truncated multivariate Laurent series.
///
/// Stores the coefficients inside `profile()` together with the sub-box on
/// which they are guaranteed to equal those of the untruncated object:
/// a coefficient at `e` is exact iff `e[v] <= exact_cap(v)` for every v.
/// Floors are true lower bounds of the support.
class TruncatedSeries {
public:
    TruncatedSeries() = default;

    /// Terms beyond the profile caps are dropped; the dropped variables lose completeness.
    static TruncatedSeries from_poly(const SparsePoly& p, const TruncationProfile& profile);
    static TruncatedSeries zero(const TruncationProfile& profile);
    static TruncatedSeries constant(const TruncationProfile& profile, const ExactScalar& c);
    static TruncatedSeries variable(const TruncationProfile& profile, std::string_view name);

    const SparsePoly& poly() const noexcept { return poly_; }
    const TruncationProfile& profile() const noexcept { return profile_; }
    const Registry& registry() const noexcept { return profile_.reg; }
    int exact_cap(std::size_t var) const noexcept { return exact_cap_[var]; }
    bool is_complete(std::size_t var) const noexcept { return exact_cap_[var] == kComplete; }
    /// Exact region as a profile (complete variables report their storage cap).
    TruncationProfile exact_region() const;
    bool in_exact_region(const Exponents& e) const noexcept;

    /// Throws SeriesError when `e` lies outside the exact region.
    ExactScalar coeff(const Exponents& e) const;
    ExactScalar coeff(const std::map<std::string, int>& e) const;

    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries scaled(const ExactScalar& c) const;
    TruncatedSeries times_monomial(const Exponents& m, const ExactScalar& c = 1) const;

    /// *this * (1 + c x^m); m may carry negative exponents (Laurent shift rule applies).
    TruncatedSeries mul_binomial(const ExactScalar& c, const Exponents& m) const;
    /// *this / (1 + c x^m); m must be non-negative and non-zero.
    TruncatedSeries div_binomial(const ExactScalar& c, const Exponents& m) const;
    /// Multiplicative inverse; requires a non-zero constant term and no negative exponents.
    TruncatedSeries inverse() const;

    /// Replace `var` by an exact value (scalar, monomial or polynomial).
    TruncatedSeries substitute(std::string_view var, const SparsePoly& value) const;
    TruncatedSeries substitute(std::string_view var, const ExactScalar& value) const;

    /// Coefficient of var^k, as a series with that variable's exponent set to 0.
    TruncatedSeries coefficient_of(std::string_view var, int k) const;

    /// Lower the caps to `p` (floors are kept as the min of both).
    TruncatedSeries truncate(const TruncationProfile& p) const;
    /// Declare that var has unknown content beyond its storage cap.
    TruncatedSeries mark_truncated(std::size_t var) const;
    /// Shrink the exact region of `var` to at most `c`.
    TruncatedSeries restrict_exact(std::size_t var, int c) const;
    /// Same series over another registry holding every variable with content.
    TruncatedSeries retarget(const TruncationProfile& target) const;

    std::string to_string() const { return poly_.to_string(); }

private:
    static TruncatedSeries make(SparsePoly p, TruncationProfile prof, std::array<int, kMaxVars> exact);
    void check_compatible(const TruncatedSeries& other) const;

    SparsePoly poly_;
    TruncationProfile profile_;
    std::array<int, kMaxVars> exact_cap_{};
};

/// PASS iff every coefficient agrees on the intersection of the exact regions.
/// FAIL carries the first mismatch in term order; an empty intersection is INCONCLUSIVE.
VerificationOutcome series_equal(const TruncatedSeries& lhs, const TruncatedSeries& rhs);

}  // namespace qs
