#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qs {

/// Upper bound on the number of variables a single registry may hold.
inline constexpr std::size_t kMaxVars = 8;

/// Ordered list of variable names. Index 0 is always "q".
class VarRegistry {
public:
    explicit VarRegistry(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> find(std::string_view name) const noexcept;
    /// Throws std::out_of_range for unknown names.
    std::size_t index(std::string_view name) const;
    bool contains(std::string_view name) const noexcept { return find(name).has_value(); }

    friend bool operator==(const VarRegistry& a, const VarRegistry& b) noexcept
    {
        return a.names_ == b.names_;
    }

private:
    std::vector<std::string> names_;
};

using Registry = std::shared_ptr<const VarRegistry>;

Registry make_registry(std::vector<std::string> names);
Registry make_registry(std::initializer_list<const char*> names);

bool same_registry(const Registry& a, const Registry& b) noexcept;

/// Exponent vector; entries past the registry size stay zero.
struct Exponents {
    std::array<std::int32_t, kMaxVars> v{};

    std::int32_t& operator[](std::size_t i) { return v[i]; }
    std::int32_t operator[](std::size_t i) const { return v[i]; }

    std::int64_t total_degree() const noexcept
    {
        std::int64_t d = 0;
        for (auto e : v) d += e;
        return d;
    }
    bool is_zero() const noexcept
    {
        for (auto e : v)
            if (e != 0) return false;
        return true;
    }

    friend Exponents operator+(Exponents a, const Exponents& b) noexcept
    {
        for (std::size_t i = 0; i < kMaxVars; ++i) a.v[i] += b.v[i];
        return a;
    }
    friend Exponents operator-(Exponents a, const Exponents& b) noexcept
    {
        for (std::size_t i = 0; i < kMaxVars; ++i) a.v[i] -= b.v[i];
        return a;
    }
    friend Exponents operator*(std::int32_t k, Exponents a) noexcept
    {
        for (auto& e : a.v) e *= k;
        return a;
    }
    friend bool operator==(const Exponents&, const Exponents&) = default;

    static Exponents unit(std::size_t var, std::int32_t power = 1) noexcept
    {
        Exponents e;
        e.v[var] = power;
        return e;
    }
};

/// Canonical term order: total degree first, then lexicographic over the
/// non-q variables in registry order, with q compared last.
bool term_order_less(const Exponents& a, const Exponents& b) noexcept;

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : e.v) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Renders e.g. "a^2*q^3" ("1" for the zero vector).
std::string format_monomial(const VarRegistry& reg, const Exponents& e);

}  // namespace qs
