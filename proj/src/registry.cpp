#include "qseries/registry.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qs {

VarRegistry::VarRegistry(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.empty() || names_.front() != "q")
        throw std::invalid_argument("variable registry must start with \"q\"");
    if (names_.size() > kMaxVars)
        throw std::invalid_argument("variable registry holds at most " + std::to_string(kMaxVars) +
                                    " names");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("empty variable name");
        for (std::size_t j = 0; j < i; ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
    }
}

std::optional<std::size_t> VarRegistry::find(std::string_view name) const noexcept
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::size_t VarRegistry::index(std::string_view name) const
{
    if (auto i = find(name)) return *i;
    throw std::out_of_range("unknown variable: " + std::string(name));
}

Registry make_registry(std::vector<std::string> names)
{
    return std::make_shared<const VarRegistry>(std::move(names));
}

Registry make_registry(std::initializer_list<const char*> names)
{
    return make_registry(std::vector<std::string>(names.begin(), names.end()));
}

bool same_registry(const Registry& a, const Registry& b) noexcept
{
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

bool term_order_less(const Exponents& a, const Exponents& b) noexcept
{
    const auto da = a.total_degree();
    const auto db = b.total_degree();
    if (da != db) return da < db;
    for (std::size_t i = 1; i < kMaxVars; ++i)
        if (a.v[i] != b.v[i]) return a.v[i] < b.v[i];
    return a.v[0] < b.v[0];
}

std::string format_monomial(const VarRegistry& reg, const Exponents& e)
{
    std::ostringstream os;
    bool first = true;
    // q is printed last to mirror the term order.
    auto emit = [&](std::size_t i) {
        if (e[i] == 0) return;
        if (!first) os << '*';
        first = false;
        os << reg.name(i);
        if (e[i] != 1) os << '^' << e[i];
    };
    for (std::size_t i = 1; i < reg.size(); ++i) emit(i);
    emit(0);
    if (first) os << '1';
    return os.str();
}

}  // namespace qs
