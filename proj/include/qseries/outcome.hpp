#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qseries/registry.hpp"
#include "qseries/scalar.hpp"

namespace qs {

enum class Status { Pass, Fail, Inconclusive };

std::string_view to_string(Status s) noexcept;

/// First mismatching coefficient of a failed comparison.
struct Witness {
    /// Which instance of a family failed, e.g. "n=3" or "a=1/2"; empty for a single comparison.
    std::string label;
    /// Exponent per registry variable, in registry order.
    std::vector<std::pair<std::string, int>> exponents;
    ExactScalar lhs;
    ExactScalar rhs;
};

Witness make_witness(const VarRegistry& reg, const Exponents& e, ExactScalar lhs, ExactScalar rhs);
std::string format_witness(const Witness& w);

struct VerificationOutcome {
    Status status = Status::Pass;
    std::optional<Witness> witness;  // always set when status == Fail
    std::string note;

    // Filled in by the catalog driver.
    std::string id;
    std::string mode;
    std::map<std::string, int> caps;
    double elapsed_ms = 0.0;

    bool passed() const noexcept { return status == Status::Pass; }

    static VerificationOutcome pass() { return {}; }
    static VerificationOutcome fail(Witness w, std::string note = {});
    static VerificationOutcome inconclusive(std::string note);
};

/// Prefixes the witness label of a non-passing outcome with `label`.
VerificationOutcome with_label(VerificationOutcome o, std::string_view label);

}  // namespace qs
