#include "qseries/outcome.hpp"

#include <sstream>

namespace qs {

std::string_view to_string(Status s) noexcept
{
    switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Witness make_witness(const VarRegistry& reg, const Exponents& e, ExactScalar lhs, ExactScalar rhs)
{
    Witness w;
    for (std::size_t i = 0; i < reg.size(); ++i) w.exponents.emplace_back(reg.name(i), e[i]);
    w.lhs = std::move(lhs);
    w.rhs = std::move(rhs);
    return w;
}

std::string format_witness(const Witness& w)
{
    std::ostringstream os;
    if (!w.label.empty()) os << '[' << w.label << "] ";
    bool any = false;
    for (const auto& [name, e] : w.exponents) {
        if (e == 0) continue;
        if (any) os << '*';
        os << name;
        if (e != 1) os << '^' << e;
        any = true;
    }
    if (!any) os << '1';
    os << ": lhs=" << to_string(w.lhs) << " rhs=" << to_string(w.rhs);
    return os.str();
}

VerificationOutcome VerificationOutcome::fail(Witness w, std::string note)
{
    VerificationOutcome o;
    o.status = Status::Fail;
    o.witness = std::move(w);
    o.note = std::move(note);
    return o;
}

VerificationOutcome VerificationOutcome::inconclusive(std::string note)
{
    VerificationOutcome o;
    o.status = Status::Inconclusive;
    o.note = std::move(note);
    return o;
}

VerificationOutcome with_label(VerificationOutcome o, std::string_view label)
{
    if (o.witness) {
        if (o.witness->label.empty())
            o.witness->label = std::string(label);
        else
            o.witness->label = std::string(label) + "," + o.witness->label;
    }
    if (o.status == Status::Inconclusive) o.note = std::string(label) + ": " + o.note;
    return o;
}

}  // namespace qs
