#include "qseries/scalar.hpp"

#include <stdexcept>

namespace qs {

std::string to_string(const ExactScalar& s)
{
    return s.get_str();
}

ExactScalar parse_scalar(std::string_view text)
{
    ExactScalar r;
    if (text.empty() || r.set_str(std::string(text), 10) != 0)
        throw std::invalid_argument("not a rational number: " + std::string(text));
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    r.canonicalize();
    return r;
}

}  // namespace qs
