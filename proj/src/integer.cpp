#include "dress/integer.hpp"

#include <limits>
#include <stdexcept>

namespace dress {

Integer::Integer(const std::string& decimal) : value_(decimal) {}

std::int64_t Integer::to_int64() const {
    if (value_ > std::numeric_limits<std::int64_t>::max() ||
        value_ < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("Integer does not fit in 64 bits: " + str());
    return value_.convert_to<std::int64_t>();
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer gcd(const Integer& a, const Integer& b) {
    return Integer(Integer::Raw(boost::multiprecision::gcd(a.raw(), b.raw())));
}

Integer lcm(const Integer& a, const Integer& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    return abs(a / gcd(a, b) * b);
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    Integer r = a - q * b;
    if (!r.is_zero() && ((r.sign() < 0) != (b.sign() < 0))) q -= 1;
    return q;
}

}  // namespace dress
