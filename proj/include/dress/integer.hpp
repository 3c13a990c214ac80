#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace dress {

/// Arbitrary-precision signed integer used as the scalar of every exact
/// matrix in the library.
///
/// A thin value wrapper over boost::multiprecision::cpp_int. The wrapper
/// exists because cpp_int's templated converting constructors confuse
/// Eigen's scalar-promotion traits; this type only converts from builtin
/// integers.
class Integer {
public:
    using Raw = boost::multiprecision::cpp_int;

    Integer() = default;
    template <std::integral T>
    Integer(T v) : value_(v) {}
    explicit Integer(Raw v) : value_(std::move(v)) {}
    explicit Integer(const std::string& decimal);

    Integer& operator+=(const Integer& o) { value_ += o.value_; return *this; }
    Integer& operator-=(const Integer& o) { value_ -= o.value_; return *this; }
    Integer& operator*=(const Integer& o) { value_ *= o.value_; return *this; }
    /// Truncating division, as for builtin integers.
    Integer& operator/=(const Integer& o) { value_ /= o.value_; return *this; }
    Integer& operator%=(const Integer& o) { value_ %= o.value_; return *this; }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
    friend Integer operator%(Integer a, const Integer& b) { return a %= b; }
    friend Integer operator-(const Integer& a) { return Integer(Raw(-a.value_)); }

    friend bool operator==(const Integer& a, const Integer& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
        int c = a.value_.compare(b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    bool is_zero() const { return value_.is_zero(); }
    int sign() const { return value_.sign(); }
    bool is_unit() const { return value_ == 1 || value_ == -1; }

    const Raw& raw() const { return value_; }
    std::string str() const { return value_.str(); }
    /// Throws std::overflow_error when the value does not fit.
    std::int64_t to_int64() const;

    friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.value_; }

private:
    Raw value_;
};

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Floor division: q = floor(a / b), for b != 0.
Integer floor_div(const Integer& a, const Integer& b);

}  // namespace dress

namespace Eigen {

template <>
struct NumTraits<dress::Integer> : GenericNumTraits<dress::Integer> {
    using Real = dress::Integer;
    using NonInteger = dress::Integer;
    using Literal = dress::Integer;
    using Nested = dress::Integer;
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 8,
        MulCost = 16
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace dress {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

}  // namespace dress
