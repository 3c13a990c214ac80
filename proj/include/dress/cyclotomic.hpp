#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dress {

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(int m);
int euler_phi(int m);

/// An element of Z[x]/Phi_m(x), i.e. of Z[zeta_m], in the power basis
/// 1, x, ..., x^{phi(m)-1}. Arithmetic is exact in 64-bit coefficients.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(int modulus, std::int64_t value);

    /// zeta_m^k.
    static Cyclotomic root_of_unity(int modulus, int k);

    int modulus() const { return modulus_; }
    const std::vector<std::int64_t>& coefficients() const { return c_; }

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(std::int64_t k);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, std::int64_t k) { return a *= k; }
    Cyclotomic operator-() const { return *this * -1; }

    /// Exact division by an integer; throws std::domain_error if inexact.
    Cyclotomic divided_by(std::int64_t k) const;

    /// Complex conjugation, x -> x^{m-1}.
    Cyclotomic conj() const;

    bool is_zero() const;
    bool is_integer() const;
    /// Throws std::domain_error unless is_integer().
    std::int64_t to_integer() const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.modulus_ == b.modulus_ && a.c_ == b.c_; }
    /// Lexicographic on coefficients; used for deterministic sorting only.
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) { return a.c_ < b.c_; }

    /// "2", "-1+z^2", ... with z = zeta_m.
    std::string str() const;

private:
    static Cyclotomic from_power_sum(int modulus, const std::vector<std::int64_t>& dense);
    void check(const Cyclotomic& o) const;

    int modulus_ = 1;
    std::vector<std::int64_t> c_{0};
};

}  // namespace dress
