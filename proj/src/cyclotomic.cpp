#include "dress/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace dress {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact quotient of monic-divisor polynomial division.
Poly divide_exact(Poly a, const Poly& b) {
    const std::size_t db = b.size() - 1;
    Poly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const std::int64_t c = a[i];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

}  // namespace

const Poly& cyclotomic_polynomial(int m) {
    static std::recursive_mutex mu;
    static std::map<int, Poly> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    if (m < 1) throw std::invalid_argument("cyclotomic modulus must be positive");
    // x^m - 1 divided by Phi_d for every proper divisor d.
    Poly p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) {
            p = divide_exact(p, cyclotomic_polynomial(d));
        }
    return cache.emplace(m, std::move(p)).first->second;
}

int euler_phi(int m) {
    int r = m;
    for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            r -= r / p;
        }
    if (m > 1) r -= r / m;
    return r;
}

Cyclotomic::Cyclotomic(int modulus, std::int64_t value) : modulus_(modulus), c_(euler_phi(modulus), 0) {
    c_[0] = value;
}

Cyclotomic Cyclotomic::from_power_sum(int modulus, const std::vector<std::int64_t>& dense) {
    // dense has length m (exponents mod m); reduce x^k for k >= phi(m).
    const Poly& f = cyclotomic_polynomial(modulus);
    const std::size_t n = f.size() - 1;
    Poly a = dense;
    for (std::size_t i = a.size(); i-- > n;) {
        const std::int64_t c = a[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= n; ++j) a[i - n + j] -= c * f[j];
    }
    Cyclotomic r;
    r.modulus_ = modulus;
    r.c_.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
    return r;
}

Cyclotomic Cyclotomic::root_of_unity(int modulus, int k) {
    std::vector<std::int64_t> d(modulus, 0);
    d[((k % modulus) + modulus) % modulus] = 1;
    return from_power_sum(modulus, d);
}

void Cyclotomic::check(const Cyclotomic& o) const {
    if (o.modulus_ != modulus_) throw std::invalid_argument("cyclotomic moduli differ");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(std::int64_t k) {
    for (auto& x : c_) x *= k;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    check(o);
    std::vector<std::int64_t> d(modulus_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) d[(i + j) % modulus_] += c_[i] * o.c_[j];
    }
    return *this = from_power_sum(modulus_, d);
}

Cyclotomic Cyclotomic::divided_by(std::int64_t k) const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) {
        if (x % k != 0) throw std::domain_error("inexact cyclotomic division");
        x /= k;
    }
    return r;
}

Cyclotomic Cyclotomic::conj() const {
    std::vector<std::int64_t> d(modulus_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) d[(modulus_ - static_cast<int>(i)) % modulus_] += c_[i];
    return from_power_sum(modulus_, d);
}

bool Cyclotomic::is_zero() const {
    for (auto x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_integer() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::int64_t Cyclotomic::to_integer() const {
    if (!is_integer()) throw std::domain_error("cyclotomic number is not an integer");
    return c_[0];
}

std::string Cyclotomic::str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const std::int64_t x = c_[i];
        if (x == 0) continue;
        if (!s.empty()) s += x > 0 ? "+" : "-";
        else if (x < 0) s += "-";
        const std::int64_t a = x < 0 ? -x : x;
        if (i == 0) s += std::to_string(a);
        else {
            if (a != 1) s += std::to_string(a) + "*";
            s += i == 1 ? "z" : "z^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace dress
