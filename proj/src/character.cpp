#include "dress/character.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dress/error.hpp"

namespace dress {

namespace {

using i64 = std::int64_t;

i64 mod(i64 a, i64 q) { return ((a % q) + q) % q; }

i64 pow_mod(i64 a, i64 e, i64 q) {
    i64 r = 1;
    a = mod(a, q);
    while (e > 0) {
        if (e & 1) r = r * a % q;
        a = a * a % q;
        e >>= 1;
    }
    return r;
}

i64 inv_mod(i64 a, i64 q) { return pow_mod(a, q - 2, q); }

bool prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

i64 primitive_root(i64 q) {
    std::vector<i64> factors;
    i64 n = q - 1;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            factors.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) factors.push_back(n);
    for (i64 g = 2;; ++g) {
        bool ok = true;
        for (i64 p : factors)
            if (pow_mod(g, (q - 1) / p, q) == 1) ok = false;
        if (ok) return g;
    }
}

// Matrices over F_q stored row-major, r x c.
struct ModMatrix {
    int rows = 0, cols = 0;
    std::vector<i64> a;
    i64& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    i64 operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

ModMatrix zeros(int r, int c) { return {r, c, std::vector<i64>(static_cast<std::size_t>(r) * c, 0)}; }

ModMatrix multiply(const ModMatrix& A, const ModMatrix& B, i64 q) {
    ModMatrix C = zeros(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const i64 x = A(i, k);
            if (x == 0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) = (C(i, j) + x * B(k, j)) % q;
        }
    return C;
}

// Basis of the right kernel of A, as columns.
ModMatrix kernel(ModMatrix A, i64 q) {
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int p = -1;
        for (int i = r; i < A.rows; ++i)
            if (A(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        for (int j = 0; j < A.cols; ++j) std::swap(A(r, j), A(p, j));
        const i64 iv = inv_mod(A(r, c), q);
        for (int j = 0; j < A.cols; ++j) A(r, j) = A(r, j) * iv % q;
        for (int i = 0; i < A.rows; ++i) {
            if (i == r || A(i, c) == 0) continue;
            const i64 f = A(i, c);
            for (int j = 0; j < A.cols; ++j) A(i, j) = mod(A(i, j) - f * A(r, j), q);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<int> free_cols;
    for (int c = 0, k = 0; c < A.cols; ++c) {
        if (k < static_cast<int>(pivot_col.size()) && pivot_col[k] == c) ++k;
        else free_cols.push_back(c);
    }
    ModMatrix K = zeros(A.cols, static_cast<int>(free_cols.size()));
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        K(free_cols[f], static_cast<int>(f)) = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            K(pivot_col[i], static_cast<int>(f)) = mod(-A(static_cast<int>(i), free_cols[f]), q);
    }
    return K;
}

int subgroup_exponent(const FiniteGroup& G, const std::vector<int>& elems) {
    int e = 1;
    for (int x : elems) e = std::lcm(e, G.element_order(x));
    return e;
}

void require_class_function(const CharacterTable& T, const ClassFunction& f) {
    if (static_cast<int>(f.size()) != T.class_count())
        throw Error(ErrorCode::NotAClassFunction, "expected one value per conjugacy class");
    for (const auto& v : f)
        if (v.modulus() != T.modulus) throw Error(ErrorCode::NotAClassFunction, "value has the wrong conductor");
}

}  // namespace

std::vector<int> CharacterTable::degrees() const {
    std::vector<int> d;
    for (const auto& r : rows) d.push_back(static_cast<int>(r[0].to_integer()));
    return d;
}

CharacterTable character_table(const FiniteGroup& G, int modulus, int order_cap) {
    std::vector<int> all(G.order());
    std::iota(all.begin(), all.end(), 0);
    return character_table(G, all, modulus, order_cap);
}

CharacterTable character_table(const FiniteGroup& G, const std::vector<int>& elems, int modulus, int order_cap) {
    const int n = static_cast<int>(elems.size());
    if (n > order_cap) throw Error(ErrorCode::OrderCapExceeded, "character table above the order cap");
    CharacterTable T;
    T.order = n;
    T.elements = elems;
    const int e = subgroup_exponent(G, elems);
    T.modulus = modulus > 0 ? modulus : G.exponent();
    if (T.modulus % e != 0) throw std::invalid_argument("conductor must be a multiple of the exponent");

    T.class_of.assign(G.order(), -1);
    for (int x : elems) {
        if (T.class_of[x] >= 0) continue;
        std::vector<int> cls;
        for (int h : elems) cls.push_back(G.conjugate(h, x));
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        for (int y : cls) T.class_of[y] = T.class_count();
        T.classes.push_back(std::move(cls));
    }
    const int r = T.class_count();
    for (int k = 0; k < r; ++k) T.inverse_class.push_back(T.class_of[G.inv(T.representative(k))]);

    i64 q = e + 1;
    while (!(prime(q) && q * q > 4 * static_cast<i64>(n))) q += e;

    // (M_j)_{ik} = #{x in C_j : x^{-1} z_k in C_i}.
    std::vector<ModMatrix> M(r, zeros(r, r));
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            const int z = T.representative(k);
            for (int x : T.classes[j]) {
                const int i = T.class_of[G.mul(G.inv(x), z)];
                M[j](i, k) = (M[j](i, k) + 1) % q;
            }
        }

    // Split F_q^r into common eigenspaces.
    std::vector<ModMatrix> done, todo;
    ModMatrix I = zeros(r, r);
    for (int i = 0; i < r; ++i) I(i, i) = 1;
    todo.push_back(I);
    while (!todo.empty()) {
        ModMatrix B = std::move(todo.back());
        todo.pop_back();
        if (B.cols == 1) {
            done.push_back(std::move(B));
            continue;
        }
        bool split = false;
        for (int j = 1; j < r && !split; ++j) {
            ModMatrix MB = multiply(M[j], B, q);
            std::vector<ModMatrix> pieces;
            int total = 0;
            for (i64 lam = 0; lam < q && total < B.cols; ++lam) {
                ModMatrix A = MB;
                for (int i = 0; i < r; ++i)
                    for (int c = 0; c < B.cols; ++c) A(i, c) = mod(A(i, c) - lam * B(i, c), q);
                ModMatrix K = kernel(A, q);
                if (K.cols == 0) continue;
                total += K.cols;
                pieces.push_back(multiply(B, K, q));
            }
            if (total != B.cols) throw std::logic_error("class algebra not split over the chosen prime");
            if (pieces.size() > 1) {
                split = true;
                for (auto& p : pieces) todo.push_back(std::move(p));
            }
        }
        if (!split) throw std::logic_error("common eigenspace of dimension > 1");
    }
    if (static_cast<int>(done.size()) != r) throw std::logic_error("wrong number of irreducible characters");

    // Power maps of class representatives.
    std::vector<std::vector<int>> power(r, std::vector<int>(e));
    for (int k = 0; k < r; ++k) {
        int y = 0;
        for (int l = 0; l < e; ++l) {
            power[k][l] = T.class_of[y];
            y = G.mul(y, T.representative(k));
        }
    }
    const i64 z = pow_mod(primitive_root(q), (q - 1) / e, q);
    const i64 inv_e = inv_mod(e, q);

    std::vector<std::pair<std::vector<Cyclotomic>, bool>> rows;
    for (const auto& w0 : done) {
        std::vector<i64> w(r);
        const i64 s = inv_mod(w0(0, 0), q);
        for (int i = 0; i < r; ++i) w[i] = w0(i, 0) * s % q;
        i64 S = 0;
        for (int i = 0; i < r; ++i) S = (S + w[i] * w[T.inverse_class[i]] % q * inv_mod(T.class_size(i), q)) % q;
        const i64 d2 = n % q * inv_mod(S, q) % q;
        i64 d = 0;
        for (i64 c = 1; c * c <= n; ++c)
            if (c * c % q == d2) d = c;
        if (d == 0) throw std::logic_error("no character degree found");
        std::vector<i64> chi(r);
        for (int i = 0; i < r; ++i) chi[i] = d * w[i] % q * inv_mod(T.class_size(i), q) % q;
        std::vector<Cyclotomic> row;
        bool trivial = true;
        for (int k = 0; k < r; ++k) {
            Cyclotomic v(T.modulus, 0);
            for (int t = 0; t < e; ++t) {
                i64 mu = 0;
                for (int l = 0; l < e; ++l) mu = (mu + chi[power[k][l]] * pow_mod(z, mod(-static_cast<i64>(t) * l, e), q)) % q;
                mu = mu * inv_e % q;
                if (mu > d) throw std::logic_error("eigenvalue multiplicity out of range");
                if (mu) v += Cyclotomic::root_of_unity(T.modulus, t * (T.modulus / e)) * mu;
            }
            if (!(v == Cyclotomic(T.modulus, 1))) trivial = false;
            row.push_back(std::move(v));
        }
        rows.emplace_back(std::move(row), trivial);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second;
        const i64 da = a.first[0].to_integer(), db = b.first[0].to_integer();
        if (da != db) return da < db;
        return std::lexicographical_compare(a.first.begin(), a.first.end(), b.first.begin(), b.first.end());
    });
    for (auto& [row, t] : rows) T.rows.push_back(std::move(row));
    if (!check_orthogonality(T)) throw std::logic_error("character table failed orthogonality");
    return T;
}

bool check_orthogonality(const CharacterTable& T) {
    const int r = T.class_count();
    if (static_cast<int>(T.rows.size()) != r) return false;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Cyclotomic s(T.modulus, 0);
            for (int k = 0; k < r; ++k) s += T.rows[i][k] * T.rows[j][k].conj() * T.class_size(k);
            if (!(s == Cyclotomic(T.modulus, i == j ? T.order : 0))) return false;
        }
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
            Cyclotomic s(T.modulus, 0);
            for (int i = 0; i < r; ++i) s += T.rows[i][k] * T.rows[i][l].conj();
            if (!(s == Cyclotomic(T.modulus, k == l ? T.order / T.class_size(k) : 0))) return false;
        }
    return true;
}

Cyclotomic inner_product(const CharacterTable& T, const ClassFunction& a, const ClassFunction& b) {
    require_class_function(T, a);
    require_class_function(T, b);
    Cyclotomic s(T.modulus, 0);
    for (int k = 0; k < T.class_count(); ++k) s += a[k] * b[k].conj() * T.class_size(k);
    return s.divided_by(T.order);
}

std::vector<std::int64_t> decompose(const CharacterTable& T, const ClassFunction& f) {
    std::vector<std::int64_t> out;
    try {
        for (const auto& row : T.rows) {
            const Cyclotomic c = inner_product(T, f, row);
            if (!c.is_integer()) throw std::domain_error("non-integral multiplicity");
            out.push_back(c.to_integer());
        }
    } catch (const std::domain_error& e) {
        throw Error(ErrorCode::NotAClassFunction, std::string("not a virtual character: ") + e.what());
    }
    return out;
}

ClassFunction class_function_from_values(const CharacterTable& T, const std::vector<Cyclotomic>& v) {
    if (v.size() != T.elements.size()) throw Error(ErrorCode::NotAClassFunction, "one value per element expected");
    ClassFunction f(T.class_count());
    std::vector<char> set(T.class_count(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int k = T.class_of[T.elements[i]];
        if (!set[k]) {
            f[k] = v[i];
            set[k] = 1;
        } else if (!(f[k] == v[i])) {
            throw Error(ErrorCode::NotAClassFunction, "values differ within a conjugacy class");
        }
    }
    require_class_function(T, f);
    return f;
}

ClassFunction induce_restrict(const FiniteGroup& G, const CharacterTable& big, const CharacterTable& small,
                              const ClassFunction& chi, CharacterDirection dir) {
    if (big.modulus != small.modulus) throw Error(ErrorCode::NotAClassFunction, "tables use different conductors");
    for (int x : small.elements)
        if (x >= static_cast<int>(big.class_of.size()) || big.class_of[x] < 0)
            throw Error(ErrorCode::NotASubgroup, "not a subgroup of the larger table's group");
    (void)G;
    if (dir == CharacterDirection::Restrict) {
        require_class_function(big, chi);
        ClassFunction r;
        for (int k = 0; k < small.class_count(); ++k) r.push_back(chi[big.class_of[small.representative(k)]]);
        return r;
    }
    require_class_function(small, chi);
    // ind(g) = |big| / (|C| |small|) * sum_{y in C cap small} chi(y)
    ClassFunction r;
    for (int k = 0; k < big.class_count(); ++k) {
        Cyclotomic s(big.modulus, 0);
        for (int y : big.classes[k])
            if (small.class_of[y] >= 0) s += chi[small.class_of[y]];
        r.push_back((s * (big.order / big.class_size(k))).divided_by(small.order));
    }
    return r;
}

bool check_frobenius(const FiniteGroup& G, const CharacterTable& big, const CharacterTable& small,
                     const ClassFunction& chi, const ClassFunction& psi) {
    const auto ind = induce_restrict(G, big, small, chi, CharacterDirection::Induce);
    const auto res = induce_restrict(G, big, small, psi, CharacterDirection::Restrict);
    return inner_product(big, ind, psi) == inner_product(small, chi, res);
}

nlohmann::json character_table_to_json(const CharacterTable& T) {
    nlohmann::json classes = nlohmann::json::array(), rows = nlohmann::json::array();
    for (int k = 0; k < T.class_count(); ++k)
        classes.push_back({{"representative", T.representative(k)}, {"size", T.class_size(k)}});
    for (const auto& row : T.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(v.str());
        rows.push_back(r);
    }
    return {{"order", T.order}, {"conductor", T.modulus}, {"classes", classes}, {"degrees", T.degrees()}, {"rows", rows}};
}

}  // namespace dress
