#pragma once

#include <algorithm>
#include <concepts>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/error.hpp"
#include "dress/integer.hpp"

namespace dress {

namespace detail {

template <std::integral T>
T floor_div(T a, T b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
using dress::floor_div;

template <std::integral T>
T magnitude(T a) { return a < 0 ? -a : a; }
inline Integer magnitude(const Integer& a) { return abs(a); }

template <typename Scalar>
bool is_zero(const Scalar& a) { return a == Scalar(0); }

}  // namespace detail

/// A finitely generated abelian group Z^free_rank + sum Z/d_i with
/// d_1 | d_2 | ... and every d_i >= 2.
struct FgAbelianGroup {
    int free_rank = 0;
    std::vector<Integer> invariant_factors;

    static FgAbelianGroup free(int rank) { return {rank, {}}; }

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_finite() const { return free_rank == 0; }
    /// lcm of the invariant factors; 0 when the group is infinite, 1 when trivial.
    Integer exponent() const;
    /// Order of the torsion subgroup.
    Integer torsion_order() const;
    /// The p-primary part, i.e. Z_(p) tensor this group.
    FgAbelianGroup localized_at(int p) const;
    /// Q tensor this group, as a free group of the same rank.
    FgAbelianGroup rationalized() const { return free(free_rank); }

    std::string str() const;
    friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;
};

/// Builds the group from a list of diagonal entries of a presentation
/// (zeros are free summands, units vanish). Entries need not form a
/// divisibility chain; the result is normalized.
FgAbelianGroup abelian_group_from_diagonal(const std::vector<Integer>& diagonal, int generators);

/// A JSON number when the value fits in 64 bits, else a decimal string.
nlohmann::json integer_to_json(const Integer& a);

void to_json(nlohmann::json& j, const FgAbelianGroup& g);
void from_json(const nlohmann::json& j, FgAbelianGroup& g);

// ---------------------------------------------------------------------------
// Dense Smith normal form, templated on the scalar.

template <typename Scalar>
struct SmithDecomposition {
    Matrix<Scalar> U;  ///< unimodular, rows x rows
    Matrix<Scalar> D;  ///< diagonal with d_1 | d_2 | ..., nonzero entries positive
    Matrix<Scalar> V;  ///< unimodular, cols x cols
    int rank = 0;

    std::vector<Scalar> diagonal() const {
        std::vector<Scalar> d;
        for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

namespace detail {

template <typename Scalar, bool Track>
struct SmithWorker {
    Matrix<Scalar> D, U, V;

    void swap_rows(Eigen::Index a, Eigen::Index b) {
        if (a == b) return;
        D.row(a).swap(D.row(b));
        if constexpr (Track) U.row(a).swap(U.row(b));
    }
    void swap_cols(Eigen::Index a, Eigen::Index b) {
        if (a == b) return;
        D.col(a).swap(D.col(b));
        if constexpr (Track) V.col(a).swap(V.col(b));
    }
    // row_target -= q * row_source
    void row_axpy(Eigen::Index target, Eigen::Index source, const Scalar& q) {
        if (is_zero(q)) return;
        D.row(target) -= q * D.row(source);
        if constexpr (Track) U.row(target) -= q * U.row(source);
    }
    void col_axpy(Eigen::Index target, Eigen::Index source, const Scalar& q) {
        if (is_zero(q)) return;
        D.col(target) -= q * D.col(source);
        if constexpr (Track) V.col(target) -= q * V.col(source);
    }

    // Smallest nonzero magnitude in the trailing block, ties broken row-major.
    bool find_pivot(Eigen::Index t, Eigen::Index& pi, Eigen::Index& pj) const {
        bool found = false;
        Scalar best{};
        for (Eigen::Index i = t; i < D.rows(); ++i)
            for (Eigen::Index j = t; j < D.cols(); ++j) {
                if (is_zero(D(i, j))) continue;
                Scalar m = magnitude(D(i, j));
                if (!found || m < best) {
                    best = m;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        return found;
    }

    int run() {
        const Eigen::Index m = D.rows(), n = D.cols();
        Eigen::Index t = 0;
        for (; t < std::min(m, n); ++t) {
            Eigen::Index pi = t, pj = t;
            if (!find_pivot(t, pi, pj)) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            for (;;) {
                bool clean = true;
                for (Eigen::Index i = t + 1; i < m; ++i) {
                    if (is_zero(D(i, t))) continue;
                    row_axpy(i, t, floor_div(D(i, t), D(t, t)));
                    if (!is_zero(D(i, t))) clean = false;
                }
                for (Eigen::Index j = t + 1; j < n; ++j) {
                    if (is_zero(D(t, j))) continue;
                    col_axpy(j, t, floor_div(D(t, j), D(t, t)));
                    if (!is_zero(D(t, j))) clean = false;
                }
                if (!clean) {
                    // A remainder survived: move the smallest entry of row/column t to the pivot.
                    Eigen::Index bi = t, bj = t;
                    Scalar best = magnitude(D(t, t));
                    for (Eigen::Index i = t + 1; i < m; ++i)
                        if (!is_zero(D(i, t)) && magnitude(D(i, t)) < best) {
                            best = magnitude(D(i, t));
                            bi = i;
                            bj = t;
                        }
                    for (Eigen::Index j = t + 1; j < n; ++j)
                        if (!is_zero(D(t, j)) && magnitude(D(t, j)) < best) {
                            best = magnitude(D(t, j));
                            bi = t;
                            bj = j;
                        }
                    swap_rows(t, bi);
                    swap_cols(t, bj);
                    continue;
                }
                // Enforce divisibility of the trailing block by the pivot.
                Eigen::Index bad = -1;
                for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
                    for (Eigen::Index j = t + 1; j < n; ++j)
                        if (!is_zero(D(i, j) % D(t, t))) {
                            bad = i;
                            break;
                        }
                if (bad < 0) break;
                row_axpy(t, bad, Scalar(-1));
            }
            if (D(t, t) < Scalar(0)) {
                D.row(t) *= Scalar(-1);
                if constexpr (Track) U.row(t) *= Scalar(-1);
            }
        }
        return static_cast<int>(t);
    }
};

}  // namespace detail

/// U * A * V = D with U, V unimodular and D in Smith normal form.
/// Pivots are the smallest nonzero magnitude in the remaining block,
/// ties broken by row-major position.
template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& A) {
    using Scalar = typename Derived::Scalar;
    detail::SmithWorker<Scalar, true> w;
    w.D = A;
    w.U = Matrix<Scalar>::Identity(A.rows(), A.rows());
    w.V = Matrix<Scalar>::Identity(A.cols(), A.cols());
    SmithDecomposition<Scalar> out;
    out.rank = w.run();
    out.U = std::move(w.U);
    out.D = std::move(w.D);
    out.V = std::move(w.V);
    return out;
}

/// Diagonal of the Smith form only (no transforms); trailing zeros included
/// up to min(rows, cols).
template <typename Derived>
std::vector<typename Derived::Scalar> smith_diagonal(const Eigen::MatrixBase<Derived>& A) {
    using Scalar = typename Derived::Scalar;
    detail::SmithWorker<Scalar, false> w;
    w.D = A;
    w.run();
    std::vector<Scalar> d;
    for (Eigen::Index i = 0; i < std::min(A.rows(), A.cols()); ++i) d.push_back(w.D(i, i));
    return d;
}

/// Determinant by fraction-free (Bareiss) elimination; exact for integers.
Integer determinant(const IntMatrix& A);

// ---------------------------------------------------------------------------
// Sparse integer matrices (column-major lists) for the large boundary maps.

class SparseIntMatrix {
public:
    using Entry = std::pair<int, Integer>;  // (row, value)
    using Column = std::vector<Entry>;      // sorted by row, no zeros

    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols) : rows_(rows), columns_(cols) {}

    static SparseIntMatrix from_dense(const IntMatrix& A);

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(columns_.size()); }
    std::size_t nonzeros() const;

    const Column& column(int j) const { return columns_[j]; }
    /// Adds `value` to entry (i, j). Columns are re-sorted lazily by finalize().
    void add(int i, int j, const Integer& value);
    /// Sorts columns, merges duplicate rows and drops zeros.
    void finalize();

    IntMatrix to_dense() const;
    SparseIntMatrix operator*(const SparseIntMatrix& B) const;
    bool is_zero() const;

private:
    int rows_ = 0;
    std::vector<Column> columns_;
};

/// Smith diagonal of a sparse matrix: unit pivots are eliminated sparsely,
/// the residual block is finished with dense Smith reduction. Returns the
/// nonzero invariant factors (units included) in divisibility order.
std::vector<Integer> sparse_invariant_factors(const SparseIntMatrix& A);
int sparse_rank(const SparseIntMatrix& A);

// ---------------------------------------------------------------------------
// Cokernels, membership, kernels.

struct CokernelReport {
    FgAbelianGroup group;
    bool is_surjective = false;
    /// lcm of invariant factors; 0 when the cokernel is infinite.
    Integer exponent;
};

/// Cokernel Z^rows / column span of A.
CokernelReport cokernel_of(const IntMatrix& A);
CokernelReport cokernel_of(const SparseIntMatrix& A);

struct MembershipResult {
    std::optional<IntVector> solution;
    /// When unsolvable: index in Smith coordinates and the modulus that
    /// obstructs (0 means the coordinate must vanish but does not).
    int obstruction_index = -1;
    Integer obstruction_modulus;
};

/// Finds x with A x = b over the integers, or a non-membership certificate.
MembershipResult solve_membership(const IntMatrix& A, const IntVector& b);

/// Columns form a basis of the integer kernel of A.
IntMatrix integer_kernel(const IntMatrix& A);

struct SparseSolveResult {
    enum class Status { Solved, Infeasible, TooLarge };
    Status status = Status::Infeasible;
    std::optional<IntVector> solution;
    /// Size of the system left after eliminating unit pivots.
    int residual_rows = 0, residual_cols = 0;
};

/// Integer solution of A x = b. Variables with a +-1 coefficient are
/// eliminated exactly first; what remains is solved densely unless it has
/// more than max_dense_entries entries (status TooLarge).
SparseSolveResult solve_sparse(const SparseIntMatrix& A, const IntVector& b, std::int64_t max_dense_entries = 4000000);

// ---------------------------------------------------------------------------
// Chain complexes of free abelian groups.

/// Degrees 0..top(); boundary(n) maps degree n to degree n-1 (n >= 1).
class ChainComplex {
public:
    ChainComplex() = default;
    explicit ChainComplex(std::vector<int> ranks);

    int top() const { return static_cast<int>(ranks_.size()) - 1; }
    int rank(int n) const { return ranks_.at(n); }
    const std::vector<int>& ranks() const { return ranks_; }

    void set_boundary(int n, SparseIntMatrix c);
    const SparseIntMatrix& boundary(int n) const { return boundaries_.at(n); }

    /// Throws NotAComplex if some c_{n-1} c_n is nonzero.
    void verify() const;

private:
    std::vector<int> ranks_;
    std::vector<SparseIntMatrix> boundaries_;  // index n holds c_n; index 0 unused
};

/// ker(c_n) / im(c_{n+1}). For n = top() the missing c_{top+1} is zero.
/// Throws NotAComplex when c_n c_{n+1} != 0.
FgAbelianGroup homology(const ChainComplex& C, int n);

/// Matrix I/O: nested JSON arrays of decimal strings.
nlohmann::json matrix_to_json(const IntMatrix& A);
IntMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace dress
