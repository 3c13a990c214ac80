#include "dress/linalg.hpp"

#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <numeric>
#include <sstream>

namespace dress {

// ---------------------------------------------------------------------------
// FgAbelianGroup

namespace {

// Normalizes torsion orders into a divisibility chain by repeated gcd/lcm
// exchange; drops units.
std::vector<Integer> normalize_torsion(std::vector<Integer> t) {
    for (auto& x : t) x = abs(x);
    std::erase_if(t, [](const Integer& x) { return x.is_unit() || x.is_zero(); });
    std::sort(t.begin(), t.end());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            if ((t[j] % t[i]).is_zero()) continue;
            Integer g = gcd(t[i], t[j]);
            Integer l = t[i] / g * t[j];
            t[i] = g;
            t[j] = l;
        }
    std::erase_if(t, [](const Integer& x) { return x.is_unit(); });
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

Integer FgAbelianGroup::exponent() const {
    if (free_rank > 0) return 0;
    Integer e = 1;
    for (const auto& d : invariant_factors) e = lcm(e, d);
    return e;
}

Integer FgAbelianGroup::torsion_order() const {
    Integer o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

FgAbelianGroup FgAbelianGroup::localized_at(int p) const {
    std::vector<Integer> parts;
    for (const auto& d : invariant_factors) {
        Integer part = 1, rest = d;
        while ((rest % p).is_zero()) {
            rest /= p;
            part *= p;
        }
        parts.push_back(part);
    }
    return {free_rank, normalize_torsion(std::move(parts))};
}

std::string FgAbelianGroup::str() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& d : invariant_factors) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FgAbelianGroup abelian_group_from_diagonal(const std::vector<Integer>& diagonal, int generators) {
    int nonzero = 0;
    std::vector<Integer> torsion;
    for (const auto& d : diagonal) {
        if (d.is_zero()) continue;
        ++nonzero;
        torsion.push_back(d);
    }
    return {generators - nonzero, normalize_torsion(std::move(torsion))};
}

nlohmann::json integer_to_json(const Integer& a) {
    if (a.raw() >= std::numeric_limits<std::int64_t>::min() && a.raw() <= std::numeric_limits<std::int64_t>::max())
        return a.to_int64();
    return a.str();
}

void to_json(nlohmann::json& j, const FgAbelianGroup& g) {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& d : g.invariant_factors) f.push_back(integer_to_json(d));
    j = nlohmann::json{{"free_rank", g.free_rank}, {"invariant_factors", f}};
}

void from_json(const nlohmann::json& j, FgAbelianGroup& g) {
    g.free_rank = j.at("free_rank").get<int>();
    g.invariant_factors.clear();
    for (const auto& d : j.at("invariant_factors")) {
        g.invariant_factors.push_back(d.is_string() ? Integer(d.get<std::string>())
                                                    : Integer(d.get<std::int64_t>()));
    }
}

// ---------------------------------------------------------------------------

Integer determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const Eigen::Index n = A.rows();
    if (n == 0) return 1;
    IntMatrix M = A;
    Integer sign = 1, prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (M(k, k).is_zero()) {
            Eigen::Index s = k + 1;
            while (s < n && M(s, k).is_zero()) ++s;
            if (s == n) return 0;
            M.row(k).swap(M.row(s));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// SparseIntMatrix

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& A) {
    SparseIntMatrix S(static_cast<int>(A.rows()), static_cast<int>(A.cols()));
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (!A(i, j).is_zero()) S.columns_[j].emplace_back(static_cast<int>(i), A(i, j));
    return S;
}

std::size_t SparseIntMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
}

void SparseIntMatrix::add(int i, int j, const Integer& value) {
    if (value.is_zero()) return;
    columns_[j].emplace_back(i, value);
}

void SparseIntMatrix::finalize() {
    for (auto& col : columns_) {
        std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        Column merged;
        for (auto& e : col) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
        }
        std::erase_if(merged, [](const Entry& e) { return e.second.is_zero(); });
        col = std::move(merged);
    }
}

IntMatrix SparseIntMatrix::to_dense() const {
    IntMatrix A = IntMatrix::Zero(rows_, cols());
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, v] : columns_[j]) A(i, j) += v;
    return A;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& B) const {
    if (cols() != B.rows()) throw Error(ErrorCode::DimensionMismatch, "sparse product");
    SparseIntMatrix C(rows_, B.cols());
    for (int j = 0; j < B.cols(); ++j) {
        for (const auto& [k, b] : B.columns_[j])
            for (const auto& [i, a] : columns_[k]) C.columns_[j].emplace_back(i, a * b);
    }
    C.finalize();
    return C;
}

bool SparseIntMatrix::is_zero() const {
    for (const auto& c : columns_)
        for (const auto& e : c)
            if (!e.second.is_zero()) return false;
    return true;
}

namespace {

using Column = SparseIntMatrix::Column;

// target - f * source, both sorted.
Column combine(const Column& target, const Integer& f, const Column& source) {
    Column out;
    out.reserve(target.size() + source.size());
    std::size_t a = 0, b = 0;
    while (a < target.size() || b < source.size()) {
        if (b == source.size() || (a < target.size() && target[a].first < source[b].first)) {
            out.push_back(target[a++]);
        } else if (a == target.size() || source[b].first < target[a].first) {
            out.emplace_back(source[b].first, -f * source[b].second);
            ++b;
        } else {
            Integer v = target[a].second - f * source[b].second;
            if (!v.is_zero()) out.emplace_back(target[a].first, std::move(v));
            ++a;
            ++b;
        }
    }
    return out;
}

const Integer* find_entry(const Column& c, int row) {
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, int r) { return e.first < r; });
    if (it == c.end() || it->first != row) return nullptr;
    return &it->second;
}

// Diagonal multiset (not necessarily a divisibility chain) whose Smith
// normalization equals that of A.
std::vector<Integer> sparse_diagonal(const SparseIntMatrix& A) {
    const int m = A.rows(), n = A.cols();
    std::vector<Column> cols(n);
    std::vector<std::vector<int>> row_cols(m);
    for (int j = 0; j < n; ++j) {
        cols[j] = A.column(j);
        for (const auto& e : cols[j]) row_cols[e.first].push_back(j);
    }
    std::vector<char> col_alive(n, 1), row_alive(m, 1);
    std::vector<Integer> diag;

    auto divides_line = [&](int r, int c, const Integer& v) {
        for (const auto& e : cols[c])
            if (!(e.second % v).is_zero()) return false;
        for (int j : row_cols[r]) {
            if (!col_alive[j] || j == c) continue;
            const Integer* a = find_entry(cols[j], r);
            if (a && !((*a) % v).is_zero()) return false;
        }
        return true;
    };

    auto eliminate = [&](int r, int c) {
        const Integer v = *find_entry(cols[c], r);
        std::vector<int> touched = std::move(row_cols[r]);
        row_cols[r].clear();
        for (int j : touched) {
            if (j == c || !col_alive[j]) continue;
            const Integer* a = find_entry(cols[j], r);
            if (!a) continue;
            Integer f = *a / v;
            Column next = combine(cols[j], f, cols[c]);
            // Register fill-in rows.
            std::size_t p = 0;
            for (const auto& e : next) {
                while (p < cols[j].size() && cols[j][p].first < e.first) ++p;
                if (p == cols[j].size() || cols[j][p].first != e.first) row_cols[e.first].push_back(j);
            }
            cols[j] = std::move(next);
        }
        col_alive[c] = 0;
        row_alive[r] = 0;
        cols[c].clear();
        diag.push_back(abs(v));
    };

    for (bool progress = true; progress;) {
        progress = false;
        std::vector<int> order;
        for (int j = 0; j < n; ++j)
            if (col_alive[j] && !cols[j].empty()) order.push_back(j);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return cols[a].size() < cols[b].size(); });
        for (int c : order) {
            if (!col_alive[c] || cols[c].empty()) continue;
            int best = -1;
            std::size_t best_count = 0;
            for (const auto& e : cols[c]) {
                if (!e.second.is_unit()) continue;
                std::size_t cnt = row_cols[e.first].size();
                if (best < 0 || cnt < best_count) {
                    best = e.first;
                    best_count = cnt;
                }
            }
            if (best >= 0) {
                eliminate(best, c);
                progress = true;
            }
        }
        if (progress) continue;
        // No unit pivots left: accept a non-unit pivot dividing its whole row and column.
        for (int c : order) {
            if (!col_alive[c] || cols[c].empty()) continue;
            Integer smallest = abs(cols[c].front().second);
            int row = cols[c].front().first;
            for (const auto& e : cols[c])
                if (abs(e.second) < smallest) {
                    smallest = abs(e.second);
                    row = e.first;
                }
            if (divides_line(row, c, *find_entry(cols[c], row))) {
                eliminate(row, c);
                progress = true;
            }
        }
    }

    // Dense finish on the residual block.
    std::vector<int> rows_left, cols_left;
    std::vector<int> row_index(m, -1);
    for (int j = 0; j < n; ++j) {
        if (!col_alive[j] || cols[j].empty()) continue;
        cols_left.push_back(j);
        for (const auto& e : cols[j])
            if (row_index[e.first] < 0) {
                row_index[e.first] = static_cast<int>(rows_left.size());
                rows_left.push_back(e.first);
            }
    }
    if (!cols_left.empty()) {
        IntMatrix R = IntMatrix::Zero(static_cast<Eigen::Index>(rows_left.size()),
                                      static_cast<Eigen::Index>(cols_left.size()));
        for (std::size_t k = 0; k < cols_left.size(); ++k)
            for (const auto& e : cols[cols_left[k]]) R(row_index[e.first], static_cast<Eigen::Index>(k)) = e.second;
        for (auto& d : smith_diagonal(R))
            if (!d.is_zero()) diag.push_back(d);
    }
    return diag;
}

}  // namespace

std::vector<Integer> sparse_invariant_factors(const SparseIntMatrix& A) {
    std::vector<Integer> d = sparse_diagonal(A);
    const std::size_t total = d.size();
    std::vector<Integer> torsion = normalize_torsion(std::move(d));
    std::vector<Integer> out(total - torsion.size(), Integer(1));
    out.insert(out.end(), torsion.begin(), torsion.end());
    return out;
}

int sparse_rank(const SparseIntMatrix& A) { return static_cast<int>(sparse_diagonal(A).size()); }

// ---------------------------------------------------------------------------

CokernelReport cokernel_of(const IntMatrix& A) {
    CokernelReport r;
    r.group = abelian_group_from_diagonal(smith_diagonal(A), static_cast<int>(A.rows()));
    r.is_surjective = r.group.is_trivial();
    r.exponent = r.group.exponent();
    return r;
}

CokernelReport cokernel_of(const SparseIntMatrix& A) {
    CokernelReport r;
    r.group = abelian_group_from_diagonal(sparse_diagonal(A), A.rows());
    r.is_surjective = r.group.is_trivial();
    r.exponent = r.group.exponent();
    return r;
}

MembershipResult solve_membership(const IntMatrix& A, const IntVector& b) {
    if (A.rows() != b.size()) throw Error(ErrorCode::DimensionMismatch, "solve_membership: rows vs rhs");
    MembershipResult out;
    auto snf = smith_normal_form(A);
    IntVector y = snf.U * b;
    IntVector z = IntVector::Zero(A.cols());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const bool in_rank = i < snf.rank;
        if (!in_rank) {
            if (!y(i).is_zero()) {
                out.obstruction_index = static_cast<int>(i);
                out.obstruction_modulus = 0;
                return out;
            }
            continue;
        }
        const Integer& d = snf.D(i, i);
        if (!(y(i) % d).is_zero()) {
            out.obstruction_index = static_cast<int>(i);
            out.obstruction_modulus = d;
            return out;
        }
        z(i) = y(i) / d;
    }
    out.solution = snf.V * z;
    return out;
}

IntMatrix integer_kernel(const IntMatrix& A) {
    auto snf = smith_normal_form(A);
    const Eigen::Index n = A.cols();
    return snf.V.rightCols(n - snf.rank);
}

SparseSolveResult solve_sparse(const SparseIntMatrix& A, const IntVector& b, std::int64_t max_dense_entries) {
    if (A.rows() != b.size()) throw Error(ErrorCode::DimensionMismatch, "solve_sparse: rows vs rhs");
    const int m = A.rows(), n = A.cols();
    std::vector<std::map<int, Integer>> row(m);
    std::vector<Integer> rhs(b.begin(), b.end());
    std::vector<std::set<int>> occurs(n);
    for (int j = 0; j < n; ++j)
        for (const auto& [i, v] : A.column(j)) {
            row[i][j] = v;
            occurs[j].insert(i);
        }
    std::vector<bool> alive(m, true);
    SparseSolveResult out;
    for (int i = 0; i < m; ++i)
        if (row[i].empty()) {
            alive[i] = false;
            if (!rhs[i].is_zero()) return out;
        }

    // x_v = constant + sum coeff * x_u, recorded in elimination order.
    struct Elimination {
        int var;
        Integer constant;
        std::vector<std::pair<int, Integer>> terms;
    };
    std::vector<Elimination> eliminated;
    const Integer one(1), minus_one(-1);
    for (;;) {
        int best = -1, var = -1;
        std::size_t best_len = 0, best_occ = 0;
        for (int i = 0; i < m; ++i) {
            if (!alive[i] || (best >= 0 && row[i].size() > best_len)) continue;
            for (const auto& [j, v] : row[i]) {
                if (v != one && v != minus_one) continue;
                if (best < 0 || row[i].size() < best_len || occurs[j].size() < best_occ) {
                    best = i;
                    var = j;
                    best_len = row[i].size();
                    best_occ = occurs[j].size();
                }
            }
        }
        if (best < 0) break;
        const auto pivot = row[best];
        const Integer c = pivot.at(var), r = rhs[best];
        Elimination e{var, c * r, {}};
        for (const auto& [j, v] : pivot)
            if (j != var) e.terms.emplace_back(j, -(c * v));
        eliminated.push_back(std::move(e));
        alive[best] = false;
        for (const auto& [j, v] : pivot) occurs[j].erase(best);
        const std::vector<int> targets(occurs[var].begin(), occurs[var].end());
        for (int q : targets) {
            const Integer f = row[q].at(var) * c;
            for (const auto& [j, v] : pivot) {
                Integer& a = row[q][j];
                a -= f * v;
                if (a.is_zero()) {
                    row[q].erase(j);
                    occurs[j].erase(q);
                } else {
                    occurs[j].insert(q);
                }
            }
            rhs[q] -= f * r;
            if (row[q].empty()) {
                alive[q] = false;
                if (!rhs[q].is_zero()) return out;
            }
        }
    }

    // Dense solve of what is left.
    std::vector<int> rows_left, cols_left, col_index(n, -1);
    for (int i = 0; i < m; ++i)
        if (alive[i]) rows_left.push_back(i);
    for (int i : rows_left)
        for (const auto& [j, v] : row[i])
            if (col_index[j] < 0) {
                col_index[j] = static_cast<int>(cols_left.size());
                cols_left.push_back(j);
            }
    out.residual_rows = static_cast<int>(rows_left.size());
    out.residual_cols = static_cast<int>(cols_left.size());
    IntVector x = IntVector::Zero(n);
    if (!rows_left.empty()) {
        if (static_cast<std::int64_t>(rows_left.size()) * static_cast<std::int64_t>(cols_left.size()) > max_dense_entries) {
            out.status = SparseSolveResult::Status::TooLarge;
            return out;
        }
        IntMatrix D = IntMatrix::Zero(static_cast<Eigen::Index>(rows_left.size()), static_cast<Eigen::Index>(cols_left.size()));
        IntVector d(static_cast<Eigen::Index>(rows_left.size()));
        for (std::size_t k = 0; k < rows_left.size(); ++k) {
            for (const auto& [j, v] : row[rows_left[k]]) D(static_cast<Eigen::Index>(k), col_index[j]) = v;
            d(static_cast<Eigen::Index>(k)) = rhs[rows_left[k]];
        }
        auto sol = solve_membership(D, d);
        if (!sol.solution) return out;
        for (std::size_t k = 0; k < cols_left.size(); ++k) x(cols_left[k]) = (*sol.solution)(static_cast<Eigen::Index>(k));
    }
    for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
        Integer v = it->constant;
        for (const auto& [u, a] : it->terms) v += a * x(u);
        x(it->var) = v;
    }
    IntVector check = IntVector::Zero(m);
    for (int j = 0; j < n; ++j)
        if (!x(j).is_zero())
            for (const auto& [i, v] : A.column(j)) check(i) += v * x(j);
    if (check != b) throw std::logic_error("solve_sparse: back substitution failed");
    out.status = SparseSolveResult::Status::Solved;
    out.solution = std::move(x);
    return out;
}

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    boundaries_.resize(ranks_.size());
    for (std::size_t n = 1; n < ranks_.size(); ++n)
        boundaries_[n] = SparseIntMatrix(ranks_[n - 1], ranks_[n]);
}

void ChainComplex::set_boundary(int n, SparseIntMatrix c) {
    if (n < 1 || n > top()) throw Error(ErrorCode::DegreeOutOfRange, "set_boundary degree " + std::to_string(n));
    if (c.rows() != ranks_[n - 1] || c.cols() != ranks_[n])
        throw Error(ErrorCode::DimensionMismatch, "boundary " + std::to_string(n) + " has wrong shape");
    boundaries_[n] = std::move(c);
}

void ChainComplex::verify() const {
    for (int n = 2; n <= top(); ++n)
        if (!(boundaries_[n - 1] * boundaries_[n]).is_zero())
            throw Error(ErrorCode::NotAComplex, "c_" + std::to_string(n - 1) + " c_" + std::to_string(n) + " != 0");
}

FgAbelianGroup homology(const ChainComplex& C, int n) {
    if (n < 0 || n > C.top()) throw Error(ErrorCode::DegreeOutOfRange, "homology degree " + std::to_string(n));
    if (n >= 1 && n + 1 <= C.top() && !(C.boundary(n) * C.boundary(n + 1)).is_zero())
        throw Error(ErrorCode::NotAComplex, "c_" + std::to_string(n) + " c_" + std::to_string(n + 1) + " != 0");
    const int rank_out = n >= 1 ? sparse_rank(C.boundary(n)) : 0;
    if (n + 1 > C.top()) return FgAbelianGroup::free(C.rank(n) - rank_out);
    std::vector<Integer> inv = sparse_invariant_factors(C.boundary(n + 1));
    FgAbelianGroup h;
    h.free_rank = C.rank(n) - rank_out - static_cast<int>(inv.size());
    for (auto& d : inv)
        if (!d.is_unit()) h.invariant_factors.push_back(d);
    return h;
}

// ---------------------------------------------------------------------------

nlohmann::json matrix_to_json(const IntMatrix& A) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(integer_to_json(A(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidFunctorData, "matrix must be an array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    IntMatrix A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols)
            throw Error(ErrorCode::InvalidFunctorData, "ragged matrix");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& e = j[i][k];
            A(i, k) = e.is_string() ? Integer(e.get<std::string>()) : Integer(e.get<std::int64_t>());
        }
    }
    return A;
}

}  // namespace dress
