#include "dress/bredon.hpp"

#include <map>
#include <stdexcept>

#include "dress/error.hpp"

namespace dress {

OrbitCategory::OrbitCategory(SkeletonPtr sk, Family F) : skeleton_(std::move(sk)), family_(std::move(F)) {
    if (family_.lattice.get() != skeleton_->lattice_ptr().get())
        throw Error(ErrorCode::FamilyGroupMismatch, "family and skeleton over different lattices");
    if (family_.empty()) throw Error(ErrorCode::EmptyFamily, "orbit category of the empty family");
    objects_ = family_.classes;
    object_of_class_.assign(skeleton_->class_count(), -1);
    for (int x = 0; x < object_count(); ++x) object_of_class_[objects_[x]] = x;
}

int OrbitCategory::object_of_class(int c) const { return object_of_class_[c]; }

int OrbitCategory::identity(int x) const {
    const int c = objects_[x];
    return skeleton_->morphism_position(c, c, skeleton_->coset_of(c, FiniteGroup::identity));
}

int OrbitCategory::compose(int x, int y, int z, int a, int b) const {
    const int cy = objects_[y], cz = objects_[z];
    const int coset = skeleton_->compose(cy, cz, hom(x, y)[a], hom(y, z)[b]);
    return skeleton_->morphism_position(objects_[x], cz, coset);
}

bool OrbitCategory::check_composition() const {
    const int n = object_count();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int a = 0; a < static_cast<int>(hom(x, y).size()); ++a) {
                if (compose(x, x, y, identity(x), a) != a) return false;
                if (compose(x, y, y, a, identity(y)) != a) return false;
                for (int z = 0; z < n; ++z)
                    for (int b = 0; b < static_cast<int>(hom(y, z).size()); ++b) {
                        const int ab = compose(x, y, z, a, b);
                        if (ab < 0) return false;
                        for (int w = 0; w < n; ++w)
                            for (int c = 0; c < static_cast<int>(hom(z, w).size()); ++c)
                                if (compose(x, z, w, ab, c) != compose(x, y, w, a, compose(y, z, w, b, c)))
                                    return false;
                    }
            }
    return true;
}

BredonModule resolution_module(const StandardResolution& R, int n) {
    BredonModule P;
    P.variance = Variance::Contravariant;
    P.category = R.category;
    P.ranks = R.ranks.at(n);
    const int objs = R.category->object_count();
    P.maps.assign(objs, std::vector<std::vector<IntMatrix>>(objs));
    for (int x = 0; x < objs; ++x)
        for (int y = 0; y < objs; ++y)
            for (const auto& img : R.translate[n][x][y]) {
                IntMatrix m = IntMatrix::Zero(P.ranks[x], P.ranks[y]);
                for (int t = 0; t < P.ranks[y]; ++t) m(img[t], t) = 1;
                P.maps[x][y].push_back(std::move(m));
            }
    return P;
}

CategoryPtr build_orbit_category(const SkeletonPtr& sk, const Family& F) {
    return std::make_shared<const OrbitCategory>(sk, F);
}

bool check_functoriality(const BredonModule& N) {
    const auto& C = *N.category;
    const int n = C.object_count();
    const bool cov = N.variance == Variance::Covariant;
    for (int x = 0; x < n; ++x)
        if (N.map(x, x, C.identity(x)) != IntMatrix::Identity(N.ranks[x], N.ranks[x])) return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int a = 0; a < static_cast<int>(C.hom(x, y).size()); ++a)
                for (int z = 0; z < n; ++z)
                    for (int b = 0; b < static_cast<int>(C.hom(y, z).size()); ++b) {
                        const IntMatrix& ab = N.map(x, z, C.compose(x, y, z, a, b));
                        const IntMatrix want = cov ? (N.map(y, z, b) * N.map(x, y, a)).eval()
                                                   : (N.map(x, y, a) * N.map(y, z, b)).eval();
                        if (ab != want) return false;
                    }
    return true;
}

BredonModule covariant_part(const MackeyFunctor& M, const CategoryPtr& C) {
    if (&M.skeleton() != &C->skeleton() && M.skeleton().lattice_ptr() != C->skeleton().lattice_ptr())
        throw Error(ErrorCode::GroupMismatch, "functor and category over different groups");
    BredonModule N;
    N.category = C;
    const int n = C->object_count();
    for (int x = 0; x < n; ++x) N.ranks.push_back(M.rank(C->object_class(x)));
    N.maps.assign(n, std::vector<std::vector<IntMatrix>>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int coset : C->hom(x, y)) N.maps[x][y].push_back(M.push(C->object_class(x), C->object_class(y), coset));
    return N;
}

BredonModule constant_module(const CategoryPtr& C, const GSetPtr& S) {
    BredonModule N;
    N.variance = Variance::Contravariant;
    N.category = C;
    const auto& L = C->skeleton().lattice();
    const int n = C->object_count();
    for (int x = 0; x < n; ++x) N.ranks.push_back(S->fixed_points(L.rep(C->object_class(x))).empty() ? 0 : 1);
    N.maps.assign(n, std::vector<std::vector<IntMatrix>>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (std::size_t k = 0; k < C->hom(x, y).size(); ++k)
                N.maps[x][y].push_back(IntMatrix::Ones(N.ranks[x], N.ranks[y]));
    return N;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void require_points(std::int64_t base, int exponent, std::int64_t cap) {
    double p = 1;
    for (int i = 0; i < exponent; ++i) p *= static_cast<double>(base);
    if (p > static_cast<double>(cap)) throw Error(ErrorCode::CapExceeded, "|S|^" + std::to_string(exponent) + " exceeds the point cap");
}

// Digits of a lexicographic tuple index, most significant first.
void digits(std::int64_t index, int base, std::vector<int>& out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<int>(index % base);
        index /= base;
    }
}

// Sparse integer combination of basis vectors.
using Combination = std::map<int, Integer>;

bool is_zero(const Combination& v) {
    for (const auto& [i, c] : v)
        if (!c.is_zero()) return false;
    return true;
}

std::int64_t undigits(const std::vector<int>& d, int base, int skip = -1) {
    std::int64_t r = 0;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        if (i != skip) r = r * base + d[i];
    return r;
}

}  // namespace

StandardResolution standard_resolution(const CategoryPtr& C, const GSetPtr& S, int n_max, std::int64_t max_points) {
    if (S->size() == 0) throw Error(ErrorCode::EmptyGSet, "resolution over the empty G-set");
    if (n_max < 1) throw Error(ErrorCode::DegreeOutOfRange, "n_max must be positive");
    require_points(S->size(), n_max + 1, max_points);
    const auto& sk = C->skeleton();
    const auto& L = sk.lattice();
    const int objs = C->object_count();

    StandardResolution R;
    R.category = C;
    R.set = S;
    R.n_max = n_max;
    std::vector<std::vector<int>> fixed(objs), pos(objs, std::vector<int>(S->size(), -1));
    for (int x = 0; x < objs; ++x) {
        fixed[x] = S->fixed_points(L.rep(C->object_class(x)));
        for (std::size_t i = 0; i < fixed[x].size(); ++i) pos[x][fixed[x][i]] = static_cast<int>(i);
    }
    auto rank = [&](int x, int n) { return static_cast<int>(ipow(static_cast<std::int64_t>(fixed[x].size()), n + 1)); };

    R.ranks.assign(n_max + 1, std::vector<int>(objs));
    R.translate.assign(n_max + 1, {});
    for (int n = 0; n <= n_max; ++n) {
        for (int x = 0; x < objs; ++x) R.ranks[n][x] = rank(x, n);
        auto& tr = R.translate[n];
        tr.assign(objs, std::vector<std::vector<std::vector<int>>>(objs));
        std::vector<int> d(n + 1), e(n + 1);
        for (int x = 0; x < objs; ++x)
            for (int y = 0; y < objs; ++y)
                for (int coset : C->hom(x, y)) {
                    const int g = sk.coset_rep(C->object_class(y), coset);
                    const int fy = static_cast<int>(fixed[y].size());
                    std::vector<int> img(R.ranks[n][y]);
                    for (int t = 0; t < R.ranks[n][y]; ++t) {
                        digits(t, fy, d);
                        for (int i = 0; i <= n; ++i) e[i] = pos[x][S->act(g, fixed[y][d[i]])];
                        img[t] = static_cast<int>(undigits(e, static_cast<int>(fixed[x].size())));
                    }
                    tr[x][y].push_back(std::move(img));
                }
    }

    R.exact = true;
    for (int x = 0; x < objs; ++x) {
        std::vector<int> ranks;
        const int f = static_cast<int>(fixed[x].size());
        for (int n = 0; n <= n_max; ++n) ranks.push_back(rank(x, n));
        ChainComplex K(ranks);
        std::vector<int> d;
        for (int n = 1; n <= n_max; ++n) {
            SparseIntMatrix b(ranks[n - 1], ranks[n]);
            d.assign(n + 1, 0);
            for (int t = 0; t < ranks[n]; ++t) {
                digits(t, f, d);
                for (int i = 0; i <= n; ++i) b.add(static_cast<int>(undigits(d, f, i)), t, Integer(i % 2 ? -1 : 1));
            }
            b.finalize();
            K.set_boundary(n, std::move(b));
        }
        K.verify();
        std::vector<FgAbelianGroup> h;
        for (int n = 0; n < n_max; ++n) {
            h.push_back(homology(K, n));
            const FgAbelianGroup want = n == 0 && f > 0 ? FgAbelianGroup::free(1) : FgAbelianGroup{};
            if (!(h.back() == want)) R.exact = false;
        }
        R.homology.push_back(std::move(h));
        R.complexes.push_back(std::move(K));
    }

    // Translation commutes with each face map omit_i.
    R.natural = true;
    std::vector<int> d, e;
    for (int n = 1; n <= n_max; ++n)
        for (int x = 0; x < objs; ++x)
            for (int y = 0; y < objs; ++y)
                for (std::size_t k = 0; k < C->hom(x, y).size(); ++k) {
                    const int fx = static_cast<int>(fixed[x].size()), fy = static_cast<int>(fixed[y].size());
                    d.assign(n + 1, 0);
                    e.assign(n + 1, 0);
                    for (int t = 0; t < R.ranks[n][y]; ++t) {
                        digits(t, fy, d);
                        digits(R.translate[n][x][y][k][t], fx, e);
                        for (int i = 0; i <= n; ++i)
                            if (R.translate[n - 1][x][y][k][undigits(d, fy, i)] != undigits(e, fx, i)) R.natural = false;
                    }
                }
    return R;
}

// ---------------------------------------------------------------------------

FgAbelianGroup TorComplex::tor(int p) const {
    if (p < 0 || p >= n_max) throw Error(ErrorCode::DegreeOutOfRange, "Tor needs p < n_max");
    return homology(complex, p);
}

TorComplex tor_complex_coend(const BredonModule& N, const TorOptions& opt) {
    if (N.variance != Variance::Covariant) throw Error(ErrorCode::InvalidFunctorData, "Tor needs a covariant module");
    const auto& C = *N.category;
    const auto& sk = C.skeleton();
    const auto& L = sk.lattice();
    auto S = family_gset(C.family());
    if (opt.n_max < 1) throw Error(ErrorCode::DegreeOutOfRange, "n_max must be positive");
    require_points(S->size(), opt.n_max + 1, opt.max_points);
    GSetCaps caps;
    caps.max_points = opt.max_points;
    const int s = S->size();

    TorComplex T;
    T.route = TorRoute::Coend;
    T.n_max = opt.n_max;
    T.presentation_verified = true;
    std::vector<GSetPtr> levels;
    std::vector<std::vector<int>> offset(opt.n_max + 1), object(opt.n_max + 1);
    for (int n = 0; n <= opt.n_max; ++n) {
        levels.push_back(power(S, n + 1, caps));
        int r = 0;
        for (const auto& o : levels[n]->orbits()) {
            const int x = C.object_of_class(o.class_id);
            if (x < 0) throw std::logic_error("stabilizer outside the family");
            offset[n].push_back(r);
            object[n].push_back(x);
            r += N.ranks[x];
        }
        T.ranks.push_back(r);
    }
    // Normal form of the generator (x, q, e_m): (orbit of q, N(phi_g) e_m)
    // where g . anchor = q and phi_g: G/H_x -> G/H_c, aH_x -> agH_c.
    auto normal_form = [&](int n, int x, int q, int m, const Integer& coeff, Combination& into) {
        const auto& Tn = *levels[n];
        const int o = Tn.orbit_of(q);
        const int c = Tn.orbits()[o].class_id;
        const int coset = sk.coset_of(c, Tn.anchor_coordinate(q));
        const int y = object[n][o];
        const int k = sk.morphism_position(C.object_class(x), c, coset);
        if (k < 0) throw std::logic_error("normal form through a non-morphism");
        const IntMatrix& A = N.map(x, y, k);
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (!A(i, m).is_zero()) into[offset[n][o] + static_cast<int>(i)] += coeff * A(i, m);
    };

    for (int n = 0; n <= opt.n_max; ++n) {
        const auto& Tn = *levels[n];
        int gens = 0, rels = 0;
        std::vector<std::vector<int>> fixed(C.object_count());
        for (int x = 0; x < C.object_count(); ++x) {
            fixed[x] = Tn.fixed_points(L.rep(C.object_class(x)));
            gens += static_cast<int>(fixed[x].size()) * N.ranks[x];
        }
        Combination v;
        // pi(f^* q (x) m) = pi(q (x) f_* m) for every morphism f: x -> y.
        for (int x = 0; x < C.object_count() && T.presentation_verified; ++x)
            for (int y = 0; y < C.object_count() && T.presentation_verified; ++y)
                for (int k = 0; k < static_cast<int>(C.hom(x, y).size()); ++k) {
                    const int g = sk.coset_rep(C.object_class(y), C.hom(x, y)[k]);
                    const IntMatrix& f = N.map(x, y, k);
                    for (int q : fixed[y])
                        for (int m = 0; m < N.ranks[x]; ++m) {
                            ++rels;
                            v.clear();
                            normal_form(n, x, Tn.act(g, q), m, Integer(1), v);
                            for (int j = 0; j < N.ranks[y]; ++j)
                                if (!f(j, m).is_zero()) normal_form(n, y, q, j, -f(j, m), v);
                            if (!is_zero(v)) T.presentation_verified = false;
                        }
                }
        // The section through orbit anchors is a right inverse of pi.
        for (std::size_t o = 0; o < Tn.orbits().size(); ++o)
            for (int m = 0; m < N.ranks[object[n][o]]; ++m) {
                v.clear();
                normal_form(n, object[n][o], Tn.orbits()[o].anchor, m, Integer(1), v);
                v[offset[n][o] + m] -= Integer(1);
                if (!is_zero(v)) T.presentation_verified = false;
            }
        T.generators.push_back(gens);
        T.relations.push_back(rels);
    }

    T.complex = ChainComplex(T.ranks);
    std::vector<int> d;
    for (int n = 1; n <= opt.n_max; ++n) {
        const auto& Tn = *levels[n];
        SparseIntMatrix b(T.ranks[n - 1], T.ranks[n]);
        Combination v;
        d.assign(n + 1, 0);
        for (std::size_t o = 0; o < Tn.orbits().size(); ++o) {
            const int x = object[n][o];
            digits(Tn.orbits()[o].anchor, s, d);
            for (int m = 0; m < N.ranks[x]; ++m) {
                v.clear();
                for (int i = 0; i <= n; ++i)
                    normal_form(n - 1, x, static_cast<int>(undigits(d, s, i)), m, Integer(i % 2 ? -1 : 1), v);
                for (const auto& [r, c] : v)
                    if (!c.is_zero()) b.add(r, offset[n][o] + m, c);
            }
        }
        b.finalize();
        T.complex.set_boundary(n, std::move(b));
    }
    T.complex.verify();
    return T;
}

TorComplex tor_complex_shifted_dress(const MackeyFunctor& M, const Family& F, const TorOptions& opt) {
    auto S = family_gset(F);
    DressOptions d;
    d.n_max = opt.n_max + 1;
    d.max_points = opt.dress_max_points;
    auto D = dress_complex(M, S, d);
    TorComplex T;
    T.route = TorRoute::ShiftedDress;
    T.n_max = opt.n_max;
    T.ranks.assign(D.ranks.begin() + 1, D.ranks.end());
    T.complex = ChainComplex(T.ranks);
    for (int k = 1; k <= opt.n_max; ++k) T.complex.set_boundary(k, D.complex.boundary(k + 1));
    return T;
}

TorSeries tor_series(const CategoryPtr& C, const MackeyFunctor& M, const TorOptions& opt) {
    std::optional<TorComplex> coend, dress;
    try {
        coend = tor_complex_coend(covariant_part(M, C), opt);
        if (!coend->presentation_verified) throw std::logic_error("coend presentation failed verification");
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CapExceeded) throw;
    }
    try {
        dress = tor_complex_shifted_dress(M, C->family(), opt);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CapExceeded || !coend) throw;
    }
    TorSeries r;
    r.route = coend ? TorRoute::Coend : TorRoute::ShiftedDress;
    bool agree = true;
    for (int p = 0; p < opt.n_max; ++p) {
        r.groups.push_back(coend ? coend->tor(p) : dress->tor(p));
        if (coend && dress) agree &= r.groups.back() == dress->tor(p);
    }
    if (coend && dress) r.agrees_with_dress = agree;
    return r;
}

TorReport tor_over_orbit_category(const CategoryPtr& C, const MackeyFunctor& M, int p, const TorOptions& opt) {
    if (p < 0 || p >= opt.n_max) throw Error(ErrorCode::DegreeOutOfRange, "Tor needs p < n_max");
    TorOptions o = opt;
    o.n_max = p + 1;
    auto s = tor_series(C, M, o);
    return {s.groups[p], s.route, s.agrees_with_dress};
}

// ---------------------------------------------------------------------------

ColimReport colim_map(const CategoryPtr& Cp, const MackeyFunctor& M) {
    const auto& C = *Cp;
    const auto& sk = C.skeleton();
    if (M.skeleton().lattice_ptr() != sk.lattice_ptr())
        throw Error(ErrorCode::FamilyGroupMismatch, "functor and category over different groups");
    const int n = C.object_count();
    const int w = sk.lattice().class_of(sk.lattice().whole());
    std::vector<int> offset(n + 1, 0);
    for (int x = 0; x < n; ++x) offset[x + 1] = offset[x] + M.rank(C.object_class(x));
    const int total = offset[n];
    int cols = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) cols += static_cast<int>(C.hom(x, y).size()) * M.rank(C.object_class(x));

    ColimReport r;
    r.relations = IntMatrix::Zero(total, cols);
    int col = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int coset : C.hom(x, y)) {
                const IntMatrix& f = M.push(C.object_class(x), C.object_class(y), coset);
                for (int m = 0; m < f.cols(); ++m, ++col) {
                    r.relations.block(offset[y], col, f.rows(), 1) += f.col(m);
                    r.relations(offset[x] + m, col) -= 1;
                }
            }
    r.colimit = cokernel_of(r.relations).group;
    r.canonical = IntMatrix::Zero(M.rank(w), total);
    for (int x = 0; x < n; ++x) {
        const int c = C.object_class(x);
        r.canonical.middleCols(offset[x], M.rank(c)) = M.push(c, w, sk.morphisms(c, w).front());
    }
    if (!(r.canonical * r.relations).eval().isZero()) throw std::logic_error("canonical map does not factor through the colimit");
    auto ck = cokernel_of(r.canonical);
    r.cokernel = ck.group;
    r.surjective = ck.is_surjective;
    if (!r.surjective) {
        for (int i = 0; i < M.rank(w); ++i) {
            IntVector e = IntVector::Zero(M.rank(w));
            e(i) = 1;
            if (!solve_membership(r.canonical, e).solution) {
                r.witness = i;
                break;
            }
        }
    }
    r.injective = true;
    const IntMatrix K = integer_kernel(r.canonical);
    const auto rel = SparseIntMatrix::from_dense(r.relations);
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
        const auto st = solve_sparse(rel, K.col(j)).status;
        const bool member = st == SparseSolveResult::Status::TooLarge ? solve_membership(r.relations, K.col(j)).solution.has_value()
                                                                       : st == SparseSolveResult::Status::Solved;
        if (!member) {
            r.injective = false;
            r.kernel_witness = K.col(j);
            break;
        }
    }
    return r;
}

nlohmann::json colim_report_to_json(const ColimReport& r, const OrbitCategory& C) {
    const auto& L = C.skeleton().lattice();
    nlohmann::json objects = nlohmann::json::array();
    for (int x = 0; x < C.object_count(); ++x)
        objects.push_back({{"class", C.object_class(x)}, {"order", L.rep(C.object_class(x)).order}});
    nlohmann::json j = {{"group", L.group().name()},
                        {"family", C.family().tag},
                        {"objects", objects},
                        {"relations", matrix_to_json(r.relations)},
                        {"canonical_map", matrix_to_json(r.canonical)},
                        {"colimit", r.colimit},
                        {"cokernel", r.cokernel},
                        {"surjective", r.surjective},
                        {"injective", r.injective}};
    j["witness"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
    if (r.kernel_witness) {
        nlohmann::json v = nlohmann::json::array();
        for (Eigen::Index i = 0; i < r.kernel_witness->size(); ++i) v.push_back(integer_to_json((*r.kernel_witness)(i)));
        j["kernel_witness"] = v;
    }
    return j;
}

}  // namespace dress
