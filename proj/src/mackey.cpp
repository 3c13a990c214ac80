#include "dress/mackey.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "dress/tower.hpp"

namespace dress {

namespace {

void require_same_lattice(const MackeyFunctor& M, const GSet& S) {
    if (&M.lattice() != &S.lattice()) throw Error(ErrorCode::GroupMismatch, "G-set and functor over different groups");
}

std::optional<int> first_difference(const IntMatrix& a, const IntMatrix& b) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (a.col(j) != b.col(j)) return static_cast<int>(j);
    return std::nullopt;
}

AxiomReport compare(const IntMatrix& lhs, const IntMatrix& rhs, const std::string& what) {
    AxiomReport r;
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        r.ok = false;
        r.failure = what + ": shape mismatch";
        return r;
    }
    if (auto j = first_difference(lhs, rhs)) {
        r.ok = false;
        r.failure = what;
        r.witness = *j;
        r.lhs = lhs.col(*j);
        r.rhs = rhs.col(*j);
    }
    return r;
}

IntMatrix combination(const std::vector<IntMatrix>& basis_ops, const IntVector& v, int dim) {
    IntMatrix out = IntMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) out += v(i) * basis_ops[i];
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

MackeyFunctor::MackeyFunctor(SkeletonPtr skeleton, std::vector<int> ranks, std::string name)
    : skeleton_(std::move(skeleton)), ranks_(std::move(ranks)), name_(std::move(name)) {
    const int k = skeleton_->class_count();
    if (static_cast<int>(ranks_.size()) != k) throw Error(ErrorCode::InvalidFunctorData, "one rank per class needed");
    push_.assign(k, std::vector<std::vector<IntMatrix>>(k));
    pull_.assign(k, std::vector<std::vector<IntMatrix>>(k));
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) {
            const std::size_t n = skeleton_->morphisms(s, t).size();
            push_[s][t].assign(n, IntMatrix::Zero(ranks_[t], ranks_[s]));
            pull_[s][t].assign(n, IntMatrix::Zero(ranks_[s], ranks_[t]));
        }
}

const IntMatrix& MackeyFunctor::push(int s, int t, int coset) const {
    const int k = skeleton_->morphism_position(s, t, coset);
    if (k < 0) throw Error(ErrorCode::InvalidFunctorData, "not a morphism of the orbit skeleton");
    return push_[s][t][k];
}

const IntMatrix& MackeyFunctor::pull(int s, int t, int coset) const {
    const int k = skeleton_->morphism_position(s, t, coset);
    if (k < 0) throw Error(ErrorCode::InvalidFunctorData, "not a morphism of the orbit skeleton");
    return pull_[s][t][k];
}

void MackeyFunctor::set_push(int s, int t, int coset, IntMatrix m) {
    const int k = skeleton_->morphism_position(s, t, coset);
    if (k < 0) throw Error(ErrorCode::InvalidFunctorData, "not a morphism of the orbit skeleton");
    if (m.rows() != ranks_[t] || m.cols() != ranks_[s]) throw Error(ErrorCode::InvalidFunctorData, "push has wrong shape");
    push_[s][t][k] = std::move(m);
}

void MackeyFunctor::set_pull(int s, int t, int coset, IntMatrix m) {
    const int k = skeleton_->morphism_position(s, t, coset);
    if (k < 0) throw Error(ErrorCode::InvalidFunctorData, "not a morphism of the orbit skeleton");
    if (m.rows() != ranks_[s] || m.cols() != ranks_[t]) throw Error(ErrorCode::InvalidFunctorData, "pull has wrong shape");
    pull_[s][t][k] = std::move(m);
}

IntVector GreenFunctor::multiply(int c, const IntVector& x, const IntVector& y) const {
    return combination(mult[c], x, mackey.rank(c)) * y;
}

Pairing self_pairing(const GreenFunctor& U) { return Pairing{&U, &U.mackey, U.mult}; }

// ---------------------------------------------------------------------------

Evaluation evaluate_on_gset(const MackeyFunctor& M, const GSetPtr& S) {
    require_same_lattice(M, *S);
    Evaluation e;
    e.set = S;
    for (const auto& o : S->orbits()) {
        e.offset.push_back(e.rank);
        e.orbit_class.push_back(o.class_id);
        e.rank += M.rank(o.class_id);
    }
    return e;
}

OrbitMorphism orbit_morphism(const OrbitSkeleton& sk, const GMap& f, int o) {
    const auto& orb = f.source->orbits()[o];
    const int z = f(orb.anchor);
    const int target_orbit = f.target->orbit_of(z);
    const int t = f.target->orbits()[target_orbit].class_id;
    return {orb.class_id, target_orbit, t, sk.coset_of(t, f.target->anchor_coordinate(z))};
}

InducedMaps induced_maps(const MackeyFunctor& M, const GMap& f) {
    require_same_lattice(M, *f.source);
    require_same_lattice(M, *f.target);
    auto es = evaluate_on_gset(M, f.source);
    auto et = evaluate_on_gset(M, f.target);
    InducedMaps out{IntMatrix::Zero(et.rank, es.rank), IntMatrix::Zero(es.rank, et.rank)};
    for (int o = 0; o < static_cast<int>(f.source->orbits().size()); ++o) {
        const auto m = orbit_morphism(M.skeleton(), f, o);
        const int rs = M.rank(m.source_class), rt = M.rank(m.target_class);
        out.push.block(et.offset[m.target_orbit], es.offset[o], rt, rs) = M.push(m.source_class, m.target_class, m.coset);
        out.pull.block(es.offset[o], et.offset[m.target_orbit], rs, rt) = M.pull(m.source_class, m.target_class, m.coset);
    }
    return out;
}

namespace {

SparseIntMatrix induced_sparse(const MackeyFunctor& M, const GMap& f, bool push) {
    require_same_lattice(M, *f.source);
    require_same_lattice(M, *f.target);
    auto es = evaluate_on_gset(M, f.source);
    auto et = evaluate_on_gset(M, f.target);
    SparseIntMatrix out = push ? SparseIntMatrix(et.rank, es.rank) : SparseIntMatrix(es.rank, et.rank);
    for (int o = 0; o < static_cast<int>(f.source->orbits().size()); ++o) {
        const auto m = orbit_morphism(M.skeleton(), f, o);
        const IntMatrix& B = push ? M.push(m.source_class, m.target_class, m.coset)
                                  : M.pull(m.source_class, m.target_class, m.coset);
        const int r0 = push ? et.offset[m.target_orbit] : es.offset[o];
        const int c0 = push ? es.offset[o] : et.offset[m.target_orbit];
        for (Eigen::Index i = 0; i < B.rows(); ++i)
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                if (!B(i, j).is_zero()) out.add(r0 + static_cast<int>(i), c0 + static_cast<int>(j), B(i, j));
    }
    out.finalize();
    return out;
}

}  // namespace

SparseIntMatrix induced_push_sparse(const MackeyFunctor& M, const GMap& f) { return induced_sparse(M, f, true); }
SparseIntMatrix induced_pull_sparse(const MackeyFunctor& M, const GMap& f) { return induced_sparse(M, f, false); }

// ---------------------------------------------------------------------------

AxiomReport check_mackey_axioms(const MackeyFunctor& M, const CartesianSquare& sq) {
    auto a = induced_maps(M, sq.corner_to_first);
    auto b = induced_maps(M, sq.corner_to_second);
    auto c = induced_maps(M, sq.f1);
    auto d = induced_maps(M, sq.f2);
    AxiomReport r = compare((a.push * b.pull).eval(), (c.pull * d.push).eval(), "double coset formula");
    if (!r.ok) return r;
    return check_additivity(M, sq.f1.source, sq.f2.source);
}

AxiomReport check_additivity(const MackeyFunctor& M, const GSetPtr& S0, const GSetPtr& S1) {
    auto U = disjoint_union(S0, S1);
    auto [i0, i1] = union_inclusions(S0, S1, U);
    auto m0 = induced_maps(M, i0);
    auto m1 = induced_maps(M, i1);
    const auto r0 = m0.pull.rows(), r1 = m1.pull.rows();
    AxiomReport r = compare((m0.pull * m0.push).eval(), IntMatrix::Identity(r0, r0), "additivity: i0^* i0_* != id");
    if (!r.ok) return r;
    r = compare((m1.pull * m1.push).eval(), IntMatrix::Identity(r1, r1), "additivity: i1^* i1_* != id");
    if (!r.ok) return r;
    r = compare((m1.pull * m0.push).eval(), IntMatrix::Zero(r1, r0), "additivity: i1^* i0_* != 0");
    if (!r.ok) return r;
    const auto n = m0.push.rows();
    return compare((m0.push * m0.pull + m1.push * m1.pull).eval(), IntMatrix::Identity(n, n),
                   "additivity: not a bijection");
}

AxiomReport check_functoriality(const MackeyFunctor& M) {
    const auto& sk = M.skeleton();
    const int k = sk.class_count();
    for (int s = 0; s < k; ++s) {
        const int id = sk.coset_of(s, FiniteGroup::identity);
        AxiomReport r = compare(M.push(s, s, id), IntMatrix::Identity(M.rank(s), M.rank(s)), "push of identity");
        if (!r.ok) return r;
        r = compare(M.pull(s, s, id), IntMatrix::Identity(M.rank(s), M.rank(s)), "pull of identity");
        if (!r.ok) return r;
    }
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (int a : sk.morphisms(s, t))
                for (int u = 0; u < k; ++u)
                    for (int b : sk.morphisms(t, u)) {
                        const int c = sk.compose(t, u, a, b);
                        const std::string where = " (" + std::to_string(s) + "->" + std::to_string(t) + "->" +
                                                  std::to_string(u) + ")";
                        AxiomReport r = compare(M.push(s, u, c), (M.push(t, u, b) * M.push(s, t, a)).eval(),
                                                "push does not compose" + where);
                        if (!r.ok) return r;
                        r = compare(M.pull(s, u, c), (M.pull(s, t, a) * M.pull(t, u, b)).eval(),
                                    "pull does not compose" + where);
                        if (!r.ok) return r;
                    }
    return {};
}

namespace {

GMap canonical_projection(const GSetPtr& from, const GSetPtr& to) {
    // Base point eH goes to eK.
    return equivariant_extension(from, to, {0});
}

}  // namespace

std::vector<CartesianSquare> orbit_projection_squares(const LatticePtr& L, const GSetCaps& caps) {
    std::vector<CartesianSquare> out;
    const int k = L->class_count();
    std::vector<GSetPtr> orbit(k);
    for (int c = 0; c < k; ++c) orbit[c] = homogeneous_gset(L, L->class_rep(c));
    for (int c = 0; c < k; ++c) {
        std::vector<int> below;
        for (int a = 0; a < k; ++a)
            if (L->rep(a).is_subset_of(L->rep(c))) below.push_back(a);
        for (int a : below)
            for (int b : below) {
                if (static_cast<std::int64_t>(orbit[a]->size()) * orbit[b]->size() > caps.max_points) continue;
                out.push_back(pullback_square(canonical_projection(orbit[a], orbit[c]),
                                              canonical_projection(orbit[b], orbit[c]), caps));
            }
    }
    return out;
}

std::vector<CartesianSquare> random_squares(const LatticePtr& L, int count, std::uint64_t seed, const GSetCaps& caps) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
    auto stabilizer_of = [&](const GSet& S, int y) {
        std::vector<int> st;
        for (int g = 0; g < L->group().order(); ++g)
            if (S.act(g, y) == y) st.push_back(g);
        return L->find(st);
    };
    auto random_orbits = [&](int orbits) {
        std::vector<int> ids;
        for (int i = 0; i < orbits; ++i) ids.push_back(pick(L->size()));
        return disjoint_union_of_orbits(L, ids);
    };
    // A union of one or two orbits mapping to T, each base sent to a random
    // point y of T with stabilizer chosen among the subgroups of Stab(y).
    auto random_map_into = [&](const GSetPtr& T) {
        const int orbits = 1 + pick(2);
        std::vector<int> ids, images;
        for (int i = 0; i < orbits; ++i) {
            const int y = pick(T->size());
            const auto subs = L->subgroups_of(stabilizer_of(*T, y));
            ids.push_back(subs[pick(static_cast<int>(subs.size()))]);
            images.push_back(y);
        }
        auto S = disjoint_union_of_orbits(L, ids);
        // Orbits of a disjoint union appear in summand order, with base at the least point.
        return equivariant_extension(S, T, images);
    };
    std::vector<CartesianSquare> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count && attempts < 50 * count + 100) {
        ++attempts;
        auto S0 = random_orbits(1 + pick(2));
        auto f1 = random_map_into(S0);
        auto f2 = random_map_into(S0);
        if (static_cast<std::int64_t>(f1.source->size()) * f2.source->size() > caps.max_points) continue;
        out.push_back(pullback_square(f1, f2, caps));
    }
    return out;
}

SquareCampaign check_squares(const MackeyFunctor& M, const std::vector<CartesianSquare>& squares) {
    SquareCampaign c;
    for (std::size_t i = 0; i < squares.size(); ++i) {
        ++c.squares;
        auto r = check_mackey_axioms(M, squares[i]);
        if (r.ok) {
            ++c.passed;
        } else if (!c.first_failure) {
            c.first_failure = r;
            c.failure_index = static_cast<int>(i);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------

namespace {

// Orbit-level description of the projections pr_i: S^n -> S^{n-1}.
struct LevelData {
    std::vector<int> orbit_class;
    // link[o * n + (i - 1)] = (target orbit at level n-1, coset)
    std::vector<std::pair<int, int>> link;
};

std::vector<LevelData> explicit_levels(const OrbitSkeleton& sk, const GSetPtr& S, int n_max, const GSetCaps& caps) {
    std::vector<LevelData> out(n_max + 1);
    std::vector<GSetPtr> P{point_gset(S->lattice_ptr())};
    for (int n = 1; n <= n_max; ++n) P.push_back(product(P.back(), S, caps));
    for (const auto& o : P[0]->orbits()) out[0].orbit_class.push_back(o.class_id);
    const int s = S->size();
    for (int n = 1; n <= n_max; ++n) {
        const auto& Pn = P[n];
        for (const auto& o : Pn->orbits()) out[n].orbit_class.push_back(o.class_id);
        out[n].link.resize(Pn->orbits().size() * n);
        for (int i = 1; i <= n; ++i) {
            // Omit coordinate i (1-based) of the lexicographic index.
            std::vector<int> m(Pn->size());
            std::int64_t hi_div = 1;
            for (int k = i; k < n; ++k) hi_div *= s;  // weight of coordinate i
            for (int x = 0; x < Pn->size(); ++x) {
                const std::int64_t low = x % hi_div;
                const std::int64_t high = x / (hi_div * s);
                m[x] = static_cast<int>(high * hi_div + low);
            }
            GMap pr{Pn, P[n - 1], std::move(m)};
            for (int o = 0; o < static_cast<int>(Pn->orbits().size()); ++o) {
                const auto om = orbit_morphism(sk, pr, o);
                out[n].link[o * n + (i - 1)] = {om.target_orbit, om.coset};
            }
        }
    }
    return out;
}

std::vector<LevelData> tower_levels(const OrbitSkeleton& sk, const GSetPtr& S, int n_max) {
    OrbitTower T(S, n_max);
    std::vector<LevelData> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const auto& nodes = T.level(n);
        out[n].orbit_class.reserve(nodes.size());
        for (const auto& nd : nodes) out[n].orbit_class.push_back(nd.class_id);
        if (n == 0) continue;
        out[n].link.resize(nodes.size() * n);
        std::vector<int> face(n - 1);
        for (std::size_t o = 0; o < nodes.size(); ++o) {
            const auto& a = nodes[o].anchor;
            for (int i = 1; i <= n; ++i) {
                for (int k = 0, w = 0; k < n; ++k)
                    if (k != i - 1) face[w++] = a[k];
                const auto [to, g] = T.locate(face);
                const int t = T.level(n - 1)[to].class_id;
                out[n].link[o * n + (i - 1)] = {to, sk.coset_of(t, g)};
            }
        }
    }
    return out;
}

}  // namespace

FgAbelianGroup DressComplex::homology(int n) const {
    if (n < 0 || n >= n_max) throw Error(ErrorCode::DegreeOutOfRange, "Dress homology needs n < n_max");
    return dress::homology(complex, variance == Variance::Covariant ? n : n_max - n);
}

DressComplex dress_complex(const MackeyFunctor& M, const GSetPtr& S, const DressOptions& opt) {
    require_same_lattice(M, *S);
    if (S->size() == 0) throw Error(ErrorCode::EmptyGSet, "Dress complex of the empty G-set");
    if (opt.n_max < 1) throw Error(ErrorCode::DegreeOutOfRange, "n_max must be positive");
    double points = 1;
    for (int i = 0; i < opt.n_max; ++i) points *= S->size();
    if (points > static_cast<double>(opt.max_points))
        throw Error(ErrorCode::CapExceeded, "|S|^n_max exceeds the point cap");
    const auto& sk = M.skeleton();
    GSetCaps caps;
    caps.max_points = opt.max_points;
    auto levels = opt.explicit_products ? explicit_levels(sk, S, opt.n_max, caps) : tower_levels(sk, S, opt.n_max);

    DressComplex D;
    D.variance = opt.variance;
    D.n_max = opt.n_max;
    std::vector<std::vector<int>> offset(opt.n_max + 1);
    for (int n = 0; n <= opt.n_max; ++n) {
        int r = 0;
        for (int c : levels[n].orbit_class) {
            offset[n].push_back(r);
            r += M.rank(c);
        }
        D.ranks.push_back(r);
        D.orbits.push_back(static_cast<int>(levels[n].orbit_class.size()));
    }
    const bool cov = opt.variance == Variance::Covariant;
    std::vector<int> stored(D.ranks);
    if (!cov) std::reverse(stored.begin(), stored.end());
    D.complex = ChainComplex(stored);
    for (int n = 1; n <= opt.n_max; ++n) {
        SparseIntMatrix c = cov ? SparseIntMatrix(D.ranks[n - 1], D.ranks[n]) : SparseIntMatrix(D.ranks[n], D.ranks[n - 1]);
        const auto& lv = levels[n];
        for (std::size_t o = 0; o < lv.orbit_class.size(); ++o) {
            const int s = lv.orbit_class[o];
            for (int i = 1; i <= n; ++i) {
                const auto [to, coset] = lv.link[o * n + (i - 1)];
                const int t = levels[n - 1].orbit_class[to];
                const Integer sign(i % 2 == 0 ? 1 : -1);
                const IntMatrix& B = cov ? M.push(s, t, coset) : M.pull(s, t, coset);
                const int r0 = cov ? offset[n - 1][to] : offset[n][o];
                const int c0 = cov ? offset[n][o] : offset[n - 1][to];
                for (Eigen::Index a = 0; a < B.rows(); ++a)
                    for (Eigen::Index b = 0; b < B.cols(); ++b)
                        if (!B(a, b).is_zero()) c.add(r0 + static_cast<int>(a), c0 + static_cast<int>(b), sign * B(a, b));
            }
        }
        c.finalize();
        D.complex.set_boundary(cov ? n : opt.n_max - n + 1, std::move(c));
    }
    D.complex.verify();
    return D;
}

// ---------------------------------------------------------------------------

ProjectivityReport is_s_projective(const MackeyFunctor& M, const GSetPtr& S) {
    if (S->size() == 0) throw Error(ErrorCode::EmptyGSet, "S-projectivity over the empty G-set");
    auto theta = induced_maps(M, projection_to_point(S)).push;
    auto c = cokernel_of(theta);
    return {c.is_surjective, c.group};
}

ProjectivityReport is_s_projective(const GreenFunctor& U, const GSetPtr& S) { return is_s_projective(U.mackey, S); }

bool is_natural(const MackeyFunctor& A, const MackeyFunctor& B, const std::vector<IntMatrix>& cmp) {
    const auto& sk = A.skeleton();
    for (int s = 0; s < sk.class_count(); ++s)
        for (int t = 0; t < sk.class_count(); ++t)
            for (int k = 0; k < static_cast<int>(sk.morphisms(s, t).size()); ++k) {
                if ((cmp[t] * A.push_at(s, t, k)).eval() != (B.push_at(s, t, k) * cmp[s]).eval()) return false;
                if ((cmp[s] * A.pull_at(s, t, k)).eval() != (B.pull_at(s, t, k) * cmp[t]).eval()) return false;
            }
    return true;
}

MSubS m_sub_s(const MackeyFunctor& M, const GSetPtr& S, const GSetCaps& caps) {
    require_same_lattice(M, *S);
    if (S->size() == 0) throw Error(ErrorCode::EmptyGSet, "M_S over the empty G-set");
    const auto& sk = M.skeleton();
    const auto& G = sk.lattice().group();
    const int k = sk.class_count();
    std::vector<GSetPtr> prod(k);
    std::vector<int> ranks(k);
    MSubS out;
    out.theta_lower.direction = Variance::Covariant;
    out.theta_upper.direction = Variance::Contravariant;
    for (int c = 0; c < k; ++c) {
        prod[c] = product(S, sk.orbit(c), caps);
        ranks[c] = evaluate_on_gset(M, prod[c]).rank;
        auto pr = product_projections(S, sk.orbit(c), prod[c]).second;
        auto im = induced_maps(M, pr);
        out.theta_lower.components.push_back(std::move(im.push));
        out.theta_upper.components.push_back(std::move(im.pull));
    }
    auto lift = [&](int s, int t, int coset) {
        // id_S x phi: (x, u) -> (x, u g) with g the coset representative.
        const int g = sk.coset_rep(t, coset);
        const int ns = sk.coset_count(s), nt = sk.coset_count(t);
        std::vector<int> m(prod[s]->size());
        for (int x = 0; x < S->size(); ++x)
            for (int u = 0; u < ns; ++u) m[x * ns + u] = x * nt + sk.coset_of(t, G.mul(sk.coset_rep(s, u), g));
        return GMap{prod[s], prod[t], std::move(m)};
    };
    out.functor = tabulate_mackey(
        M.skeleton_ptr(), ranks, [&](int s, int t, int coset) { return induced_maps(M, lift(s, t, coset)).push; },
        [&](int s, int t, int coset) { return induced_maps(M, lift(s, t, coset)).pull; }, M.name() + "_S");
    out.natural = is_natural(out.functor, M, out.theta_lower.components) &&
                  is_natural(M, out.functor, out.theta_upper.components);
    return out;
}

SplittingReport find_theta_splitting(const MackeyFunctor& M, const GSetPtr& S, const GSetCaps& caps,
                                     std::int64_t max_dense_entries) {
    auto ms = m_sub_s(M, S, caps);
    const auto& N = ms.functor;
    const auto& sk = M.skeleton();
    const int k = sk.class_count();
    // Unknown rho_c is rank(c) x rank_S(c), stored row-major after offset[c].
    std::vector<int> offset(k + 1, 0);
    for (int c = 0; c < k; ++c) offset[c + 1] = offset[c] + M.rank(c) * N.rank(c);
    const int unknowns = offset[k];
    auto var = [&](int c, int i, int j) { return offset[c] + i * N.rank(c) + j; };

    std::vector<std::vector<std::pair<int, Integer>>> rows;
    std::vector<Integer> rhs;
    auto emit = [&](std::vector<std::pair<int, Integer>> row, Integer b) {
        std::erase_if(row, [](const auto& e) { return e.second.is_zero(); });
        if (row.empty() && b.is_zero()) return;
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    };
    for (int c = 0; c < k; ++c) {
        const IntMatrix& th = ms.theta_upper.components[c];  // rank_S(c) x rank(c)
        for (int i = 0; i < M.rank(c); ++i)
            for (int j = 0; j < M.rank(c); ++j) {
                std::vector<std::pair<int, Integer>> row;
                for (int l = 0; l < N.rank(c); ++l) row.emplace_back(var(c, i, l), th(l, j));
                emit(std::move(row), Integer(i == j ? 1 : 0));
            }
    }
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (int m = 0; m < static_cast<int>(sk.morphisms(s, t).size()); ++m) {
                const IntMatrix& Np = N.push_at(s, t, m);  // rank_S(t) x rank_S(s)
                const IntMatrix& Mp = M.push_at(s, t, m);  // rank(t) x rank(s)
                for (int i = 0; i < M.rank(t); ++i)
                    for (int j = 0; j < N.rank(s); ++j) {
                        std::vector<std::pair<int, Integer>> row;
                        for (int l = 0; l < N.rank(t); ++l) row.emplace_back(var(t, i, l), Np(l, j));
                        for (int l = 0; l < M.rank(s); ++l) row.emplace_back(var(s, l, j), -Mp(i, l));
                        emit(std::move(row), Integer(0));
                    }
                const IntMatrix& Nq = N.pull_at(s, t, m);  // rank_S(s) x rank_S(t)
                const IntMatrix& Mq = M.pull_at(s, t, m);  // rank(s) x rank(t)
                for (int i = 0; i < M.rank(s); ++i)
                    for (int j = 0; j < N.rank(t); ++j) {
                        std::vector<std::pair<int, Integer>> row;
                        for (int l = 0; l < N.rank(s); ++l) row.emplace_back(var(s, i, l), Nq(l, j));
                        for (int l = 0; l < M.rank(t); ++l) row.emplace_back(var(t, l, j), -Mq(i, l));
                        emit(std::move(row), Integer(0));
                    }
            }
    SplittingReport rep;
    rep.unknowns = unknowns;
    rep.equations = static_cast<int>(rows.size());
    // Solvability first, sparsely: b lies in the column span of A exactly
    // when appending b leaves the invariant factors unchanged.
    SparseIntMatrix As(static_cast<int>(rows.size()), unknowns), Ab(static_cast<int>(rows.size()), unknowns + 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [v, x] : rows[r]) {
            As.add(static_cast<int>(r), v, x);
            Ab.add(static_cast<int>(r), v, x);
        }
        Ab.add(static_cast<int>(r), unknowns, rhs[r]);
    }
    As.finalize();
    Ab.finalize();
    if (sparse_invariant_factors(As) != sparse_invariant_factors(Ab)) return rep;
    rep.split = true;
    As.finalize();
    IntVector b(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) b(static_cast<Eigen::Index>(r)) = rhs[r];
    auto sol = solve_sparse(As, b, max_dense_entries);
    if (sol.status == SparseSolveResult::Status::Infeasible) throw std::logic_error("sparse solvability and elimination disagree");
    if (sol.status == SparseSolveResult::Status::TooLarge) return rep;
    rep.retraction_computed = true;
    for (int c = 0; c < k; ++c) {
        IntMatrix rho(M.rank(c), N.rank(c));
        for (int i = 0; i < M.rank(c); ++i)
            for (int j = 0; j < N.rank(c); ++j) rho(i, j) = (*sol.solution)(var(c, i, j));
        rep.retraction.push_back(std::move(rho));
    }
    return rep;
}

// ---------------------------------------------------------------------------

PairingReport check_green_pairing(const Pairing& P) {
    const GreenFunctor& U = *P.ring;
    const MackeyFunctor& M = *P.module;
    const auto& sk = M.skeleton();
    const int k = sk.class_count();
    const auto& Um = U.mackey;
    auto act = [&](int c, const IntVector& x) { return combination(P.action[c], x, M.rank(c)); };
    auto fail = [](const char* what, int s, int t, int coset, int x, int y) {
        PairingReport r;
        r.ok = false;
        r.identity = what;
        r.source_class = s;
        r.target_class = t;
        r.coset = coset;
        r.x = x;
        r.y = y;
        return r;
    };
    for (int c = 0; c < k; ++c) {
        const int m = M.rank(c);
        if (act(c, U.unit[c]) != IntMatrix::Identity(m, m)) return fail("unit acts as identity", c, c, -1, -1, -1);
        for (int i = 0; i < Um.rank(c); ++i)
            for (int j = 0; j < Um.rank(c); ++j) {
                const IntVector xy = U.mult[c][i].col(j);
                if (act(c, xy) != (P.action[c][i] * P.action[c][j]).eval())
                    return fail("associativity (x x') y = x (x' y)", c, c, -1, i, j);
            }
    }
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (int coset : sk.morphisms(s, t)) {
                const IntMatrix& Upush = Um.push(s, t, coset);
                const IntMatrix& Upull = Um.pull(s, t, coset);
                const IntMatrix& Mpush = M.push(s, t, coset);
                const IntMatrix& Mpull = M.pull(s, t, coset);
                if ((Upull * U.unit[t]).eval() != U.unit[s]) return fail("restriction preserves units", s, t, coset, -1, -1);
                for (int i = 0; i < Um.rank(t); ++i) {
                    const IntMatrix ax = act(s, Upull.col(i));
                    for (int j = 0; j < M.rank(t); ++j)
                        if ((Mpull * P.action[t][i].col(j)).eval() != (ax * Mpull.col(j)).eval())
                            return fail("M^*(f)(x y) = U^*(f)(x) M^*(f)(y)", s, t, coset, i, j);
                    for (int j = 0; j < M.rank(s); ++j)
                        if ((P.action[t][i] * Mpush.col(j)).eval() != (Mpush * ax.col(j)).eval())
                            return fail("x M_*(f)(y) = M_*(f)(U^*(f)(x) y)", s, t, coset, i, j);
                }
                for (int i = 0; i < Um.rank(s); ++i) {
                    const IntMatrix ax = act(t, Upush.col(i));
                    for (int j = 0; j < M.rank(t); ++j)
                        if (ax.col(j) != (Mpush * (P.action[s][i] * Mpull.col(j))).eval())
                            return fail("U_*(f)(x) y = M_*(f)(x M^*(f)(y))", s, t, coset, i, j);
                }
            }
    return {};
}

// ---------------------------------------------------------------------------

namespace {

IntMatrix shaped_matrix(const nlohmann::json& j, int rows, int cols) {
    if (rows == 0 || cols == 0) return IntMatrix::Zero(rows, cols);
    IntMatrix A = matrix_from_json(j);
    if (A.rows() != rows || A.cols() != cols) throw Error(ErrorCode::InvalidFunctorData, "matrix has wrong shape");
    return A;
}

}  // namespace

nlohmann::json mackey_to_json(const MackeyFunctor& M) {
    const auto& sk = M.skeleton();
    const auto& L = sk.lattice();
    nlohmann::json classes = nlohmann::json::array(), morphisms = nlohmann::json::array();
    for (int c = 0; c < sk.class_count(); ++c) classes.push_back({{"elements", L.rep(c).elements}, {"rank", M.rank(c)}});
    for (int s = 0; s < sk.class_count(); ++s)
        for (int t = 0; t < sk.class_count(); ++t)
            for (int coset : sk.morphisms(s, t))
                morphisms.push_back({{"source", s},
                                     {"target", t},
                                     {"coset_rep", sk.coset_rep(t, coset)},
                                     {"push", matrix_to_json(M.push(s, t, coset))},
                                     {"pull", matrix_to_json(M.pull(s, t, coset))}});
    return {{"name", M.name()}, {"group", group_spec_json(L.group())}, {"classes", classes}, {"morphisms", morphisms}};
}

MackeyFunctor mackey_from_json(const nlohmann::json& j) {
    try {
        auto G = std::make_shared<const FiniteGroup>(build_group(j.at("group")));
        auto L = std::make_shared<const SubgroupLattice>(G);
        auto sk = std::make_shared<const OrbitSkeleton>(L);
        const auto& classes = j.at("classes");
        if (static_cast<int>(classes.size()) != sk->class_count())
            throw Error(ErrorCode::InvalidFunctorData, "class count does not match the group");
        std::vector<int> ranks;
        for (int c = 0; c < sk->class_count(); ++c) {
            if (classes[c].at("elements").get<std::vector<int>>() != L->rep(c).elements)
                throw Error(ErrorCode::InvalidFunctorData, "class representative differs from the canonical one");
            ranks.push_back(classes[c].at("rank").get<int>());
        }
        MackeyFunctor M(sk, ranks, j.value("name", std::string{}));
        std::vector<std::vector<std::vector<char>>> seen(sk->class_count(), std::vector<std::vector<char>>(sk->class_count()));
        for (int s = 0; s < sk->class_count(); ++s)
            for (int t = 0; t < sk->class_count(); ++t) seen[s][t].assign(sk->morphisms(s, t).size(), 0);
        for (const auto& m : j.at("morphisms")) {
            const int s = m.at("source"), t = m.at("target");
            if (s < 0 || t < 0 || s >= sk->class_count() || t >= sk->class_count())
                throw Error(ErrorCode::InvalidFunctorData, "morphism class out of range");
            const int coset = sk->coset_of(t, m.at("coset_rep").get<int>());
            const int pos = sk->morphism_position(s, t, coset);
            if (pos < 0) throw Error(ErrorCode::InvalidFunctorData, "coset is not a morphism");
            M.set_push(s, t, coset, shaped_matrix(m.at("push"), ranks[t], ranks[s]));
            M.set_pull(s, t, coset, shaped_matrix(m.at("pull"), ranks[s], ranks[t]));
            seen[s][t][pos] = 1;
        }
        for (auto& a : seen)
            for (auto& b : a)
                for (char x : b)
                    if (!x) throw Error(ErrorCode::InvalidFunctorData, "missing morphism data");
        return M;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidFunctorData, e.what());
    }
}

nlohmann::json green_to_json(const GreenFunctor& U) {
    auto j = mackey_to_json(U.mackey);
    nlohmann::json mult = nlohmann::json::array(), unit = nlohmann::json::array();
    for (std::size_t c = 0; c < U.mult.size(); ++c) {
        nlohmann::json per = nlohmann::json::array();
        for (const auto& m : U.mult[c]) per.push_back(matrix_to_json(m));
        mult.push_back(per);
        nlohmann::json u = nlohmann::json::array();
        for (Eigen::Index i = 0; i < U.unit[c].size(); ++i) u.push_back(U.unit[c](i).str());
        unit.push_back(u);
    }
    j["multiplication"] = mult;
    j["unit"] = unit;
    return j;
}

GreenFunctor green_from_json(const nlohmann::json& j) {
    GreenFunctor U;
    U.mackey = mackey_from_json(j);
    try {
        const int k = U.mackey.skeleton().class_count();
        if (static_cast<int>(j.at("multiplication").size()) != k || static_cast<int>(j.at("unit").size()) != k)
            throw Error(ErrorCode::InvalidFunctorData, "ring data per class needed");
        for (int c = 0; c < k; ++c) {
            const int r = U.mackey.rank(c);
            std::vector<IntMatrix> per;
            const auto& mj = j["multiplication"][c];
            if (static_cast<int>(mj.size()) != r) throw Error(ErrorCode::InvalidFunctorData, "one matrix per basis element");
            for (const auto& m : mj) per.push_back(shaped_matrix(m, r, r));
            U.mult.push_back(std::move(per));
            const auto& uj = j["unit"][c];
            if (static_cast<int>(uj.size()) != r) throw Error(ErrorCode::InvalidFunctorData, "unit has wrong length");
            IntVector u(r);
            for (int i = 0; i < r; ++i) u(i) = Integer(uj[i].get<std::string>());
            U.unit.push_back(std::move(u));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidFunctorData, e.what());
    }
    return U;
}

}  // namespace dress
