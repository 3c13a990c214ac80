#include "dress/coefficients.hpp"

#include <algorithm>
#include <regex>

#include "dress/error.hpp"

namespace dress {

namespace {

IntVector to_column(const std::vector<std::int64_t>& v) {
    IntVector c(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) c(static_cast<Eigen::Index>(i)) = v[i];
    return c;
}

LatticePtr make_lattice(const GroupPtr& G) { return std::make_shared<const SubgroupLattice>(G); }

}  // namespace

RepRing build_rep_ring_green(const SkeletonPtr& sk, int order_cap) {
    const auto& L = sk->lattice();
    const auto& G = L.group();
    const int k = sk->class_count();
    RepRing R;
    R.skeleton = sk;
    for (int c = 0; c < k; ++c) R.tables.push_back(character_table(G, L.rep(c).elements, G.exponent(), order_cap));
    const auto& T = R.tables;
    std::vector<int> ranks;
    for (const auto& t : T) ranks.push_back(t.class_count());

    auto push = [&](int s, int t, int coset) {
        const int g = sk->coset_rep(t, coset), gi = G.inv(g);
        const auto& Ts = T[s];
        const auto& Tt = T[t];
        IntMatrix out(ranks[t], ranks[s]);
        for (int i = 0; i < ranks[s]; ++i) {
            ClassFunction f;
            for (int cls = 0; cls < Tt.class_count(); ++cls) {
                const int y = Tt.representative(cls);
                Cyclotomic v(Tt.modulus, 0);
                for (int x : Tt.elements) {
                    const int w = G.mul(G.mul(g, G.conjugate(x, y)), gi);
                    if (Ts.class_of[w] >= 0) v += Ts.rows[i][Ts.class_of[w]];
                }
                f.push_back(v.divided_by(Ts.order));
            }
            out.col(i) = to_column(decompose(Tt, f));
        }
        return out;
    };
    auto pull = [&](int s, int t, int coset) {
        const int g = sk->coset_rep(t, coset), gi = G.inv(g);
        const auto& Ts = T[s];
        const auto& Tt = T[t];
        IntMatrix out(ranks[s], ranks[t]);
        for (int j = 0; j < ranks[t]; ++j) {
            ClassFunction f;
            for (int cls = 0; cls < Ts.class_count(); ++cls) {
                const int h = Ts.representative(cls);
                f.push_back(Tt.rows[j][Tt.class_of[G.mul(G.mul(gi, h), g)]]);
            }
            out.col(j) = to_column(decompose(Ts, f));
        }
        return out;
    };
    R.green.mackey = tabulate_mackey(sk, ranks, push, pull, "R_C");
    for (int c = 0; c < k; ++c) {
        std::vector<IntMatrix> per;
        for (int i = 0; i < ranks[c]; ++i) {
            IntMatrix m(ranks[c], ranks[c]);
            for (int j = 0; j < ranks[c]; ++j) {
                ClassFunction f;
                for (int cls = 0; cls < ranks[c]; ++cls) f.push_back(T[c].rows[i][cls] * T[c].rows[j][cls]);
                m.col(j) = to_column(decompose(T[c], f));
            }
            per.push_back(std::move(m));
        }
        R.green.mult.push_back(std::move(per));
        IntVector u = IntVector::Zero(ranks[c]);
        u(0) = 1;
        R.green.unit.push_back(std::move(u));
    }
    return R;
}

RepRing build_rep_ring_green(const GroupPtr& G, int order_cap) {
    return build_rep_ring_green(std::make_shared<const OrbitSkeleton>(make_lattice(G)), order_cap);
}

// ---------------------------------------------------------------------------

TableOfMarks table_of_marks(const SubgroupLattice& L) {
    const auto& G = L.group();
    const int k = L.class_count();
    TableOfMarks T;
    T.marks = IntMatrix::Zero(k, k);
    for (int c = 0; c < k; ++c) T.classes.push_back(c);
    for (int h = 0; h < k; ++h) {
        const auto& H = L.rep(h);
        for (int q = 0; q < k; ++q) {
            const auto& K = L.rep(q);
            int count = 0;
            for (int x = 0; x < G.order(); ++x) {
                const int xi = G.inv(x);
                bool inside = true;
                for (int e : K.elements)
                    if (!H.contains(G.conjugate(xi, e))) {
                        inside = false;
                        break;
                    }
                count += inside;
            }
            T.marks(h, q) = count / H.order;
        }
    }
    return T;
}

namespace {

// Stabilizers in K of orbit representatives of K acting on the left cosets
// of J in H (K, J <= H). Returned as lattice ids.
std::vector<int> orbit_stabilizers(const SubgroupLattice& L, const Subgroup& K, const Subgroup& H, const Subgroup& J) {
    const auto& G = L.group();
    std::vector<int> coset(G.order(), -1);
    std::vector<int> reps;
    for (int u : H.elements) {
        if (coset[u] >= 0) continue;
        for (int j : J.elements) coset[G.mul(u, j)] = static_cast<int>(reps.size());
        reps.push_back(u);
    }
    std::vector<char> seen(reps.size(), 0);
    std::vector<int> out;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        if (seen[r]) continue;
        std::vector<int> stab;
        for (int k : K.elements) {
            const int c = coset[G.mul(k, reps[r])];
            seen[c] = 1;
            if (c == static_cast<int>(r)) stab.push_back(k);
        }
        out.push_back(L.find(stab));
    }
    return out;
}

}  // namespace

Burnside build_burnside_green(const SkeletonPtr& sk) {
    const auto& L = sk->lattice();
    const auto& G = L.group();
    const int k = sk->class_count();
    Burnside B;
    B.skeleton = sk;
    B.marks = table_of_marks(L);
    // index[c][id] = basis index of the H_c-class of subgroup id, or -1.
    std::vector<std::vector<int>> index(k, std::vector<int>(L.size(), -1));
    for (int c = 0; c < k; ++c) {
        const auto& H = L.rep(c);
        std::vector<int> basis;
        for (int id : L.subgroups_of(L.class_rep(c))) {
            if (index[c][id] >= 0) continue;
            const int b = static_cast<int>(basis.size());
            basis.push_back(id);
            for (int x : H.elements) index[c][L.conjugate(id, x)] = b;
        }
        B.basis.push_back(std::move(basis));
    }
    std::vector<int> ranks;
    for (const auto& b : B.basis) ranks.push_back(static_cast<int>(b.size()));

    auto push = [&](int s, int t, int coset) {
        const int gi = G.inv(sk->coset_rep(t, coset));
        IntMatrix out = IntMatrix::Zero(ranks[t], ranks[s]);
        for (int i = 0; i < ranks[s]; ++i) out(index[t][L.conjugate(B.basis[s][i], gi)], i) += 1;
        return out;
    };
    auto pull = [&](int s, int t, int coset) {
        const int g = sk->coset_rep(t, coset);
        const int K = L.conjugate(L.class_rep(s), G.inv(g));
        IntMatrix out = IntMatrix::Zero(ranks[s], ranks[t]);
        for (int j = 0; j < ranks[t]; ++j)
            for (int st : orbit_stabilizers(L, L.subgroup(K), L.rep(t), L.subgroup(B.basis[t][j])))
                out(index[s][L.conjugate(st, g)], j) += 1;
        return out;
    };
    B.green.mackey = tabulate_mackey(sk, ranks, push, pull, "A");
    for (int c = 0; c < k; ++c) {
        std::vector<IntMatrix> per;
        for (int i = 0; i < ranks[c]; ++i) {
            IntMatrix m = IntMatrix::Zero(ranks[c], ranks[c]);
            for (int j = 0; j < ranks[c]; ++j)
                for (int st : orbit_stabilizers(L, L.subgroup(B.basis[c][i]), L.rep(c), L.subgroup(B.basis[c][j])))
                    m(index[c][st], j) += 1;
            per.push_back(std::move(m));
        }
        B.green.mult.push_back(std::move(per));
        IntVector u = IntVector::Zero(ranks[c]);
        u(ranks[c] - 1) = 1;
        B.green.unit.push_back(std::move(u));
    }
    return B;
}

Burnside build_burnside_green(const GroupPtr& G) {
    return build_burnside_green(std::make_shared<const OrbitSkeleton>(make_lattice(G)));
}

// ---------------------------------------------------------------------------

Coefficients Coefficients::parse(const std::string& s) {
    if (s == "Z") return {};
    if (s == "Q") return {Kind::Q, 0};
    static const std::regex local(R"((?:Zp:|Z_\(|Z_|Z)(\d+)\)?)");
    std::smatch m;
    if (std::regex_match(s, m, local)) {
        const int p = std::stoi(m[1]);
        if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
        return {Kind::Zp, p};
    }
    throw Error(ErrorCode::ConfigError, "unknown coefficients '" + s + "'");
}

std::string Coefficients::str() const {
    switch (kind) {
        case Kind::Z: return "Z";
        case Kind::Q: return "Q";
        case Kind::Zp: return "Z_(" + std::to_string(p) + ")";
    }
    return "?";
}

InductionReport induction_cokernel(const MackeyFunctor& M, const Family& F, const Coefficients& coeff) {
    const auto& sk = M.skeleton();
    if (F.lattice.get() != sk.lattice_ptr().get()) throw Error(ErrorCode::FamilyGroupMismatch, "family over another lattice");
    if (F.empty()) throw Error(ErrorCode::EmptyFamily, "induction from the empty family");
    const int w = sk.lattice().class_of(sk.lattice().whole());
    int cols = 0;
    for (int c : F.classes) cols += M.rank(c);
    InductionReport r;
    r.group = sk.lattice().group().name();
    r.family = F.tag;
    r.coefficients = coeff;
    r.matrix = IntMatrix::Zero(M.rank(w), cols);
    int at = 0;
    for (int c : F.classes) {
        r.matrix.middleCols(at, M.rank(c)) = M.push(c, w, sk.morphisms(c, w).front());
        at += M.rank(c);
    }
    r.integral = cokernel_of(r.matrix).group;
    switch (coeff.kind) {
        case Coefficients::Kind::Z: r.cokernel = r.integral; break;
        case Coefficients::Kind::Zp: r.cokernel = r.integral.localized_at(coeff.p); break;
        case Coefficients::Kind::Q: r.cokernel = r.integral.rationalized(); break;
    }
    r.surjective = r.cokernel.is_trivial();
    if (r.cokernel.is_finite()) r.artin_exponent = r.cokernel.exponent();
    return r;
}

nlohmann::json induction_report_to_json(const InductionReport& r) {
    nlohmann::json j = {{"group", r.group},
                        {"family", r.family},
                        {"coefficients", r.coefficients.str()},
                        {"cokernel", r.cokernel},
                        {"surjective", r.surjective}};
    j["artin_exponent"] = r.artin_exponent ? integer_to_json(*r.artin_exponent) : nlohmann::json(nullptr);
    return j;
}

}  // namespace dress
