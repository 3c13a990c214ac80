#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dress/coefficients.hpp"
#include "dress/corpus.hpp"
#include "dress/error.hpp"

using namespace dress;

namespace {

struct Setup {
    LatticePtr L;
    SkeletonPtr sk;
    explicit Setup(const std::string& name)
        : L(std::make_shared<const SubgroupLattice>(named_group(name))), sk(std::make_shared<const OrbitSkeleton>(L)) {}
    int whole() const { return L->class_of(L->whole()); }
    int trivial() const { return L->class_of(L->trivial()); }
};

// Burnside functor with the induction 1 -> G doubled.
MackeyFunctor corrupted_burnside(const Burnside& B) {
    MackeyFunctor M = B.green.mackey;
    const auto& L = B.skeleton->lattice();
    const int one = L.class_of(L.trivial()), w = L.class_of(L.whole());
    M.set_push(one, w, 0, (M.push(one, w, 0) * Integer(2)).eval());
    M.set_name("A-corrupted");
    return M;
}

}  // namespace

TEST_CASE("evaluation and induced maps") {
    Setup s("S3");
    auto R = build_rep_ring_green(s.sk);
    const auto& M = R.green.mackey;
    auto S = family_gset(family_from_class(s.L, "FCY"));
    auto e = evaluate_on_gset(M, S);
    // G/C2 and G/C3: R(C2) + R(C3) = 2 + 3.
    CHECK(e.rank == 5);
    auto id = induced_maps(M, identity_map(S));
    CHECK(id.push == IntMatrix::Identity(5, 5));
    CHECK(id.pull == IntMatrix::Identity(5, 5));
    auto pr = induced_maps(M, projection_to_point(S));
    CHECK(pr.push.rows() == 3);
    CHECK(induced_push_sparse(M, projection_to_point(S)).to_dense() == pr.push);
    CHECK(induced_pull_sparse(M, projection_to_point(S)).to_dense() == pr.pull);
    // Composition of G-maps matches composition of induced maps.
    auto P = product(S, S);
    auto [p1, p2] = product_projections(S, S, P);
    GMap q{P, point_gset(s.L), std::vector<int>(P->size(), 0)};
    auto a = induced_maps(M, p1), b = induced_maps(M, projection_to_point(S)), c = induced_maps(M, q);
    CHECK((b.push * a.push).eval() == c.push);
    CHECK((a.pull * b.pull).eval() == c.pull);
    auto other = std::make_shared<const SubgroupLattice>(named_group("S3"));
    CHECK_THROWS_AS(evaluate_on_gset(M, point_gset(other)), Error);
}

TEST_CASE("axiom checks on every corpus group of order at most 24") {
    for (const char* name : {"C3", "C6", "S3", "Q8", "D4", "A4", "D6", "C2xC4", "(C2)^3", "S4", "SL(2,3)"}) {
        INFO(name);
        Setup s(name);
        auto R = build_rep_ring_green(s.sk);
        auto B = build_burnside_green(s.sk);
        auto squares = orbit_projection_squares(s.L);
        auto random = random_squares(s.L, 8, 11);
        CHECK(random.size() == 8);
        squares.insert(squares.end(), random.begin(), random.end());
        for (const MackeyFunctor* M : {&R.green.mackey, &B.green.mackey}) {
            auto c = check_squares(*M, squares);
            CHECK(c.squares > 0);
            CHECK(c.passed == c.squares);
        }
    }
}

TEST_CASE("random squares are reproducible") {
    Setup s("D4");
    auto a = random_squares(s.L, 5, 3), b = random_squares(s.L, 5, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].corner->size() == b[i].corner->size());
        CHECK(a[i].f1.point_map == b[i].f1.point_map);
    }
}

TEST_CASE("corrupted functor is caught with a witness") {
    Setup s("S3");
    auto B = build_burnside_green(s.sk);
    auto bad = corrupted_burnside(B);
    auto f = check_functoriality(bad);
    CHECK(!f.ok);
    auto c = check_squares(bad, orbit_projection_squares(s.L));
    REQUIRE(c.first_failure);
    CHECK(c.first_failure->witness.has_value());
    CHECK(c.first_failure->lhs != c.first_failure->rhs);
    CHECK(c.passed < c.squares);
}

TEST_CASE("additivity") {
    Setup s("A4");
    auto R = build_rep_ring_green(s.sk);
    auto X = homogeneous_gset(s.L, s.L->class_rep(1));
    auto Y = homogeneous_gset(s.L, s.L->whole());
    CHECK(check_additivity(R.green.mackey, X, Y).ok);
    CHECK(check_additivity(R.green.mackey, X, empty_gset(s.L)).ok);
}

TEST_CASE("Dress complex: explicit and tower routes agree") {
    for (const char* name : {"C2", "S3", "Q8"}) {
        Setup s(name);
        auto R = build_rep_ring_green(s.sk);
        auto B = build_burnside_green(s.sk);
        for (const char* tag : {"TR", "FCY"}) {
            auto S = family_gset(family_from_class(s.L, tag));
            for (const MackeyFunctor* M : {&R.green.mackey, &B.green.mackey})
                for (auto var : {Variance::Covariant, Variance::Contravariant}) {
                    DressOptions a;
                    a.n_max = 3;
                    a.variance = var;
                    DressOptions b = a;
                    b.explicit_products = true;
                    auto Da = dress_complex(*M, S, a);
                    auto Db = dress_complex(*M, S, b);
                    CHECK(Da.ranks == Db.ranks);
                    CHECK(Da.orbits == Db.orbits);
                    for (int n = 0; n < 3; ++n) CHECK(Da.homology(n) == Db.homology(n));
                }
        }
    }
}

TEST_CASE("Dress complex orbit counts and ranks") {
    Setup s("C2");
    auto B = build_burnside_green(s.sk);
    auto S = homogeneous_gset(s.L, s.L->trivial());
    auto D = dress_complex(B.green.mackey, S);
    // S^n = C2^n has 2^{n-1} free orbits for n >= 1.
    CHECK(D.orbits == std::vector<int>{1, 1, 2, 4});
    CHECK(D.ranks == std::vector<int>{2, 1, 2, 4});
    // Negative control: coker(ind from 1) in A(C2) is Z.
    CHECK(D.homology(0) == FgAbelianGroup::free(1));
    CHECK_THROWS_AS(D.homology(3), Error);
}

TEST_CASE("S containing a fixed point makes everything projective and acyclic") {
    for (const char* name : {"S3", "Q8", "A4"}) {
        Setup s(name);
        auto R = build_rep_ring_green(s.sk);
        auto B = build_burnside_green(s.sk);
        auto S = disjoint_union(homogeneous_gset(s.L, s.L->whole()), homogeneous_gset(s.L, s.L->trivial()));
        for (const MackeyFunctor* M : {&R.green.mackey, &B.green.mackey}) {
            CHECK(is_s_projective(*M, S).projective);
            for (auto var : {Variance::Covariant, Variance::Contravariant}) {
                DressOptions o;
                o.variance = var;
                auto D = dress_complex(*M, S, o);
                for (int n = 0; n < 3; ++n) CHECK(D.homology(n).is_trivial());
            }
        }
    }
}

TEST_CASE("projectivity matches H_0 of the Dress complex") {
    Setup s("S3");
    auto R = build_rep_ring_green(s.sk);
    auto B = build_burnside_green(s.sk);
    auto S = family_gset(family_from_class(s.L, "FCY"));
    auto pr = is_s_projective(R.green, S);
    CHECK(pr.projective);
    auto pb = is_s_projective(B.green, S);
    CHECK(!pb.projective);
    CHECK(pb.cokernel == dress_complex(B.green.mackey, S).homology(0));
    CHECK_THROWS_AS(is_s_projective(R.green, empty_gset(s.L)), Error);
}

TEST_CASE("caps") {
    Setup s("S3");
    auto R = build_rep_ring_green(s.sk);
    auto S = homogeneous_gset(s.L, s.L->trivial());
    DressOptions o;
    o.max_points = 100;
    CHECK_THROWS_AS(dress_complex(R.green.mackey, S, o), Error);
    CHECK_THROWS_AS(dress_complex(R.green.mackey, empty_gset(s.L)), Error);
}

TEST_CASE("M_S and splittings of theta") {
    struct Case {
        const char* group;
        const char* functor;
        const char* tag;
        bool with_point;
    };
    for (const Case& c : {Case{"C2", "A", "TR", false}, Case{"C3", "A", "TR", false}, Case{"S3", "R", "FCY", false},
                          Case{"S3", "A", "FCY", false}, Case{"Q8", "R", "FCY", false}, Case{"S3", "A", "TR", true},
                          Case{"C2", "R", "TR", false}, Case{"C4", "R", "TR", false}}) {
        INFO(c.group << " " << c.functor << " " << c.tag);
        Setup s(c.group);
        auto R = build_rep_ring_green(s.sk);
        auto B = build_burnside_green(s.sk);
        const MackeyFunctor& M = std::string(c.functor) == "A" ? B.green.mackey : R.green.mackey;
        auto S = family_gset(family_from_class(s.L, c.tag));
        if (c.with_point) S = disjoint_union(S, point_gset(s.L));
        auto ms = m_sub_s(M, S);
        CHECK(ms.natural);
        auto sp = find_theta_splitting(M, S);
        CHECK(sp.split == is_s_projective(M, S).projective);
        if (sp.split) {
            REQUIRE(sp.retraction_computed);
            for (int k = 0; k < s.sk->class_count(); ++k)
                CHECK((sp.retraction[k] * ms.theta_upper.components[k]).eval() ==
                      IntMatrix::Identity(M.rank(k), M.rank(k)));
            CHECK(is_natural(ms.functor, M, sp.retraction));
        }
    }
}

TEST_CASE("pairings") {
    Setup s("S3");
    auto R = build_rep_ring_green(s.sk);
    CHECK(check_green_pairing(self_pairing(R.green)).ok);
    auto P = self_pairing(R.green);
    for (auto& per : P.action)
        for (auto& m : per) m *= Integer(2);
    auto r = check_green_pairing(P);
    CHECK(!r.ok);
    CHECK(!r.identity.empty());
}

TEST_CASE("json round trip") {
    Setup s("D4");
    auto B = build_burnside_green(s.sk);
    auto j = mackey_to_json(B.green.mackey);
    auto M = mackey_from_json(j);
    CHECK(mackey_to_json(M) == j);
    auto bad = j;
    bad["classes"][0]["rank"] = 7;
    CHECK_THROWS_AS(mackey_from_json(bad), Error);
    CHECK_THROWS_AS(mackey_from_json(nlohmann::json::object()), Error);
}
