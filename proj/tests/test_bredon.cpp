#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dress/bredon.hpp"
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
    CategoryPtr category(const std::string& tag) const { return build_orbit_category(sk, family_from_class(L, tag)); }
};

}  // namespace

TEST_CASE("orbit category of C2 and S3") {
    Setup c2("C2");
    auto C = c2.category("FIN");
    REQUIRE(C->object_count() == 2);
    // Objects ordered by class: G/1 then G/C2.
    CHECK(C->hom(0, 0).size() == 2);
    CHECK(C->hom(0, 1).size() == 1);
    CHECK(C->hom(1, 1).size() == 1);
    CHECK(C->hom(1, 0).empty());
    CHECK(C->check_composition());

    Setup s3("S3");
    auto D = s3.category("FCY");
    CHECK(D->object_count() == 3);
    CHECK(D->check_composition());
    CHECK(D->object_of_class(s3.L->class_of(s3.L->whole())) == -1);
    auto E = s3.category("FIN");
    const int w = E->object_of_class(s3.L->class_of(s3.L->whole()));
    for (int x = 0; x < E->object_count(); ++x) CHECK(E->hom(x, w).size() == 1);
    CHECK(E->check_composition());

    Setup q8("Q8");
    CHECK_THROWS_AS(build_orbit_category(q8.sk, family_from_class(s3.L, "FCY")), Error);
    CHECK_THROWS_AS(build_orbit_category(q8.sk, Family{q8.L, {}, "empty"}), Error);
}

TEST_CASE("modules are functors") {
    for (const char* name : {"S3", "Q8", "A4"}) {
        Setup s(name);
        auto C = s.category("FIN");
        auto R = build_rep_ring_green(s.sk);
        auto B = build_burnside_green(s.sk);
        CHECK(check_functoriality(covariant_part(R.green.mackey, C)));
        CHECK(check_functoriality(covariant_part(B.green.mackey, C)));
        CHECK(check_functoriality(constant_module(C, family_gset(family_from_class(s.L, "FCY")))));
    }
}

TEST_CASE("standard resolution of C2 over the free orbit") {
    Setup s("C2");
    auto C = s.category("FIN");
    auto S = homogeneous_gset(s.L, s.L->trivial());
    auto P = standard_resolution(C, S, 3);
    for (int n = 0; n <= 3; ++n) {
        CHECK(P.ranks[n][0] == (1 << (n + 1)));
        CHECK(P.ranks[n][1] == 0);
        CHECK(check_functoriality(resolution_module(P, n)));
    }
    CHECK(P.natural);
    CHECK(P.exact);
    CHECK(P.homology[0][0] == FgAbelianGroup::free(1));
    CHECK(P.homology[1][0].is_trivial());
}

TEST_CASE("standard resolution is exact over its support") {
    for (const char* name : {"S3", "C4", "C2xC2", "Q8"}) {
        Setup s(name);
        auto C = s.category("FIN");
        for (const char* tag : {"TR", "FCY"}) {
            if (std::string(name) == "Q8" && std::string(tag) == "FCY") continue;
            auto P = standard_resolution(C, family_gset(family_from_class(s.L, tag)), 3);
            CHECK(P.natural);
            CHECK(P.exact);
        }
    }
    Setup s("S3");
    auto C = s.category("FIN");
    CHECK_THROWS_AS(standard_resolution(C, homogeneous_gset(s.L, s.L->trivial()), 3, 100), Error);
    CHECK_THROWS_AS(standard_resolution(C, empty_gset(s.L), 3), Error);
}

TEST_CASE("Tor with the whole group in the family is the value at G/G") {
    for (const char* name : {"C2", "S3", "Q8"}) {
        Setup s(name);
        auto C = s.category("FIN");
        auto R = build_rep_ring_green(s.sk);
        const int w = s.L->class_of(s.L->whole());
        TorOptions o;
        o.max_points = 25000;
        auto T = tor_complex_coend(covariant_part(R.green.mackey, C), o);
        CHECK(T.presentation_verified);
        CHECK(T.tor(0) == FgAbelianGroup::free(R.green.mackey.rank(w)));
        CHECK(T.tor(1).is_trivial());
        CHECK(T.tor(2).is_trivial());
        CHECK_THROWS_AS(T.tor(3), Error);
    }
}

TEST_CASE("Tor for the character ring of S3 over cyclic subgroups") {
    Setup s("S3");
    auto C = s.category("FCY");
    auto R = build_rep_ring_green(s.sk);
    for (int p = 0; p < 3; ++p) {
        auto r = tor_over_orbit_category(C, R.green.mackey, p);
        CHECK(r.route == TorRoute::Coend);
        REQUIRE(r.agrees_with_dress.has_value());
        CHECK(*r.agrees_with_dress);
        CHECK(r.group == (p == 0 ? FgAbelianGroup::free(3) : FgAbelianGroup{}));
    }
    CHECK_THROWS_AS(tor_over_orbit_category(C, R.green.mackey, 3), Error);
}

TEST_CASE("Tor of the Burnside functor of C_p over the trivial family") {
    for (const char* name : {"C2", "C3", "C5"}) {
        Setup s(name);
        auto C = s.category("TR");
        auto B = build_burnside_green(s.sk);
        auto r = tor_over_orbit_category(C, B.green.mackey, 0);
        CHECK(r.group == FgAbelianGroup::free(1));
        CHECK(r.agrees_with_dress.value_or(false));
    }
}

TEST_CASE("coend and shifted Dress routes agree") {
    for (const char* name : {"C4", "S3", "Q8", "D4", "C2xC2"}) {
        Setup s(name);
        auto R = build_rep_ring_green(s.sk);
        auto B = build_burnside_green(s.sk);
        for (const char* tag : {"TR", "FCY"}) {
            INFO(name << " " << tag);
            auto F = family_from_class(s.L, tag);
            auto C = build_orbit_category(s.sk, F);
            for (const MackeyFunctor* M : {&R.green.mackey, &B.green.mackey}) {
                auto a = tor_complex_coend(covariant_part(*M, C));
                auto b = tor_complex_shifted_dress(*M, F);
                CHECK(a.presentation_verified);
                CHECK(a.ranks == b.ranks);
                for (int p = 0; p < 3; ++p) CHECK(a.tor(p) == b.tor(p));
            }
        }
    }
}

TEST_CASE("colim map") {
    {
        Setup s("S3");
        auto R = build_rep_ring_green(s.sk);
        auto all = colim_map(s.category("FIN"), R.green.mackey);
        CHECK(all.surjective);
        CHECK(all.injective);
        auto cy = colim_map(s.category("FCY"), R.green.mackey);
        CHECK(cy.surjective);
        CHECK(cy.injective);
        CHECK(cy.colimit == FgAbelianGroup::free(3));
        CHECK(!cy.witness);
    }
    {
        Setup s("Q8");
        auto R = build_rep_ring_green(s.sk);
        auto C = s.category("FCY");
        auto r = colim_map(C, R.green.mackey);
        CHECK(!r.surjective);
        CHECK(r.cokernel.exponent() == Integer(2));
        REQUIRE(r.witness);
        CHECK(*r.witness == 0);
        auto j = colim_report_to_json(r, *C);
        CHECK(j["surjective"] == false);
        CHECK(j["witness"] == 0);
        // Colim agrees with Tor_0.
        CHECK(r.colimit == tor_over_orbit_category(C, R.green.mackey, 0).group);
    }
    {
        Setup s("C3");
        auto B = build_burnside_green(s.sk);
        auto r = colim_map(s.category("TR"), B.green.mackey);
        CHECK(r.colimit == FgAbelianGroup::free(1));
        CHECK(r.injective);
        CHECK(!r.surjective);
    }
}
