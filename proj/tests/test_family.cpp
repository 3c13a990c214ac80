#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dress/corpus.hpp"
#include "dress/error.hpp"
#include "dress/family.hpp"

using namespace dress;

namespace {

LatticePtr lattice(const std::string& name) { return std::make_shared<const SubgroupLattice>(named_group(name)); }

int subgroup_count(const Family& F) {
    int n = 0;
    for (const auto& H : F.lattice->subgroups()) n += F.contains_subgroup(H.id);
    return n;
}

std::vector<int> orders(const Family& F) {
    std::vector<int> o;
    for (int c : F.classes) o.push_back(F.lattice->rep(c).order);
    return o;
}

int parity(const std::vector<int>& p) {
    int s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) s ^= p[i] > p[j];
    return s;
}

}  // namespace

TEST_CASE("cyclic family of S3") {
    auto L = lattice("S3");
    auto F = family_from_class(L, "FCY");
    CHECK(orders(F) == std::vector<int>{1, 2, 3});
    CHECK(subgroup_count(F) == 5);
    CHECK(F.tag == "FCY");
    CHECK(F.maximal_classes().size() == 2);
    CHECK(family_gset(F)->size() == 3 + 2);
    CHECK(family_gset(F, true)->size() == 6 + 3 + 2);
    // FCY = E for S3.
    CHECK(family_from_class(L, "E") == F);
    CHECK(family_from_class(L, "H").classes.size() == 4);
}

TEST_CASE("every subgroup of Q8 is hyperelementary") {
    auto L = lattice("Q8");
    auto F = family_from_class(L, "H");
    CHECK(static_cast<int>(F.classes.size()) == L->class_count());
    CHECK(family_from_class(L, "E") == F);
    CHECK(family_from_class(L, "FCY").classes.size() == 5);
    CHECK(family_from_class(L, "FCY").maximal_classes().size() == 3);
}

TEST_CASE("S4 and A5 families") {
    auto S4 = lattice("S4");
    CHECK(orders(family_from_class(S4, "FCY")) == std::vector<int>{1, 2, 2, 3, 4});
    CHECK(orders(family_from_class(S4, "E")) == std::vector<int>{1, 2, 2, 3, 4, 4, 4, 8});
    CHECK(orders(family_from_class(S4, "H")) == std::vector<int>{1, 2, 2, 3, 4, 4, 4, 6, 8});
    auto A5 = lattice("A5");
    CHECK(family_gset(family_from_class(A5, "E"))->size() == 47);
    CHECK(family_gset(family_from_class(A5, "H"))->size() == 31);
    CHECK(family_gset(family_from_class(A5, "FCY"))->size() == 62);
    CHECK(family_from_class(A5, "FIN").classes.size() == 9);
    CHECK(orders(family_from_class(A5, "P_2")) == std::vector<int>{1, 2, 4});
}

TEST_CASE("families are closed under conjugation and subgroups for every corpus group") {
    for (const auto& name : corpus_names()) {
        auto L = lattice(name);
        for (const char* tag : {"FCY", "E", "H", "FIN", "TR", "E_2", "H_3", "P_2"}) {
            auto F = family_from_class(L, tag);
            CHECK(is_subgroup_closed(F));
            CHECK(F.contains_subgroup(L->trivial()));
            // Containment chain FCY <= E <= H <= FIN.
            if (std::string(tag) == "E") {
                auto FCY = family_from_class(L, "FCY");
                CHECK(combine_families(FCY, F, FamilyOp::Union) == F);
                CHECK(combine_families(F, family_from_class(L, "H"), FamilyOp::Intersection) == F);
            }
        }
        // The whole group is in FCY exactly when it is cyclic.
        bool cyclic = false;
        for (int g = 0; g < L->group().order(); ++g) cyclic |= L->group().element_order(g) == L->group().order();
        CHECK(family_from_class(L, "FCY").contains_subgroup(L->whole()) == cyclic);
    }
}

TEST_CASE("pullback along the sign map of S3") {
    auto G = named_group("S3");
    auto C2 = named_group("C2");
    auto LS = std::make_shared<const SubgroupLattice>(G);
    auto LC = std::make_shared<const SubgroupLattice>(C2);
    REQUIRE(!G->permutations().empty());
    std::vector<int> table;
    for (const auto& p : G->permutations()) table.push_back(parity(p));
    GroupHom sign{G, C2, table};
    auto F = pullback_family(sign, LS, trivial_family(LC));
    CHECK(orders(F) == std::vector<int>{1, 3});
    CHECK(is_subgroup_closed(F));
    CHECK_THROWS_AS(pullback_family(sign, LC, trivial_family(LC)), Error);
}

TEST_CASE("union with the cyclic family") {
    auto L = lattice("Q8");
    auto E = family_from_class(L, "E");
    CHECK(combine_families(E, family_from_class(L, "FCY"), FamilyOp::Union) == E);
}

TEST_CASE("errors") {
    auto L = lattice("S3");
    auto M = lattice("C3");
    CHECK_THROWS_AS(family_from_class(L, "bogus"), Error);
    CHECK_THROWS_AS(family_from_class(L, "E_4"), Error);
    try {
        make_family(L, {L->class_count() - 1});
        FAIL("expected NotAFamily");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAFamily);
    }
    try {
        combine_families(family_from_class(L, "E"), family_from_class(M, "E"), FamilyOp::Union);
        FAIL("expected FamilyGroupMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FamilyGroupMismatch);
    }
    try {
        family_gset(Family{L, {}, "empty"});
        FAIL("expected EmptyFamily");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyFamily);
    }
    CHECK(subgroup_closure(L, {L->class_count() - 1}).classes.size() == static_cast<std::size_t>(L->class_count()));
}

TEST_CASE("report") {
    auto F = family_from_class(lattice("S3"), "FCY");
    auto j = family_report(F);
    CHECK(j["tag"] == "FCY");
    CHECK(j["class_count"] == 3);
    CHECK(j["subgroup_count"] == 5);
    CHECK(j["maximal"].size() == 2);
}
