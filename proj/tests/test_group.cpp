#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dress/corpus.hpp"
#include "dress/group.hpp"

using namespace dress;

namespace {

// Closure oracle: compose permutations until nothing new appears.
std::set<std::vector<int>> perm_closure(const std::vector<std::vector<int>>& gens, int n) {
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& p : frontier)
            for (auto& g : gens) {
                std::vector<int> q(n);
                for (int i = 0; i < n; ++i) q[i] = g[p[i]];
                if (seen.insert(q).second) next.push_back(q);
            }
        frontier = std::move(next);
    }
    return seen;
}

// Subgroups by brute force over subsets (small groups only).
int brute_force_subgroup_count(const FiniteGroup& G) {
    const int n = G.order();
    int count = 0;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        if (!(m & 1u)) continue;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if (m >> a & 1u)
                for (int b = 0; b < n && ok; ++b)
                    if ((m >> b & 1u) && !(m >> G.mul(a, b) & 1u)) ok = false;
        count += ok;
    }
    return count;
}

LatticePtr lattice(const std::string& name) { return std::make_shared<const SubgroupLattice>(named_group(name)); }

}  // namespace

TEST_CASE("build_group from tables") {
    auto G = build_group_from_table({{0, 1}, {1, 0}});
    CHECK(G.order() == 2);
    CHECK(G.is_abelian());
    CHECK_THROWS_AS(build_group_from_table({{0, 1}, {1, 1}}), Error);
    try {
        build_group_from_table({{0, 1}, {1, 1}});
    } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::NoInverse || e.code() == ErrorCode::TableNotAssociative));
    }
    // identity not at index 0 gets moved there
    auto H = build_group_from_table({{1, 0}, {0, 1}});
    CHECK(H.mul(0, 1) == 1);
    CHECK(H.mul(1, 1) == 0);
    CHECK_THROWS_AS(build_group_from_table({{0, 0}, {0, 0}}), Error);
}

TEST_CASE("build_group from permutations matches closure oracle") {
    auto S3 = build_group_from_permutations(3, {{{1, 2}}, {{1, 2, 3}}});
    CHECK(S3.order() == 6);
    CHECK(!S3.is_abelian());
    for (const std::string name : {"S4", "A4", "SL(2,3)", "Q8", "D6", "A5", "C2xC4", "(C2)^3"}) {
        auto G = named_group(name);
        std::vector<std::vector<int>> gens;
        for (int g : G->generators()) gens.push_back(G->permutations()[g]);
        CHECK(perm_closure(gens, G->degree()).size() == static_cast<std::size_t>(G->order()));
    }
    CHECK_THROWS_AS(build_group_from_permutations(3, {{{1, 4}}}), Error);
    CHECK_THROWS_AS(build_group_from_permutations(3, {{{1, 2, 1}}}), Error);
}

TEST_CASE("group json round trip") {
    nlohmann::json spec = {{"type", "perm"}, {"degree", 3}, {"generators", {{{1, 2}}, {{1, 2, 3}}}}};
    auto G = build_group(spec);
    CHECK(G.order() == 6);
    auto H = build_group(group_spec_json(G));
    CHECK(H.order() == 6);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(H.mul(a, b) == G.mul(a, b));
    CHECK_THROWS_AS(build_group(nlohmann::json{{"type", "nope"}}), Error);
}

TEST_CASE("corpus orders") {
    std::map<std::string, int> expect{{"S3", 6},  {"D4", 8},       {"Q8", 8},  {"A4", 12},    {"D6", 12},
                                      {"S4", 24}, {"SL(2,3)", 24}, {"A5", 60}, {"C2xC4", 8}, {"(C2)^3", 8}};
    for (auto& [n, o] : expect) CHECK(named_group(n)->order() == o);
    for (int n = 1; n <= 12; ++n) CHECK(named_group("C" + std::to_string(n))->order() == n);
    CHECK(corpus_names().size() == 22);
    // Q8 has a unique involution; SL(2,3) has a unique involution too.
    for (const std::string name : {"Q8", "SL(2,3)"}) {
        auto G = named_group(name);
        int involutions = 0;
        for (int g = 0; g < G->order(); ++g) involutions += G->element_order(g) == 2;
        CHECK(involutions == 1);
    }
    CHECK(named_group("D4")->exponent() == 4);
    CHECK(!named_group("D4")->is_abelian());
}

TEST_CASE("subgroup enumeration") {
    for (int p : {2, 3, 5, 7, 11}) {
        auto L = lattice("C" + std::to_string(p));
        CHECK(L->size() == 2);
        CHECK(L->class_count() == 2);
    }
    auto S3 = lattice("S3");
    CHECK(S3->size() == 6);
    CHECK(S3->class_count() == 4);
    int total = 0;
    for (int c = 0; c < S3->class_count(); ++c) total += static_cast<int>(S3->class_members(c).size());
    CHECK(total == 6);
    CHECK(S3->rep(1).order == 2);
    CHECK(S3->class_members(1).size() == 3);

    auto Q8 = lattice("Q8");
    CHECK(Q8->size() == 6);
    CHECK(Q8->class_count() == 6);
    for (const auto& H : Q8->subgroups()) CHECK(H.is_normal);

    for (const std::string name : {"S3", "D4", "Q8", "C2xC4", "(C2)^3", "C6", "C12"})
        CHECK(lattice(name)->size() == brute_force_subgroup_count(*named_group(name)));
    CHECK(lattice("S4")->size() == 30);
    CHECK(lattice("S4")->class_count() == 11);
    CHECK(lattice("A5")->size() == 59);
    CHECK(lattice("A5")->class_count() == 9);
    CHECK(lattice("SL(2,3)")->size() == 15);
    CHECK(lattice("SL(2,3)")->class_count() == 7);
}

TEST_CASE("subgroup ordering and class properties") {
    for (const std::string name : {"S4", "D6", "SL(2,3)"}) {
        auto L = lattice(name);
        const auto& G = L->group();
        for (int i = 0; i + 1 < L->size(); ++i) {
            const auto& a = L->subgroup(i);
            const auto& b = L->subgroup(i + 1);
            CHECK((a.order < b.order || (a.order == b.order && a.elements < b.elements)));
        }
        for (const auto& H : L->subgroups()) {
            CHECK(G.order() % H.order == 0);
            CHECK(H.elements.front() == 0);
            for (int g = 0; g < G.order(); ++g) {
                const int c = L->conjugate(H.id, g);
                REQUIRE(c >= 0);
                CHECK(L->class_of(c) == H.class_id);
            }
            CHECK(L->rep(H.class_id).elements <= H.elements);
            for (const auto& [t, v] : H.class_tags) CHECK(v == classify_subgroup(*L, H.id, ClassTag::parse(t)));
        }
    }
}

TEST_CASE("classification") {
    auto C1 = lattice("C1");
    CHECK(classify_subgroup(*C1, 0, ClassTag::parse("p-elementary(2)")));
    auto S3 = lattice("S3");
    CHECK(classify_group(*named_group("S3"), ClassTag::parse("p-hyperelementary(2)")));
    CHECK(!classify_group(*named_group("S3"), ClassTag::parse("elementary")));
    CHECK(classify_group(*named_group("C6"), ClassTag::parse("p-elementary(2)")));
    CHECK(classify_group(*named_group("Q8"), ClassTag::parse("H")));
    CHECK(!classify_group(*named_group("A4"), ClassTag::parse("H")));
    CHECK(!classify_group(*named_group("A4"), ClassTag::parse("H_3")));
    CHECK(!classify_group(*named_group("A4"), ClassTag::parse("E_3")));
    CHECK(classify_group(*named_group("D6"), ClassTag::parse("H_2")));
    CHECK_THROWS_AS(ClassTag::parse("p-group(4)"), Error);
    CHECK_THROWS_AS(ClassTag::parse("bogus"), Error);
    CHECK(ClassTag::parse("E_2").str() == "p-elementary(2)");
}

TEST_CASE("classification is conjugation invariant and subgroup closed") {
    std::vector<ClassTag> tags;
    for (const char* t : {"cyclic", "E", "H", "E_2", "E_3", "H_2", "H_3", "P_2", "P_3"}) tags.push_back(ClassTag::parse(t));
    for (const std::string name : {"S4", "SL(2,3)", "D6", "A4"}) {
        auto L = lattice(name);
        for (const auto& tag : tags)
            for (const auto& H : L->subgroups()) {
                const bool v = classify_subgroup(*L, H.id, tag);
                CHECK(v == classify_subgroup(*L, L->class_rep(H.class_id), tag));
                if (v)
                    for (int K : L->subgroups_of(H.id)) CHECK(classify_subgroup(*L, K, tag));
            }
        for (const auto& H : L->subgroups())
            if (classify_subgroup(*L, H.id, ClassTag::parse("E")))
                CHECK(classify_subgroup(*L, H.id, ClassTag::parse("H")));
    }
}

TEST_CASE("homomorphisms") {
    auto S3 = named_group("S3");
    auto id = build_hom(S3, S3, [&] {
        std::map<int, int> m;
        for (int g : S3->generators()) m[g] = g;
        return m;
    }());
    CHECK(id.kernel() == std::vector<int>{0});

    auto C2 = named_group("C2");
    auto C3 = named_group("C3");
    std::map<int, int> sign, bad;
    for (int g : S3->generators()) {
        sign[g] = S3->element_order(g) == 2 ? 1 : 0;
        bad[g] = S3->element_order(g) == 2 ? 1 : 0;
    }
    auto phi = build_hom(S3, C2, sign);
    CHECK(phi.kernel().size() == 3);
    CHECK(phi.image().size() == 2);
    CHECK_THROWS_AS(build_hom(S3, C3, bad), Error);
    CHECK_THROWS_AS(build_hom(S3, C2, {}), Error);
}
