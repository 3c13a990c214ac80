#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dress/coefficients.hpp"
#include "dress/corpus.hpp"
#include "dress/error.hpp"

using namespace dress;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
    IntMatrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto r : rows) {
        Eigen::Index j = 0;
        for (int v : r) A(i, j++) = v;
        ++i;
    }
    return A;
}

int class_of_order(const SubgroupLattice& L, int order) {
    for (int c = 0; c < L.class_count(); ++c)
        if (L.rep(c).order == order) return c;
    return -1;
}

// Marks of a virtual A(G)-element given in the A(G/G) basis.
IntVector marks_of(const Burnside& B, const IntVector& x) {
    const auto& L = B.skeleton->lattice();
    const int w = L.class_of(L.whole());
    IntVector m = IntVector::Zero(L.class_count());
    for (int i = 0; i < x.size(); ++i) m += x(i) * B.marks.marks.row(L.class_of(B.basis[w][i])).transpose();
    return m;
}

int linear_count(const CharacterTable& T) {
    int n = 0;
    for (int d : T.degrees()) n += d == 1;
    return n;
}

}  // namespace

TEST_CASE("table of marks") {
    SUBCASE("C2") {
        auto B = build_burnside_green(named_group("C2"));
        CHECK(B.marks.marks == mat({{2, 0}, {1, 1}}));
    }
    SUBCASE("trivial group") {
        auto B = build_burnside_green(named_group("C1"));
        CHECK(B.marks.marks == mat({{1}}));
    }
    SUBCASE("S3") {
        auto B = build_burnside_green(named_group("S3"));
        const auto& M = B.marks.marks;
        REQUIRE(M.rows() == 4);
        CHECK(M.col(0) == mat({{6}, {3}, {2}, {1}}));
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) CHECK(M(i, j).is_zero());
    }
    SUBCASE("corpus: lower triangular, positive diagonal, index column, nonsingular") {
        for (const auto& name : corpus_names()) {
            SubgroupLattice L(named_group(name));
            auto T = table_of_marks(L);
            for (int i = 0; i < L.class_count(); ++i) {
                CHECK(T.marks(i, 0) == L.group().order() / L.rep(i).order);
                CHECK(T.marks(i, i).sign() > 0);
                for (int j = i + 1; j < L.class_count(); ++j) CHECK(T.marks(i, j).is_zero());
            }
        }
    }
}

TEST_CASE("Burnside multiplication is multiplicative on marks") {
    for (const char* name : {"S3", "Q8", "D4", "A4", "S4", "C6"}) {
        auto B = build_burnside_green(named_group(name));
        const auto& L = B.skeleton->lattice();
        const int w = L.class_of(L.whole());
        const int r = B.green.mackey.rank(w);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                IntVector ei = IntVector::Zero(r), ej = IntVector::Zero(r);
                ei(i) = 1;
                ej(j) = 1;
                IntVector prod = B.green.multiply(w, ei, ej);
                CHECK(marks_of(B, prod) == marks_of(B, ei).cwiseProduct(marks_of(B, ej)));
            }
        // Unit is G/G, with all marks 1.
        CHECK(marks_of(B, B.green.unit[w]) == IntVector::Constant(L.class_count(), 1));
    }
}

TEST_CASE("Burnside induction and restriction of free orbits") {
    auto G = named_group("S3");
    auto B = build_burnside_green(G);
    const auto& sk = *B.skeleton;
    const auto& L = sk.lattice();
    const int one = L.class_of(L.trivial()), w = L.class_of(L.whole());
    // [G/L] restricted to 1 is [G:L] points.
    const auto& pull = B.green.mackey.pull(one, w, 0);
    for (int i = 0; i < pull.cols(); ++i)
        CHECK(pull(0, i) == G->order() / L.subgroup(B.basis[w][i]).order);
    // [1/1] induced to G is [G/1].
    const auto& push = B.green.mackey.push(one, w, 0);
    CHECK(push(0, 0) == 1);
    CHECK(L.subgroup(B.basis[w][0]).order == 1);
}

TEST_CASE("rep ring of the trivial group and C2") {
    auto T = build_rep_ring_green(named_group("C1"));
    CHECK(T.green.mackey.rank(0) == 1);
    CHECK(T.green.mult[0][0] == mat({{1}}));

    auto R = build_rep_ring_green(named_group("C2"));
    const auto& L = R.skeleton->lattice();
    const int one = L.class_of(L.trivial()), w = L.class_of(L.whole());
    IntMatrix ind_res = R.green.mackey.push(one, w, 0) * R.green.mackey.pull(one, w, 0);
    // Multiplication by the regular character (1,1)+(1,-1).
    IntMatrix reg = R.green.mult[w][0] + R.green.mult[w][1];
    CHECK(ind_res == reg);
    CHECK(reg == mat({{1, 1}, {1, 1}}));
}

TEST_CASE("double coset formula for C2 and C3 in S3") {
    auto R = build_rep_ring_green(named_group("S3"));
    const auto& sk = *R.skeleton;
    const auto& L = sk.lattice();
    const auto& M = R.green.mackey;
    const int one = L.class_of(L.trivial()), c2 = class_of_order(L, 2), c3 = class_of_order(L, 3);
    const int w = L.class_of(L.whole());
    IntMatrix lhs = M.pull(c2, w, 0) * M.push(c3, w, 0);
    // Single double coset C2 \ S3 / C3 with C2 cap C3 = 1.
    IntMatrix rhs = M.push(one, c2, sk.morphisms(one, c2).front()) * M.pull(one, c3, sk.morphisms(one, c3).front());
    CHECK(lhs.rows() == 2);
    CHECK(lhs.cols() == 3);
    CHECK(lhs == rhs);
}

TEST_CASE("both Green functors satisfy the axioms on small groups") {
    for (const char* name : {"C2", "C4", "S3", "Q8", "D4", "A4", "C2xC2"}) {
        auto G = named_group(name);
        auto L = std::make_shared<const SubgroupLattice>(G);
        auto sk = std::make_shared<const OrbitSkeleton>(L);
        auto R = build_rep_ring_green(sk);
        auto B = build_burnside_green(sk);
        auto squares = orbit_projection_squares(L);
        auto random = random_squares(L, 10, 7);
        squares.insert(squares.end(), random.begin(), random.end());
        for (const MackeyFunctor* M : {&R.green.mackey, &B.green.mackey}) {
            INFO(name << " " << M->name());
            CHECK(check_functoriality(*M).ok);
            auto c = check_squares(*M, squares);
            CHECK(c.passed == c.squares);
        }
        CHECK(check_green_pairing(self_pairing(R.green)).ok);
        CHECK(check_green_pairing(self_pairing(B.green)).ok);
    }
}

TEST_CASE("induction cokernels") {
    SUBCASE("cyclic groups with FCY are surjective") {
        for (const char* name : {"C1", "C4", "C12"}) {
            auto R = build_rep_ring_green(named_group(name));
            auto F = family_from_class(R.skeleton->lattice_ptr(), "FCY");
            CHECK(induction_cokernel(R.green.mackey, F).surjective);
        }
    }
    SUBCASE("S3 with FCY is surjective") {
        auto R = build_rep_ring_green(named_group("S3"));
        auto r = induction_cokernel(R.green.mackey, family_from_class(R.skeleton->lattice_ptr(), "FCY"));
        CHECK(r.surjective);
        CHECK(r.integral.is_trivial());
    }
    SUBCASE("Q8 with FCY has cokernel Z/2, seen by the parity functional") {
        auto R = build_rep_ring_green(named_group("Q8"));
        auto r = induction_cokernel(R.green.mackey, family_from_class(R.skeleton->lattice_ptr(), "FCY"));
        CHECK(!r.surjective);
        REQUIRE(r.artin_exponent);
        CHECK(*r.artin_exponent == 2);
        CHECK(r.integral == FgAbelianGroup{0, {Integer(2)}});
        // Sum of the coefficients of the four linear characters, mod 2.
        const auto& L = R.skeleton->lattice();
        const auto& T = R.tables[L.class_of(L.whole())];
        CHECK(linear_count(T) == 4);
        for (Eigen::Index j = 0; j < r.matrix.cols(); ++j) {
            Integer s = 0;
            for (int i = 0; i < T.class_count(); ++i)
                if (T.degrees()[i] == 1) s += r.matrix(i, j);
            CHECK((s % 2).is_zero());
        }
        // The trivial character has parity 1, so it is not in the image.
        CHECK(T.degrees()[0] == 1);
        // Rationally surjective; 2-locally not, 3-locally yes.
        auto F = family_from_class(R.skeleton->lattice_ptr(), "FCY");
        CHECK(induction_cokernel(R.green.mackey, F, Coefficients::parse("Q")).surjective);
        CHECK(!induction_cokernel(R.green.mackey, F, Coefficients::parse("Zp:2")).surjective);
        CHECK(induction_cokernel(R.green.mackey, F, Coefficients::parse("Zp:3")).surjective);
        auto j = induction_report_to_json(r);
        CHECK(j["group"] == "Q8");
        CHECK(j["family"] == "FCY");
        CHECK(j["coefficients"] == "Z");
        CHECK(j["cokernel"]["free_rank"] == 0);
        CHECK(j["cokernel"]["invariant_factors"] == nlohmann::json::array({2}));
        CHECK(j["surjective"] == false);
        CHECK(j["artin_exponent"] == 2);
    }
    SUBCASE("trivial family has infinite cokernel and no exponent") {
        auto R = build_rep_ring_green(named_group("S3"));
        auto r = induction_cokernel(R.green.mackey, trivial_family(R.skeleton->lattice_ptr()));
        CHECK(r.cokernel.free_rank == 2);
        CHECK(!r.artin_exponent);
        CHECK(induction_report_to_json(r)["artin_exponent"].is_null());
    }
    SUBCASE("Burnside ring: only the whole group induces onto G/G") {
        auto B = build_burnside_green(named_group("C6"));
        auto F = family_from_class(B.skeleton->lattice_ptr(), "FCY");
        CHECK(induction_cokernel(B.green.mackey, F).surjective);
        auto B3 = build_burnside_green(named_group("S3"));
        auto r = induction_cokernel(B3.green.mackey, family_from_class(B3.skeleton->lattice_ptr(), "FCY"));
        CHECK(!r.surjective);
        CHECK(r.cokernel == FgAbelianGroup::free(1));
    }
    SUBCASE("errors") {
        auto R = build_rep_ring_green(named_group("S3"));
        CHECK_THROWS_AS(induction_cokernel(R.green.mackey, Family{R.skeleton->lattice_ptr(), {}, "empty"}), Error);
        auto other = std::make_shared<const SubgroupLattice>(named_group("S3"));
        CHECK_THROWS_AS(induction_cokernel(R.green.mackey, family_from_class(other, "E")), Error);
    }
}

TEST_CASE("induction theorems and monotonicity on small corpus groups") {
    for (const char* name : {"S3", "Q8", "D4", "A4", "D6", "S4", "SL(2,3)", "C2xC4", "(C2)^3"}) {
        INFO(name);
        auto R = build_rep_ring_green(named_group(name));
        const auto& Lp = R.skeleton->lattice_ptr();
        const auto fcy = induction_cokernel(R.green.mackey, family_from_class(Lp, "FCY"));
        const auto e = induction_cokernel(R.green.mackey, family_from_class(Lp, "E"));
        const auto h = induction_cokernel(R.green.mackey, family_from_class(Lp, "H"));
        CHECK(e.surjective);
        CHECK(h.surjective);
        CHECK(fcy.integral.is_finite());
        CHECK((Integer(Lp->group().order()) % fcy.integral.exponent()).is_zero());
        // Image grows with the family.
        CHECK((fcy.integral.torsion_order() % e.integral.torsion_order()).is_zero());
    }
}

TEST_CASE("coefficient parsing") {
    CHECK(Coefficients::parse("Z").kind == Coefficients::Kind::Z);
    CHECK(Coefficients::parse("Q").kind == Coefficients::Kind::Q);
    CHECK(Coefficients::parse("Zp:3").p == 3);
    CHECK(Coefficients::parse("Z_(5)").p == 5);
    CHECK(Coefficients::parse("Zp:3").str() == "Z_(3)");
    CHECK_THROWS_AS(Coefficients::parse("Zp:4"), Error);
    CHECK_THROWS_AS(Coefficients::parse("R"), Error);
}

TEST_CASE("green functor json round trip") {
    auto R = build_rep_ring_green(named_group("S3"));
    auto j = green_to_json(R.green);
    auto back = green_from_json(j);
    CHECK(back.mackey.ranks() == R.green.mackey.ranks());
    CHECK(green_to_json(back) == j);
    auto bad = j;
    bad["morphisms"].erase(bad["morphisms"].begin());
    CHECK_THROWS_AS(mackey_from_json(bad), Error);
}
