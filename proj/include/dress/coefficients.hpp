#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/character.hpp"
#include "dress/family.hpp"
#include "dress/mackey.hpp"

namespace dress {

/// R_C(-) on the orbit skeleton of G, with the character tables it was
/// built from (tables[c] belongs to the representative of class c).
struct RepRing {
    SkeletonPtr skeleton;
    std::vector<CharacterTable> tables;
    GreenFunctor green;
};

/// Errors: OrderCapExceeded.
RepRing build_rep_ring_green(const SkeletonPtr& sk, int order_cap = default_character_order_cap);
RepRing build_rep_ring_green(const GroupPtr& G, int order_cap = default_character_order_cap);

/// Marks |(G/H)^K| with rows H and columns K running over class representatives.
struct TableOfMarks {
    std::vector<int> classes;
    IntMatrix marks;
};
TableOfMarks table_of_marks(const SubgroupLattice& L);

/// A(-) on the orbit skeleton. basis[c] lists lattice ids of H_c-conjugacy
/// class representatives of subgroups of H_c (least id per class, ascending);
/// basis element i stands for the H_c-set H_c / basis[c][i].
struct Burnside {
    SkeletonPtr skeleton;
    std::vector<std::vector<int>> basis;
    GreenFunctor green;
    TableOfMarks marks;
};
Burnside build_burnside_green(const SkeletonPtr& sk);
Burnside build_burnside_green(const GroupPtr& G);

// ---------------------------------------------------------------------------

struct Coefficients {
    enum class Kind { Z, Zp, Q } kind = Kind::Z;
    int p = 0;

    /// "Z", "Q", "Zp:3" (also "Z_(3)" and "Z3"). Errors: ConfigError, InvalidPrime.
    static Coefficients parse(const std::string& s);
    std::string str() const;
};

struct InductionReport {
    std::string group;
    std::string family;
    Coefficients coefficients;
    IntMatrix matrix;           ///< columns: pushes to G/G of member bases, by class then basis index
    FgAbelianGroup integral;    ///< cokernel over Z
    FgAbelianGroup cokernel;    ///< cokernel after changing coefficients
    bool surjective = false;
    std::optional<Integer> artin_exponent;  ///< exponent of `cokernel` when finite
};

/// Cokernel of the sum of M_*(G/H -> G/G) over member classes H of F.
/// Errors: EmptyFamily, FamilyGroupMismatch.
InductionReport induction_cokernel(const MackeyFunctor& M, const Family& F, const Coefficients& coefficients = {});

nlohmann::json induction_report_to_json(const InductionReport& r);

}  // namespace dress
