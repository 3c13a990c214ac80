#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/gset.hpp"

namespace dress {

/// A family of subgroups stored as a set of conjugacy class ids of the
/// ambient lattice. Closed under conjugation by construction and under
/// passage to subgroups (checked by every builder).
struct Family {
    LatticePtr lattice;
    std::vector<int> classes;  ///< ascending class ids
    std::string tag;           ///< FCY, E, H, FIN, E_p, H_p, P_p, TR or custom

    bool empty() const { return classes.empty(); }
    bool contains_class(int c) const;
    bool contains_subgroup(int id) const { return contains_class(lattice->class_of(id)); }
    /// Member classes not properly subconjugate to another member.
    std::vector<int> maximal_classes() const;

    friend bool operator==(const Family& a, const Family& b) {
        return a.lattice.get() == b.lattice.get() && a.classes == b.classes;
    }
};

/// Short label for a class tag: FCY, E, H, FIN, E_p, H_p, P_p.
std::string family_label(const ClassTag& tag);

/// {H <= G : H in the class}. Accepts anything ClassTag::parse accepts.
/// Errors: UnknownTag, InvalidPrime.
Family family_from_class(const LatticePtr& L, const std::string& tag);
Family family_from_class(const LatticePtr& L, const ClassTag& tag);
/// The family {1}.
Family trivial_family(const LatticePtr& L);
/// Validated family from explicit class ids. Errors: NotAFamily.
Family make_family(const LatticePtr& L, std::vector<int> classes, std::string tag = "custom");
/// Smallest family containing the given classes.
Family subgroup_closure(const LatticePtr& L, const std::vector<int>& classes, std::string tag = "custom");

/// True when every subgroup of every member is a member.
bool is_subgroup_closed(const Family& F);

/// phi^* F = {H <= source : phi(H) in F}. `source` must be the lattice of
/// phi's source group. Errors: FamilyGroupMismatch.
Family pullback_family(const GroupHom& phi, const LatticePtr& source, const Family& F);

enum class FamilyOp { Union, Intersection };
/// Errors: FamilyGroupMismatch.
Family combine_families(const Family& F, const Family& G, FamilyOp op);

/// S = disjoint union of G/H over the maximal member classes, or over every
/// member class when `full` is set. Errors: EmptyFamily.
GSetPtr family_gset(const Family& F, bool full = false);

/// {"tag", "classes": [{"id", "order", "elements"}], "maximal": [...], ...}
nlohmann::json family_report(const Family& F);

}  // namespace dress
