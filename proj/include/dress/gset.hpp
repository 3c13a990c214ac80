#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/group.hpp"

namespace dress {

/// A finite G-set with dense point indices and a full action table.
///
/// Every orbit carries an anchor: a point whose stabilizer is exactly the
/// representative of the stabilizer's conjugacy class. Values of Mackey
/// functors on the orbit are identified with the value at that
/// representative through the anchor.
class GSet {
public:
    struct Orbit {
        std::vector<int> points;  ///< ascending
        int base = 0;             ///< least point
        int stabilizer = -1;      ///< subgroup id of Stab(base)
        int class_id = -1;        ///< conjugacy class of the stabilizer
        int anchor = 0;           ///< point with stabilizer rep(class_id)
        int anchor_shift = 0;     ///< a with a * anchor = base
    };

    /// action[g * size + x] = g . x. Validates the action axioms.
    GSet(LatticePtr lattice, int size, std::vector<int> action);

    const SubgroupLattice& lattice() const { return *lattice_; }
    const LatticePtr& lattice_ptr() const { return lattice_; }
    const FiniteGroup& group() const { return lattice_->group(); }

    int size() const { return size_; }
    int act(int g, int x) const { return action_[static_cast<std::size_t>(g) * size_ + x]; }
    const std::vector<int>& action() const { return action_; }

    const std::vector<Orbit>& orbits() const { return orbits_; }
    int orbit_of(int x) const { return orbit_of_[x]; }
    /// Some g with g . base(orbit(x)) = x.
    int transversal(int x) const { return transversal_[x]; }
    /// Some g with g . anchor(orbit(x)) = x.
    int anchor_coordinate(int x) const;

    /// Points fixed by every element of the subgroup.
    std::vector<int> fixed_points(const Subgroup& H) const;
    std::vector<int> fixed_points(const std::vector<int>& elements) const;

    bool same_group(const GSet& other) const { return lattice_.get() == other.lattice_.get(); }

private:
    LatticePtr lattice_;
    int size_ = 0;
    std::vector<int> action_;
    std::vector<Orbit> orbits_;
    std::vector<int> orbit_of_;
    std::vector<int> transversal_;
};

using GSetPtr = std::shared_ptr<const GSet>;

/// An equivariant map of finite G-sets.
struct GMap {
    GSetPtr source;
    GSetPtr target;
    std::vector<int> point_map;

    int operator()(int x) const { return point_map[x]; }
};

/// Cartesian square S -> S1, S -> S2 over f1: S1 -> S0, f2: S2 -> S0.
struct CartesianSquare {
    GSetPtr corner;
    GMap corner_to_first;   ///< projection S -> S1
    GMap corner_to_second;  ///< projection S -> S2
    GMap f1;
    GMap f2;
};

/// Size caps for composite constructions.
struct GSetCaps {
    std::int64_t max_points = 20000;
    std::int64_t max_map_search = 1000000;
};

/// G/H with left translation; cosets ordered by least element, so the base
/// point eH is point 0. Errors: NotASubgroup.
GSetPtr homogeneous_gset(const LatticePtr& L, int subgroup_id);
GSetPtr empty_gset(const LatticePtr& L);
GSetPtr point_gset(const LatticePtr& L);

GMap identity_map(const GSetPtr& S);
/// The unique map to the one-point G-set.
GMap projection_to_point(const GSetPtr& S);
/// Validated equivariant map. Errors: MismatchedGroups, InvalidFunctorData.
GMap make_gmap(const GSetPtr& source, const GSetPtr& target, std::vector<int> point_map);
/// The G-map sending the base point of orbit i of S to base_images[i].
/// Errors: MismatchedGroups, InvalidFunctorData (image not fixed by the stabilizer).
GMap equivariant_extension(const GSetPtr& S, const GSetPtr& T, const std::vector<int>& base_images);

/// Fiber product over a common target, points in lexicographic pair order.
/// Errors: MismatchedTargets, MismatchedGroups, CapExceeded.
CartesianSquare pullback_square(const GMap& f1, const GMap& f2, const GSetCaps& caps = {});

/// All G-maps S -> T in lexicographic order of the images of orbit base
/// points. Errors: MismatchedGroups, CountCapExceeded.
std::vector<GMap> enumerate_gmaps(const GSetPtr& S, const GSetPtr& T, const GSetCaps& caps = {});

/// S first, then T.
GSetPtr disjoint_union(const GSetPtr& S, const GSetPtr& T);
/// Inclusions of the two summands of disjoint_union(S, T).
std::pair<GMap, GMap> union_inclusions(const GSetPtr& S, const GSetPtr& T, const GSetPtr& sum);
/// Point (x, y) has index x * |T| + y.
GSetPtr product(const GSetPtr& S, const GSetPtr& T, const GSetCaps& caps = {});
/// Coordinate projections out of product(S, T).
std::pair<GMap, GMap> product_projections(const GSetPtr& S, const GSetPtr& T, const GSetPtr& prod);
/// n-fold product, lexicographic; power(S, 0) is the point.
GSetPtr power(const GSetPtr& S, int n, const GSetCaps& caps = {});
/// Disjoint union of G/H over the given subgroup ids.
GSetPtr disjoint_union_of_orbits(const LatticePtr& L, const std::vector<int>& subgroup_ids);

/// Sum over g of |fixed points of g| divided by |G|; equals the number of orbits.
bool check_orbit_counting(const GSet& S);

nlohmann::json gset_to_json(const GSet& S);
GSetPtr gset_from_json(const LatticePtr& L, const nlohmann::json& j);

// ---------------------------------------------------------------------------

/// The skeleton of the orbit category on conjugacy-class representatives.
///
/// A morphism G/H_s -> G/H_t is a coset gH_t fixed by H_s; it sends xH_s to
/// xgH_t. Cosets of each representative are indexed by least element.
class OrbitSkeleton {
public:
    explicit OrbitSkeleton(LatticePtr L);

    const SubgroupLattice& lattice() const { return *lattice_; }
    const LatticePtr& lattice_ptr() const { return lattice_; }
    int class_count() const { return lattice_->class_count(); }

    int coset_count(int c) const { return static_cast<int>(coset_reps_[c].size()); }
    int coset_of(int c, int g) const { return coset_index_[c][g]; }
    int coset_rep(int c, int coset) const { return coset_reps_[c][coset]; }

    /// Cosets of H_t fixed by H_s, ascending.
    const std::vector<int>& morphisms(int s, int t) const { return homs_[s][t]; }
    /// Position of `coset` in morphisms(s, t), or -1.
    int morphism_position(int s, int t, int coset) const;
    /// Coset of H_u for the composite of (s -> t via a) then (t -> u via b).
    int compose(int t, int u, int coset_a_of_t, int coset_b_of_u) const;

    const GSetPtr& orbit(int c) const { return orbits_[c]; }

private:
    LatticePtr lattice_;
    std::vector<std::vector<int>> coset_index_;
    std::vector<std::vector<int>> coset_reps_;
    std::vector<std::vector<std::vector<int>>> homs_;
    std::vector<GSetPtr> orbits_;
};

using SkeletonPtr = std::shared_ptr<const OrbitSkeleton>;

}  // namespace dress
