#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/family.hpp"
#include "dress/mackey.hpp"

namespace dress {

/// Or_F(G) on class representatives: object x is G/H for H = rep(objects[x]),
/// and hom(x, y) lists the skeleton morphisms (cosets of H_y fixed by H_x).
class OrbitCategory {
public:
    OrbitCategory(SkeletonPtr sk, Family F);

    const OrbitSkeleton& skeleton() const { return *skeleton_; }
    const SkeletonPtr& skeleton_ptr() const { return skeleton_; }
    const Family& family() const { return family_; }

    int object_count() const { return static_cast<int>(objects_.size()); }
    int object_class(int x) const { return objects_[x]; }
    /// Object index of a class, or -1.
    int object_of_class(int c) const;

    const std::vector<int>& hom(int x, int y) const { return skeleton_->morphisms(objects_[x], objects_[y]); }
    int identity(int x) const;
    /// Position in hom(x, z) of (b in hom(y, z)) after (a in hom(x, y)), by positions.
    int compose(int x, int y, int z, int a, int b) const;

    /// Identities are neutral and composition is associative on every triple.
    bool check_composition() const;

private:
    SkeletonPtr skeleton_;
    Family family_;
    std::vector<int> objects_;
    std::vector<int> object_of_class_;
};

using CategoryPtr = std::shared_ptr<const OrbitCategory>;

/// Errors: EmptyFamily, FamilyGroupMismatch.
CategoryPtr build_orbit_category(const SkeletonPtr& sk, const Family& F);

/// A functor Or_F(G) -> free abelian groups. maps[x][y][k] is the matrix of
/// morphism k of hom(x, y): rank(y) x rank(x) when covariant, rank(x) x rank(y)
/// when contravariant.
struct BredonModule {
    Variance variance = Variance::Covariant;
    CategoryPtr category;
    std::vector<int> ranks;
    std::vector<std::vector<std::vector<IntMatrix>>> maps;

    const IntMatrix& map(int x, int y, int k) const { return maps[x][y][k]; }
};

/// True when identities act as identity and composites are respected.
bool check_functoriality(const BredonModule& N);

/// The covariant part M_* of a Mackey functor restricted to Or_F(G).
BredonModule covariant_part(const MackeyFunctor& M, const CategoryPtr& C);
/// The contravariant constant module sending G/H to Z if S^H is non-empty
/// and to 0 otherwise.
BredonModule constant_module(const CategoryPtr& C, const GSetPtr& S);

// ---------------------------------------------------------------------------

/// P_n(G/H) = Z[(S^H)^{n+1}] with boundary sum_i (-1)^i (omit coordinate i),
/// contravariant in G/H by translating tuples.
struct StandardResolution {
    CategoryPtr category;
    GSetPtr set;
    int n_max = 0;
    /// ranks[n][x] = |S^{H_x}|^{n+1}.
    std::vector<std::vector<int>> ranks;
    /// translate[n][x][y][k][t]: index in P_n(x) of g . t for the tuple t of
    /// P_n(y) and the morphism k of hom(x, y) with coset gH_y.
    std::vector<std::vector<std::vector<std::vector<std::vector<int>>>>> translate;
    /// complexes[x] is P_*(G/H_x), degree n at index n.
    std::vector<ChainComplex> complexes;
    /// homology[x][n] for n < n_max.
    std::vector<std::vector<FgAbelianGroup>> homology;
    /// Boundaries commute with the module maps.
    bool natural = false;
    /// Each P_*(x) has H_0 = Lambda(x) and vanishing higher homology below n_max.
    bool exact = false;
};

/// P_n as a dense module; meant for small ranks.
BredonModule resolution_module(const StandardResolution& R, int n);

/// Errors: CapExceeded (|S|^{n_max+1} over max_points), EmptyGSet.
StandardResolution standard_resolution(const CategoryPtr& C, const GSetPtr& S, int n_max = 3,
                                       std::int64_t max_points = 20000);

// ---------------------------------------------------------------------------

enum class TorRoute {
    /// P_* tensored with N through an explicit coend presentation.
    Coend,
    /// Homology of the Dress complex M_*(S^{*+1}) shifted down one degree.
    ShiftedDress,
};

struct TorOptions {
    int n_max = 3;
    /// Bound on |S|^{n_max+1} for the explicit coend presentation.
    std::int64_t max_points = 20000;
    /// Bound on the orbit tower of the shifted Dress complex.
    std::int64_t dress_max_points = 20000;
};

struct TorComplex {
    TorRoute route = TorRoute::Coend;
    int n_max = 0;
    std::vector<int> ranks;
    ChainComplex complex;
    /// Coend route only: the normal form kills every relation and splits the
    /// section, so the reduced complex computes P_* (x) N.
    bool presentation_verified = false;
    /// Generators and relations of the coend in each degree.
    std::vector<int> generators, relations;

    /// Tor_p for p < n_max. Errors: DegreeOutOfRange.
    FgAbelianGroup tor(int p) const;
};

/// S = family_gset(family) throughout. Errors: CapExceeded, DegreeOutOfRange, EmptyFamily.
TorComplex tor_complex_coend(const BredonModule& N, const TorOptions& opt = {});
TorComplex tor_complex_shifted_dress(const MackeyFunctor& M, const Family& F, const TorOptions& opt = {});

struct TorReport {
    FgAbelianGroup group;
    TorRoute route = TorRoute::Coend;
    /// Present when a Mackey functor was supplied and both routes ran.
    std::optional<bool> agrees_with_dress;
};

/// Tor_p for every p < n_max, from one pair of complexes.
struct TorSeries {
    std::vector<FgAbelianGroup> groups;
    TorRoute route = TorRoute::Coend;
    /// Present when both routes ran; true when they agree in every degree.
    std::optional<bool> agrees_with_dress;
};
TorSeries tor_series(const CategoryPtr& C, const MackeyFunctor& M, const TorOptions& opt = {});

/// Tor_p(Lambda_{F(S)}, N). Uses the coend when it fits under the cap,
/// the shifted Dress complex of `M` otherwise; cross-checks when both run.
/// Errors: DegreeOutOfRange (p >= n_max), CapExceeded when neither route fits.
TorReport tor_over_orbit_category(const CategoryPtr& C, const MackeyFunctor& M, int p, const TorOptions& opt = {});

// ---------------------------------------------------------------------------

struct ColimReport {
    /// Relation matrix: one column per (morphism f: x -> y, basis vector n),
    /// equal to N(f) n - n inside the sum over objects.
    IntMatrix relations;
    FgAbelianGroup colimit;
    /// Induced map from the sum over objects to M(G/G).
    IntMatrix canonical;
    FgAbelianGroup cokernel;
    bool surjective = false;
    bool injective = false;
    /// First basis vector of M(G/G) outside the image (trivial character first).
    std::optional<int> witness;
    /// Nonzero classes in the kernel, as vectors over the objects.
    std::optional<IntVector> kernel_witness;
};

/// colim over Or_F(G) of M_* and its canonical map to M(G/G).
/// Errors: EmptyFamily, FamilyGroupMismatch.
ColimReport colim_map(const CategoryPtr& C, const MackeyFunctor& M);

nlohmann::json colim_report_to_json(const ColimReport& r, const OrbitCategory& C);

}  // namespace dress
