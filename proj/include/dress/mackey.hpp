#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/gset.hpp"
#include "dress/linalg.hpp"

namespace dress {

/// A Mackey functor with free values, tabulated on the orbit skeleton.
///
/// M(G/H_c) = Z^{rank(c)} for each class representative H_c. Every skeleton
/// morphism phi: G/H_s -> G/H_t (a coset of H_t fixed by H_s) carries
/// push(phi) = M_*(phi) of shape rank(t) x rank(s) and pull(phi) = M^*(phi)
/// of shape rank(s) x rank(t). Restriction, induction and conjugation are
/// all instances. Values on arbitrary G-sets follow by additivity through
/// orbit anchors.
class MackeyFunctor {
public:
    MackeyFunctor() = default;
    MackeyFunctor(SkeletonPtr skeleton, std::vector<int> ranks, std::string name = {});

    const OrbitSkeleton& skeleton() const { return *skeleton_; }
    const SkeletonPtr& skeleton_ptr() const { return skeleton_; }
    const SubgroupLattice& lattice() const { return skeleton_->lattice(); }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    int rank(int c) const { return ranks_[c]; }
    const std::vector<int>& ranks() const { return ranks_; }

    /// Matrices of the morphism given by `coset` in morphisms(s, t).
    const IntMatrix& push(int s, int t, int coset) const;
    const IntMatrix& pull(int s, int t, int coset) const;
    void set_push(int s, int t, int coset, IntMatrix m);
    void set_pull(int s, int t, int coset, IntMatrix m);

    /// Direct access by morphism position.
    const IntMatrix& push_at(int s, int t, int k) const { return push_[s][t][k]; }
    const IntMatrix& pull_at(int s, int t, int k) const { return pull_[s][t][k]; }

private:
    SkeletonPtr skeleton_;
    std::vector<int> ranks_;
    std::vector<std::vector<std::vector<IntMatrix>>> push_, pull_;
    std::string name_;
};

/// Builds a functor from callbacks evaluated on every skeleton morphism.
template <class Push, class Pull>
MackeyFunctor tabulate_mackey(SkeletonPtr sk, std::vector<int> ranks, Push push, Pull pull, std::string name = {}) {
    MackeyFunctor M(sk, std::move(ranks), std::move(name));
    for (int s = 0; s < sk->class_count(); ++s)
        for (int t = 0; t < sk->class_count(); ++t)
            for (int coset : sk->morphisms(s, t)) {
                M.set_push(s, t, coset, push(s, t, coset));
                M.set_pull(s, t, coset, pull(s, t, coset));
            }
    return M;
}

/// A Green functor: a Mackey functor with a ring structure on every value.
struct GreenFunctor {
    MackeyFunctor mackey;
    /// mult[c][i] is left multiplication by basis element i on M(G/H_c).
    std::vector<std::vector<IntMatrix>> mult;
    std::vector<IntVector> unit;

    IntVector multiply(int c, const IntVector& x, const IntVector& y) const;
};

/// A pairing U x M -> M making M a U-module: action[c][i] is the action of
/// basis element i of U(G/H_c) on M(G/H_c).
struct Pairing {
    const GreenFunctor* ring = nullptr;
    const MackeyFunctor* module = nullptr;
    std::vector<std::vector<IntMatrix>> action;
};

/// The Green functor acting on itself.
Pairing self_pairing(const GreenFunctor& U);

// ---------------------------------------------------------------------------
// Values on G-sets

/// Basis bookkeeping for M(S): orbit o occupies [offset[o], offset[o] + rank).
struct Evaluation {
    GSetPtr set;
    std::vector<int> offset;
    std::vector<int> orbit_class;
    int rank = 0;
};

/// Errors: GroupMismatch.
Evaluation evaluate_on_gset(const MackeyFunctor& M, const GSetPtr& S);

struct InducedMaps {
    IntMatrix push;  ///< M_*(f): M(S) -> M(T)
    IntMatrix pull;  ///< M^*(f): M(T) -> M(S)
};

/// Errors: GroupMismatch.
InducedMaps induced_maps(const MackeyFunctor& M, const GMap& f);
SparseIntMatrix induced_push_sparse(const MackeyFunctor& M, const GMap& f);
SparseIntMatrix induced_pull_sparse(const MackeyFunctor& M, const GMap& f);

/// The skeleton morphism through which orbit `o` of f.source maps: returns
/// (source class, target orbit, target class, coset).
struct OrbitMorphism {
    int source_class;
    int target_orbit;
    int target_class;
    int coset;
};
OrbitMorphism orbit_morphism(const OrbitSkeleton& sk, const GMap& f, int o);

// ---------------------------------------------------------------------------
// Axioms

struct AxiomReport {
    bool ok = true;
    std::string failure;         ///< which identity failed
    std::optional<int> witness;  ///< basis index of an offending input vector
    IntVector lhs, rhs;          ///< images of the witness under both sides
};

/// Double coset formula M_*(fbar1) M^*(fbar2) = M^*(f1) M_*(f2) on the
/// square, plus additivity of M on S1 = S1 u S2 union.
AxiomReport check_mackey_axioms(const MackeyFunctor& M, const CartesianSquare& square);
/// Additivity (M^*(i0) x M^*(i1)) (M_*(i0) + M_*(i1)) = id on S0 u S1.
AxiomReport check_additivity(const MackeyFunctor& M, const GSetPtr& S0, const GSetPtr& S1);
/// Identity morphisms act as identity and push/pull compose along all
/// composable skeleton morphisms.
AxiomReport check_functoriality(const MackeyFunctor& M);

/// Pullbacks of all pairs of canonical orbit projections G/H_a -> G/H_c
/// (H_a <= H_c representatives) over every class c.
std::vector<CartesianSquare> orbit_projection_squares(const LatticePtr& L, const GSetCaps& caps = {});
/// `count` random squares of small unions of orbits, reproducible from `seed`.
std::vector<CartesianSquare> random_squares(const LatticePtr& L, int count, std::uint64_t seed,
                                            const GSetCaps& caps = {});

struct SquareCampaign {
    int squares = 0;
    int passed = 0;
    std::optional<AxiomReport> first_failure;
    int failure_index = -1;
};
SquareCampaign check_squares(const MackeyFunctor& M, const std::vector<CartesianSquare>& squares);

// ---------------------------------------------------------------------------
// Dress complexes

enum class Variance { Covariant, Contravariant };

struct DressOptions {
    int n_max = 3;
    Variance variance = Variance::Covariant;
    /// Bound on |S|^n_max; also bounds the implicit orbit tower.
    std::int64_t max_points = 20000;
    /// Build S^n as explicit product G-sets (small cases only) instead of
    /// enumerating orbits of S^n recursively.
    bool explicit_products = false;
};

/// Degree n holds M(S^n). For the covariant complex the boundary is
/// c_n = sum_{i=1}^n (-1)^i M_*(pr_i); for the contravariant one
/// c^n = sum_{i=1}^n (-1)^i M^*(pr_i) raises degree.
struct DressComplex {
    Variance variance = Variance::Covariant;
    int n_max = 0;
    std::vector<int> ranks;  ///< rank of M(S^n)
    std::vector<int> orbits; ///< orbit count of S^n
    /// For covariant: chain complex as is. For contravariant: degree n is
    /// stored at index n_max - n so that cohomology is chain homology.
    ChainComplex complex;

    /// H_n (covariant) or H^n (contravariant); meaningful for n < n_max.
    FgAbelianGroup homology(int n) const;
};

/// Errors: EmptyGSet, CapExceeded, NotAComplex.
DressComplex dress_complex(const MackeyFunctor& M, const GSetPtr& S, const DressOptions& opt = {});

// ---------------------------------------------------------------------------
// Projectivity, M_S, splittings

struct ProjectivityReport {
    bool projective = false;
    FgAbelianGroup cokernel;
};

/// Cokernel of U_*(pr: S -> G/G). Errors: EmptyGSet.
ProjectivityReport is_s_projective(const GreenFunctor& U, const GSetPtr& S);
ProjectivityReport is_s_projective(const MackeyFunctor& M, const GSetPtr& S);

/// Component matrices per class of a natural transformation.
struct NaturalTransformation {
    Variance direction = Variance::Covariant;
    std::vector<IntMatrix> components;
};

struct MSubS {
    MackeyFunctor functor;              ///< M_S(T) = M(S x T)
    NaturalTransformation theta_lower;  ///< theta_S: M_S -> M, M_*(pr)
    NaturalTransformation theta_upper;  ///< theta^S: M -> M_S, M^*(pr)
    bool natural = false;               ///< naturality verified on all skeleton morphisms
};

/// Errors: EmptyGSet, CapExceeded.
MSubS m_sub_s(const MackeyFunctor& M, const GSetPtr& S, const GSetCaps& caps = {});

/// True when the components commute with push and pull of every skeleton
/// morphism (source functor A, target functor B).
bool is_natural(const MackeyFunctor& A, const MackeyFunctor& B, const std::vector<IntMatrix>& components);

struct SplittingReport {
    bool split = false;
    /// Components of a natural retraction rho: M_S -> M with rho theta^S = id.
    std::vector<IntMatrix> retraction;
    /// False when a splitting exists but the system was too large to solve
    /// densely; `retraction` is then empty.
    bool retraction_computed = false;
    int unknowns = 0;
    int equations = 0;
};

/// Integer search for a natural retraction of theta^S (S-injectivity).
/// Existence is decided sparsely. The retraction is then found by exact
/// elimination of unit pivots followed by a dense solve of the remainder,
/// skipped when that remainder has more than max_dense_entries entries.
SplittingReport find_theta_splitting(const MackeyFunctor& M, const GSetPtr& S, const GSetCaps& caps = {},
                                     std::int64_t max_dense_entries = 2000000);

// ---------------------------------------------------------------------------
// Pairings

struct PairingReport {
    bool ok = true;
    std::string identity;  ///< which condition failed
    int source_class = -1, target_class = -1, coset = -1;
    int x = -1, y = -1;
};

/// Checks, on every skeleton morphism f,
///   M^*(f)(x y) = U^*(f)(x) M^*(f)(y),
///   x M_*(f)(y) = M_*(f)(U^*(f)(x) y),
///   U_*(f)(x) y = M_*(f)(x M^*(f)(y)),
/// plus U^*(f) 1 = 1, 1 y = y and (x x') y = x (x' y).
PairingReport check_green_pairing(const Pairing& P);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json mackey_to_json(const MackeyFunctor& M);
MackeyFunctor mackey_from_json(const nlohmann::json& j);
nlohmann::json green_to_json(const GreenFunctor& U);
GreenFunctor green_from_json(const nlohmann::json& j);

}  // namespace dress
