#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/error.hpp"

namespace dress {

/// A finite group given by its full multiplication table. Element 0 is the
/// identity. Immutable after construction.
class FiniteGroup {
public:
    static constexpr int identity = 0;

    int order() const { return order_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    /// g x g^-1
    int conjugate(int g, int x) const { return mul(mul(g, x), inverse_[g]); }

    const std::vector<int>& generators() const { return generators_; }
    int element_order(int a) const { return element_orders_[a]; }
    int exponent() const;
    bool is_abelian() const;

    /// "table" or "perm".
    const std::string& origin() const { return origin_; }
    /// For permutation groups: 0-based images of each element on {0..degree-1}.
    const std::vector<std::vector<int>>& permutations() const { return permutations_; }
    int degree() const { return degree_; }

    /// Optional human label ("S3", "Q8", ...).
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    /// Elements generated by `gens` (sorted).
    std::vector<int> closure(const std::vector<int>& gens) const;

    friend FiniteGroup build_group_from_table(const std::vector<std::vector<int>>& table);
    friend FiniteGroup build_group_from_permutations(int degree,
                                                     const std::vector<std::vector<std::vector<int>>>& generators);

private:
    void finish();

    int order_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<int> element_orders_;
    std::vector<int> generators_;
    std::string origin_;
    std::string name_;
    int degree_ = 0;
    std::vector<std::vector<int>> permutations_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Validates a multiplication table; reindexes so that the identity is 0.
/// Errors: NoIdentity, NoInverse, TableNotAssociative, InvalidGroupSpec.
FiniteGroup build_group_from_table(const std::vector<std::vector<int>>& table);

/// Closure of permutations given as lists of 1-based cycles, reindexed in
/// lexicographic order of images (the identity first). Errors:
/// PermutationsInvalid.
FiniteGroup build_group_from_permutations(int degree, const std::vector<std::vector<std::vector<int>>>& generators);

/// Parses {"type":"table","table":[[..]]} or
/// {"type":"perm","degree":n,"generators":[[cycle,...],...]}.
FiniteGroup build_group(const nlohmann::json& spec);

/// Table-form group spec of `G`.
nlohmann::json group_spec_json(const FiniteGroup& G);

// ---------------------------------------------------------------------------

/// A subgroup of the ambient group of a SubgroupLattice.
struct Subgroup {
    std::vector<int> elements;  ///< sorted element indices of the ambient group
    std::vector<std::uint64_t> mask;
    int order = 0;
    int id = -1;
    int class_id = -1;
    bool is_normal = false;
    /// Classification results for the standard tags, keyed by tag string.
    std::map<std::string, bool> class_tags;

    bool contains(int g) const { return (mask[g >> 6] >> (g & 63)) & 1u; }
    bool is_subset_of(const Subgroup& other) const;
};

/// Every subgroup of a finite group, ordered by (order, element list), with
/// conjugacy classes. The representative of a class is its first member,
/// which is the lexicographically least element set.
class SubgroupLattice {
public:
    static constexpr int default_order_cap = 96;

    explicit SubgroupLattice(GroupPtr G, int order_cap = default_order_cap);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }

    int size() const { return static_cast<int>(subgroups_.size()); }
    const Subgroup& subgroup(int id) const { return subgroups_.at(id); }
    const std::vector<Subgroup>& subgroups() const { return subgroups_; }

    int class_count() const { return static_cast<int>(classes_.size()); }
    const std::vector<int>& class_members(int c) const { return classes_.at(c); }
    int class_rep(int c) const { return classes_.at(c).front(); }
    const Subgroup& rep(int c) const { return subgroups_[class_rep(c)]; }
    int class_of(int id) const { return subgroups_.at(id).class_id; }

    int trivial() const { return 0; }
    int whole() const { return size() - 1; }

    /// Subgroup id of a sorted element list, or -1.
    int find(const std::vector<int>& sorted_elements) const;
    int find_mask(const std::vector<std::uint64_t>& mask) const;
    /// Id of g H g^-1.
    int conjugate(int id, int g) const;
    /// Some g with g H g^-1 = K, if H and K are conjugate.
    std::optional<int> conjugator(int from, int to) const;
    /// Some g with g H g^-1 contained in K.
    std::optional<int> subconjugator(int H, int K) const;
    /// Ids of all subgroups contained in `id` (ascending).
    std::vector<int> subgroups_of(int id) const;
    /// Normalizer of a subgroup, as a subgroup id.
    int normalizer(int id) const;

private:
    std::vector<std::uint64_t> make_mask(const std::vector<int>& elems) const;

    GroupPtr group_;
    std::vector<Subgroup> subgroups_;
    std::vector<std::vector<int>> classes_;
    std::map<std::vector<std::uint64_t>, int> index_;
};

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

// ---------------------------------------------------------------------------
// Classification into the classes of finite groups used to build families.

struct ClassTag {
    enum class Kind { Cyclic, PGroup, PElementary, PHyperelementary, Elementary, Hyperelementary, AllFinite };
    Kind kind = Kind::AllFinite;
    int p = 0;  ///< prime for PGroup / PElementary / PHyperelementary

    /// Canonical spelling: cyclic, p-group(2), p-elementary(3), p-hyperelementary(2),
    /// elementary, hyperelementary, all-finite.
    std::string str() const;
    /// Accepts the canonical spelling and the short forms FCY, E, H, FIN,
    /// E_p, H_p. Throws UnknownTag / InvalidPrime.
    static ClassTag parse(const std::string& s);
};

bool is_prime(int p);

/// Decides membership of the subgroup `id` of the lattice in the class by
/// exhaustive search over the lattice. Throws InvalidPrime.
bool classify_subgroup(const SubgroupLattice& L, int id, const ClassTag& tag);
/// Same, for a whole group.
bool classify_group(const FiniteGroup& H, const ClassTag& tag);

// ---------------------------------------------------------------------------

struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<int> image_table;

    int operator()(int x) const { return image_table[x]; }
    std::vector<int> kernel() const;  ///< sorted source elements
    std::vector<int> image() const;   ///< sorted target elements
    /// Sorted image of a set of source elements.
    std::vector<int> image_of(const std::vector<int>& elems) const;
};

/// Extends an assignment on the source generators to a homomorphism.
/// Errors: NotDefinedOnGenerators, NotAHomomorphism.
GroupHom build_hom(GroupPtr source, GroupPtr target, const std::map<int, int>& generator_images);

GroupHom identity_hom(GroupPtr G);
/// Inclusion of a subgroup (as its own group, elements in sorted order) into G.
GroupHom inclusion_hom(GroupPtr G, const std::vector<int>& subgroup_elements);
/// The subgroup as a standalone group; element i corresponds to subgroup_elements[i].
FiniteGroup subgroup_as_group(const FiniteGroup& G, const std::vector<int>& subgroup_elements);
/// Composite (outer after inner).
GroupHom compose(const GroupHom& outer, const GroupHom& inner);

}  // namespace dress
