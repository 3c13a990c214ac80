#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "dress/cyclotomic.hpp"
#include "dress/group.hpp"

namespace dress {

/// Irreducible complex characters of a subgroup H of an ambient group,
/// with values in Z[zeta_m]. Element ids are those of the ambient group.
struct CharacterTable {
    int order = 0;
    int modulus = 1;                    ///< conductor used for all values
    std::vector<int> elements;          ///< sorted ambient ids of H
    std::vector<std::vector<int>> classes;  ///< conjugacy classes, ordered by least element
    std::vector<int> class_of;          ///< indexed by ambient id, -1 outside H
    std::vector<int> inverse_class;
    std::vector<std::vector<Cyclotomic>> rows;  ///< rows[i][k] = chi_i(class k); trivial first

    int class_count() const { return static_cast<int>(classes.size()); }
    int class_size(int k) const { return static_cast<int>(classes[k].size()); }
    int representative(int k) const { return classes[k].front(); }
    std::vector<int> degrees() const;
};

/// A class function on the group of a table: one value per class.
using ClassFunction = std::vector<Cyclotomic>;

inline constexpr int default_character_order_cap = 200;

/// Character table of the whole group; modulus defaults to its exponent.
/// Errors: OrderCapExceeded.
CharacterTable character_table(const FiniteGroup& G, int modulus = 0, int order_cap = default_character_order_cap);
/// Table of the subgroup with the given sorted element ids. `modulus` must
/// be a multiple of the subgroup's exponent (0 = exponent of G).
CharacterTable character_table(const FiniteGroup& G, const std::vector<int>& subgroup_elements, int modulus = 0,
                               int order_cap = default_character_order_cap);

/// Exact row and column orthogonality.
bool check_orthogonality(const CharacterTable& T);

/// <a, b> = (1/|H|) sum over classes of |C| a conj(b). Throws NotAClassFunction
/// for malformed input and std::domain_error if the result is not in Z[zeta].
Cyclotomic inner_product(const CharacterTable& T, const ClassFunction& a, const ClassFunction& b);
/// Integer multiplicities of the irreducibles. Errors: NotAClassFunction
/// (also when the class function is not a virtual character).
std::vector<std::int64_t> decompose(const CharacterTable& T, const ClassFunction& f);

/// Per-element values (indexed like T.elements) to a class function.
/// Errors: NotAClassFunction when not constant on classes.
ClassFunction class_function_from_values(const CharacterTable& T, const std::vector<Cyclotomic>& per_element);

enum class CharacterDirection { Induce, Restrict };

/// Restriction from `big` to `small` (a subgroup of it) or induction the
/// other way. Both tables must share the ambient group and the modulus.
/// Errors: NotAClassFunction, NotASubgroup.
ClassFunction induce_restrict(const FiniteGroup& ambient, const CharacterTable& big, const CharacterTable& small,
                              const ClassFunction& chi, CharacterDirection direction);

/// <ind chi, psi>_big == <chi, res psi>_small.
bool check_frobenius(const FiniteGroup& ambient, const CharacterTable& big, const CharacterTable& small,
                     const ClassFunction& chi, const ClassFunction& psi);

nlohmann::json character_table_to_json(const CharacterTable& T);

}  // namespace dress
