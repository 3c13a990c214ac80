#pragma once

#include <string>
#include <vector>

#include "dress/group.hpp"

namespace dress {

/// Names of the built-in groups, in campaign order.
const std::vector<std::string>& corpus_names();

/// A built-in group by name ("C7", "S3", "D4", "Q8", "A4", "D6", "S4",
/// "SL(2,3)", "A5", "C2xC4", "(C2)^3"). Throws InvalidGroupSpec.
GroupPtr named_group(const std::string& name);

/// Cyclic group of order n as permutations of n points.
FiniteGroup cyclic_group(int n);
/// Dihedral group of order 2n acting on an n-gon (n >= 3).
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup alternating_group(int n);
FiniteGroup quaternion_group();
/// SL(2,3) acting on the 8 nonzero vectors of F_3^2.
FiniteGroup sl23();

}  // namespace dress
