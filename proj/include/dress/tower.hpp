#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dress/gset.hpp"

namespace dress {

/// Orbits of S^0, S^1, ..., S^levels without materialising the products.
///
/// An orbit of S^n lies over an orbit of S^{n-1} with anchor a' and
/// stabilizer K (a class representative); the orbits above it correspond to
/// K-orbits on S. The K-orbit decomposition depends only on the class of K,
/// so it is computed once per class.
class OrbitTower {
public:
    struct Node {
        int parent = -1;
        int child = -1;     ///< index into the children of the parent's class
        int class_id = -1;  ///< stabilizer class of the anchor
        std::vector<int> anchor;
    };

    /// Errors: EmptyGSet, CapExceeded (total orbit count above max_orbits).
    OrbitTower(GSetPtr S, int levels, std::int64_t max_orbits = 2000000);

    int levels() const { return static_cast<int>(levels_.size()) - 1; }
    const std::vector<Node>& level(int n) const { return levels_[n]; }
    const GSet& base() const { return *S_; }

    /// (orbit index at level tuple.size(), g with g . anchor = tuple).
    std::pair<int, int> locate(const std::vector<int>& tuple) const;

private:
    struct Child {
        int rep = -1;
        int class_id = -1;
        int shift = 0;  ///< a with a * rep(class) * a^-1 = Stab_K(rep)
    };
    struct ClassData {
        bool ready = false;
        std::vector<int> korbit;   ///< point -> child index
        std::vector<int> element;  ///< point y -> k in K with k . rep = y
        std::vector<Child> children;
    };

    const ClassData& class_data(int c);

    GSetPtr S_;
    std::vector<ClassData> classes_;
    std::vector<std::vector<Node>> levels_;
    std::vector<std::vector<int>> child_offset_;  ///< per level, per node
};

}  // namespace dress
