#include "dress/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

namespace dress {

namespace {

using Cycles = std::vector<std::vector<int>>;

std::vector<int> range1(int a, int b) {
    std::vector<int> v(b - a + 1);
    std::iota(v.begin(), v.end(), a);
    return v;
}

// One permutation in image form (0-based) to 1-based cycles.
Cycles cycles_of(const std::vector<int>& img) {
    Cycles out;
    std::vector<bool> seen(img.size(), false);
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (seen[i] || img[i] == static_cast<int>(i)) continue;
        std::vector<int> c;
        for (int j = static_cast<int>(i); !seen[j]; j = img[j]) {
            seen[j] = true;
            c.push_back(j + 1);
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace

FiniteGroup cyclic_group(int n) {
    if (n == 1) return build_group_from_table({{0}});
    return build_group_from_permutations(n, {{range1(1, n)}});
}

FiniteGroup dihedral_group(int n) {
    Cycles reflection;
    for (int i = 1, j = n; i < j; ++i, --j) reflection.push_back({i, j});
    return build_group_from_permutations(n, {{range1(1, n)}, reflection});
}

FiniteGroup symmetric_group(int n) {
    if (n <= 1) return build_group_from_table({{0}});
    if (n == 2) return build_group_from_permutations(2, {{{1, 2}}});
    return build_group_from_permutations(n, {{{1, 2}}, {range1(1, n)}});
}

FiniteGroup alternating_group(int n) {
    if (n <= 2) return build_group_from_table({{0}});
    if (n == 3) return build_group_from_permutations(3, {{{1, 2, 3}}});
    // (1 2 3) and the n-cycle (n odd) or (2 .. n) (n even) generate A_n.
    Cycles big = (n % 2 == 1) ? Cycles{range1(1, n)} : Cycles{range1(2, n)};
    return build_group_from_permutations(n, {{{1, 2, 3}}, big});
}

FiniteGroup quaternion_group() {
    // Left regular action on {1, i, -1, -i, j, k, -j, -k} numbered 1..8.
    return build_group_from_permutations(8, {{{1, 2, 3, 4}, {5, 6, 7, 8}}, {{1, 5, 3, 7}, {2, 8, 4, 6}}});
}

FiniteGroup sl23() {
    std::vector<std::array<int, 2>> vecs;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a || b) vecs.push_back({a, b});
    auto index = [&](int a, int b) {
        for (std::size_t i = 0; i < vecs.size(); ++i)
            if (vecs[i][0] == a && vecs[i][1] == b) return static_cast<int>(i);
        return -1;
    };
    auto perm = [&](int m00, int m01, int m10, int m11) {
        std::vector<int> img(vecs.size());
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            const auto [a, b] = vecs[i];
            img[i] = index((m00 * a + m01 * b) % 3, (m10 * a + m11 * b) % 3);
        }
        return cycles_of(img);
    };
    return build_group_from_permutations(8, {perm(1, 1, 0, 1), perm(1, 0, 1, 1)});
}

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (int n = 1; n <= 12; ++n) v.push_back("C" + std::to_string(n));
        for (const char* s : {"S3", "D4", "Q8", "A4", "D6", "S4", "SL(2,3)", "A5", "C2xC4", "(C2)^3"}) v.push_back(s);
        return v;
    }();
    return names;
}

GroupPtr named_group(const std::string& name) {
    FiniteGroup G;
    if (name.size() >= 2 && name[0] == 'C' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        const int n = std::stoi(name.substr(1));
        if (n < 1) throw Error(ErrorCode::InvalidGroupSpec, "bad cyclic order in " + name);
        G = cyclic_group(n);
    } else if (name.size() >= 2 && name[0] == 'D' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        // D4 is the dihedral group of order 8.
        const int n = std::stoi(name.substr(1));
        if (n < 3) throw Error(ErrorCode::InvalidGroupSpec, "bad dihedral index in " + name);
        G = dihedral_group(n);
    } else if (name.size() >= 2 && name[0] == 'S' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        G = symmetric_group(std::stoi(name.substr(1)));
    } else if (name.size() >= 2 && name[0] == 'A' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        G = alternating_group(std::stoi(name.substr(1)));
    } else if (name == "Q8") {
        G = quaternion_group();
    } else if (name == "SL(2,3)" || name == "SL23") {
        G = sl23();
    } else if (name == "C2xC4" || name == "C2×C4") {
        G = build_group_from_permutations(6, {{{1, 2}}, {{3, 4, 5, 6}}});
    } else if (name == "(C2)^3" || name == "(C2)³" || name == "C2xC2xC2") {
        G = build_group_from_permutations(6, {{{1, 2}}, {{3, 4}}, {{5, 6}}});
    } else if (name == "C2xC2" || name == "V4") {
        G = build_group_from_permutations(4, {{{1, 2}}, {{3, 4}}});
    } else {
        throw Error(ErrorCode::InvalidGroupSpec, "unknown group name " + name);
    }
    G.set_name(name);
    return std::make_shared<const FiniteGroup>(std::move(G));
}

}  // namespace dress
