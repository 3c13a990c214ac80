#include "dress/family.hpp"

#include <algorithm>
#include <set>

namespace dress {

bool Family::contains_class(int c) const { return std::binary_search(classes.begin(), classes.end(), c); }

std::vector<int> Family::maximal_classes() const {
    std::vector<int> out;
    for (int c : classes) {
        bool maximal = true;
        for (int d : classes) {
            if (d == c || lattice->rep(d).order <= lattice->rep(c).order) continue;
            if (lattice->subconjugator(lattice->class_rep(c), lattice->class_rep(d))) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(c);
    }
    return out;
}

std::string family_label(const ClassTag& tag) {
    using K = ClassTag::Kind;
    switch (tag.kind) {
        case K::Cyclic: return "FCY";
        case K::PGroup: return "P_" + std::to_string(tag.p);
        case K::PElementary: return "E_" + std::to_string(tag.p);
        case K::PHyperelementary: return "H_" + std::to_string(tag.p);
        case K::Elementary: return "E";
        case K::Hyperelementary: return "H";
        case K::AllFinite: return "FIN";
    }
    return "custom";
}

Family family_from_class(const LatticePtr& L, const ClassTag& tag) {
    Family F{L, {}, family_label(tag)};
    for (int c = 0; c < L->class_count(); ++c)
        if (classify_subgroup(*L, L->class_rep(c), tag)) F.classes.push_back(c);
    if (!is_subgroup_closed(F)) throw Error(ErrorCode::NotAFamily, "class " + tag.str() + " is not subgroup closed");
    return F;
}

Family family_from_class(const LatticePtr& L, const std::string& tag) {
    if (tag == "TR" || tag == "trivial") return trivial_family(L);
    return family_from_class(L, ClassTag::parse(tag));
}

Family trivial_family(const LatticePtr& L) { return Family{L, {L->class_of(L->trivial())}, "TR"}; }

bool is_subgroup_closed(const Family& F) {
    const auto& L = *F.lattice;
    for (int c : F.classes)
        for (int K : L.subgroups_of(L.class_rep(c)))
            if (!F.contains_subgroup(K)) return false;
    return true;
}

Family make_family(const LatticePtr& L, std::vector<int> classes, std::string tag) {
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    for (int c : classes)
        if (c < 0 || c >= L->class_count()) throw Error(ErrorCode::NotAFamily, "class id out of range");
    Family F{L, std::move(classes), std::move(tag)};
    if (!is_subgroup_closed(F)) throw Error(ErrorCode::NotAFamily, "not closed under subgroups");
    return F;
}

Family subgroup_closure(const LatticePtr& L, const std::vector<int>& classes, std::string tag) {
    std::set<int> out;
    for (int c : classes)
        for (int K : L->subgroups_of(L->class_rep(c))) out.insert(L->class_of(K));
    return Family{L, {out.begin(), out.end()}, std::move(tag)};
}

Family pullback_family(const GroupHom& phi, const LatticePtr& source, const Family& F) {
    if (F.lattice->group_ptr().get() != phi.target.get())
        throw Error(ErrorCode::FamilyGroupMismatch, "family does not live on the target of the homomorphism");
    if (source->group_ptr().get() != phi.source.get())
        throw Error(ErrorCode::FamilyGroupMismatch, "lattice does not belong to the source");
    std::vector<int> classes;
    for (int c = 0; c < source->class_count(); ++c) {
        const int image = F.lattice->find(phi.image_of(source->rep(c).elements));
        if (F.contains_subgroup(image)) classes.push_back(c);
    }
    return Family{source, std::move(classes), "pullback(" + F.tag + ")"};
}

Family combine_families(const Family& F, const Family& G, FamilyOp op) {
    if (F.lattice.get() != G.lattice.get()) throw Error(ErrorCode::FamilyGroupMismatch, "families on different groups");
    std::vector<int> out;
    if (op == FamilyOp::Union)
        std::set_union(F.classes.begin(), F.classes.end(), G.classes.begin(), G.classes.end(), std::back_inserter(out));
    else
        std::set_intersection(F.classes.begin(), F.classes.end(), G.classes.begin(), G.classes.end(),
                              std::back_inserter(out));
    Family R{F.lattice, std::move(out), F.tag + (op == FamilyOp::Union ? "+" : "&") + G.tag};
    if (!is_subgroup_closed(R)) throw Error(ErrorCode::NotAFamily, "combination is not subgroup closed");
    return R;
}

GSetPtr family_gset(const Family& F, bool full) {
    if (F.empty()) throw Error(ErrorCode::EmptyFamily, "family is empty");
    std::vector<int> ids;
    for (int c : full ? F.classes : F.maximal_classes()) ids.push_back(F.lattice->class_rep(c));
    return disjoint_union_of_orbits(F.lattice, ids);
}

nlohmann::json family_report(const Family& F) {
    const auto& L = *F.lattice;
    auto describe = [&](int c) {
        return nlohmann::json{{"class", c}, {"order", L.rep(c).order}, {"elements", L.rep(c).elements}};
    };
    nlohmann::json classes = nlohmann::json::array(), maximal = nlohmann::json::array();
    for (int c : F.classes) classes.push_back(describe(c));
    for (int c : F.maximal_classes()) maximal.push_back(describe(c));
    return {{"tag", F.tag},
            {"classes", classes},
            {"maximal", maximal},
            {"class_count", F.classes.size()},
            {"subgroup_count",
             [&] {
                 std::size_t n = 0;
                 for (int c : F.classes) n += L.class_members(c).size();
                 return n;
             }()},
            // A finite group admits no extension by Z, so F' adds nothing here.
            {"finite_part_of_prime_construction_equals_family", true}};
}

}  // namespace dress
