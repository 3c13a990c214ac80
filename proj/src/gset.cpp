#include "dress/gset.hpp"

#include <algorithm>
#include <map>

namespace dress {

GSet::GSet(LatticePtr lattice, int size, std::vector<int> action)
    : lattice_(std::move(lattice)), size_(size), action_(std::move(action)) {
    const FiniteGroup& G = lattice_->group();
    const int n = G.order();
    if (size_ < 0 || action_.size() != static_cast<std::size_t>(n) * size_)
        throw Error(ErrorCode::InvalidFunctorData, "action table has wrong size");
    for (int v : action_)
        if (v < 0 || v >= size_) throw Error(ErrorCode::InvalidFunctorData, "action value out of range");
    for (int x = 0; x < size_; ++x)
        if (act(FiniteGroup::identity, x) != x) throw Error(ErrorCode::InvalidFunctorData, "identity does not act trivially");
    for (int g : G.generators())
        for (int h = 0; h < n; ++h)
            for (int x = 0; x < size_; ++x)
                if (act(g, act(h, x)) != act(G.mul(g, h), x))
                    throw Error(ErrorCode::InvalidFunctorData, "action is not compatible with multiplication");

    orbit_of_.assign(size_, -1);
    transversal_.assign(size_, -1);
    for (int x = 0; x < size_; ++x) {
        if (orbit_of_[x] >= 0) continue;
        Orbit o;
        o.base = x;
        const int id = static_cast<int>(orbits_.size());
        std::vector<int> stab;
        for (int g = 0; g < n; ++g) {
            const int y = act(g, x);
            if (orbit_of_[y] < 0) {
                orbit_of_[y] = id;
                transversal_[y] = g;
                o.points.push_back(y);
            }
            if (y == x) stab.push_back(g);
        }
        std::sort(o.points.begin(), o.points.end());
        o.stabilizer = lattice_->find(stab);
        o.class_id = lattice_->class_of(o.stabilizer);
        const int rep = lattice_->class_rep(o.class_id);
        // a with a H a^-1 = Stab(base); the anchor a^-1 . base has stabilizer H.
        const int a = *lattice_->conjugator(rep, o.stabilizer);
        o.anchor_shift = a;
        o.anchor = act(G.inv(a), x);
        orbits_.push_back(std::move(o));
    }
}

int GSet::anchor_coordinate(int x) const {
    const auto& o = orbits_[orbit_of_[x]];
    return group().mul(transversal_[x], o.anchor_shift);
}

std::vector<int> GSet::fixed_points(const std::vector<int>& elements) const {
    std::vector<int> out;
    for (int x = 0; x < size_; ++x) {
        bool fixed = true;
        for (int h : elements)
            if (act(h, x) != x) {
                fixed = false;
                break;
            }
        if (fixed) out.push_back(x);
    }
    return out;
}

std::vector<int> GSet::fixed_points(const Subgroup& H) const { return fixed_points(H.elements); }

// ---------------------------------------------------------------------------

GSetPtr homogeneous_gset(const LatticePtr& L, int subgroup_id) {
    if (subgroup_id < 0 || subgroup_id >= L->size()) throw Error(ErrorCode::NotASubgroup, "unknown subgroup id");
    const FiniteGroup& G = L->group();
    const Subgroup& H = L->subgroup(subgroup_id);
    const int n = G.order();
    std::vector<int> coset(n, -1);
    int count = 0;
    for (int g = 0; g < n; ++g) {
        if (coset[g] >= 0) continue;
        for (int h : H.elements) coset[G.mul(g, h)] = count;
        ++count;
    }
    std::vector<int> rep(count);
    for (int g = n - 1; g >= 0; --g) rep[coset[g]] = g;
    std::vector<int> action(static_cast<std::size_t>(n) * count);
    for (int g = 0; g < n; ++g)
        for (int c = 0; c < count; ++c) action[static_cast<std::size_t>(g) * count + c] = coset[G.mul(g, rep[c])];
    return std::make_shared<const GSet>(L, count, std::move(action));
}

GSetPtr empty_gset(const LatticePtr& L) { return std::make_shared<const GSet>(L, 0, std::vector<int>{}); }

GSetPtr point_gset(const LatticePtr& L) {
    return std::make_shared<const GSet>(L, 1, std::vector<int>(L->group().order(), 0));
}

GMap identity_map(const GSetPtr& S) {
    std::vector<int> m(S->size());
    for (int x = 0; x < S->size(); ++x) m[x] = x;
    return {S, S, std::move(m)};
}

GMap projection_to_point(const GSetPtr& S) {
    return {S, point_gset(S->lattice_ptr()), std::vector<int>(S->size(), 0)};
}

GMap make_gmap(const GSetPtr& source, const GSetPtr& target, std::vector<int> point_map) {
    if (!source->same_group(*target)) throw Error(ErrorCode::MismatchedGroups, "G-map between different groups");
    if (static_cast<int>(point_map.size()) != source->size())
        throw Error(ErrorCode::InvalidFunctorData, "point map has wrong length");
    for (int v : point_map)
        if (v < 0 || v >= target->size()) throw Error(ErrorCode::InvalidFunctorData, "point map out of range");
    for (int g : source->group().generators())
        for (int x = 0; x < source->size(); ++x)
            if (point_map[source->act(g, x)] != target->act(g, point_map[x]))
                throw Error(ErrorCode::InvalidFunctorData, "map is not equivariant");
    return {source, target, std::move(point_map)};
}

GMap equivariant_extension(const GSetPtr& S, const GSetPtr& T, const std::vector<int>& base_images) {
    if (!S->same_group(*T)) throw Error(ErrorCode::MismatchedGroups, "G-map between different groups");
    const auto& orbits = S->orbits();
    if (base_images.size() != orbits.size()) throw Error(ErrorCode::InvalidFunctorData, "one image per orbit needed");
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const int y = base_images[i];
        if (y < 0 || y >= T->size()) throw Error(ErrorCode::InvalidFunctorData, "base image out of range");
        for (int h : S->lattice().subgroup(orbits[i].stabilizer).elements)
            if (T->act(h, y) != y) throw Error(ErrorCode::InvalidFunctorData, "base image not fixed by the stabilizer");
    }
    std::vector<int> m(S->size());
    for (int x = 0; x < S->size(); ++x) m[x] = T->act(S->transversal(x), base_images[S->orbit_of(x)]);
    return {S, T, std::move(m)};
}

CartesianSquare pullback_square(const GMap& f1, const GMap& f2, const GSetCaps& caps) {
    if (!f1.source->same_group(*f2.source) || !f1.target->same_group(*f2.target) ||
        !f1.source->same_group(*f1.target))
        throw Error(ErrorCode::MismatchedGroups, "pullback of maps over different groups");
    if (f1.target.get() != f2.target.get() &&
        (f1.target->size() != f2.target->size() || f1.target->action() != f2.target->action()))
        throw Error(ErrorCode::MismatchedTargets, "pullback needs a common target");
    const auto& S1 = *f1.source;
    const auto& S2 = *f2.source;
    if (static_cast<std::int64_t>(S1.size()) * S2.size() > caps.max_points)
        throw Error(ErrorCode::CapExceeded, "fiber product too large");
    std::vector<std::pair<int, int>> pts;
    std::map<std::pair<int, int>, int> index;
    for (int a = 0; a < S1.size(); ++a)
        for (int b = 0; b < S2.size(); ++b)
            if (f1(a) == f2(b)) {
                index[{a, b}] = static_cast<int>(pts.size());
                pts.emplace_back(a, b);
            }
    const int n = S1.group().order();
    const int m = static_cast<int>(pts.size());
    std::vector<int> action(static_cast<std::size_t>(n) * m);
    for (int g = 0; g < n; ++g)
        for (int i = 0; i < m; ++i)
            action[static_cast<std::size_t>(g) * m + i] = index.at({S1.act(g, pts[i].first), S2.act(g, pts[i].second)});
    auto corner = std::make_shared<const GSet>(S1.lattice_ptr(), m, std::move(action));
    std::vector<int> p1(m), p2(m);
    for (int i = 0; i < m; ++i) {
        p1[i] = pts[i].first;
        p2[i] = pts[i].second;
    }
    return {corner, GMap{corner, f1.source, std::move(p1)}, GMap{corner, f2.source, std::move(p2)}, f1, f2};
}

std::vector<GMap> enumerate_gmaps(const GSetPtr& S, const GSetPtr& T, const GSetCaps& caps) {
    if (!S->same_group(*T)) throw Error(ErrorCode::MismatchedGroups, "G-maps between different groups");
    const auto& orbits = S->orbits();
    double bound = 1;
    for (std::size_t i = 0; i < orbits.size(); ++i) bound *= T->size();
    if (bound > static_cast<double>(caps.max_map_search))
        throw Error(ErrorCode::CountCapExceeded, "|T|^(#orbits of S) exceeds the search cap");
    std::vector<std::vector<int>> choices;
    for (const auto& o : orbits) choices.push_back(T->fixed_points(S->lattice().subgroup(o.stabilizer)));
    std::vector<GMap> out;
    std::vector<std::size_t> pick(orbits.size(), 0);
    for (const auto& c : choices)
        if (c.empty()) return out;
    for (;;) {
        std::vector<int> m(S->size());
        for (std::size_t i = 0; i < orbits.size(); ++i)
            for (int x : orbits[i].points) m[x] = T->act(S->transversal(x), choices[i][pick[i]]);
        out.push_back({S, T, std::move(m)});
        std::size_t k = orbits.size();
        while (k > 0) {
            --k;
            if (++pick[k] < choices[k].size()) break;
            pick[k] = 0;
            if (k == 0) return out;
        }
        if (orbits.empty()) return out;
    }
}

GSetPtr disjoint_union(const GSetPtr& S, const GSetPtr& T) {
    if (!S->same_group(*T)) throw Error(ErrorCode::MismatchedGroups, "union over different groups");
    const int n = S->group().order();
    const int a = S->size(), b = T->size(), m = a + b;
    std::vector<int> action(static_cast<std::size_t>(n) * m);
    for (int g = 0; g < n; ++g) {
        for (int x = 0; x < a; ++x) action[static_cast<std::size_t>(g) * m + x] = S->act(g, x);
        for (int y = 0; y < b; ++y) action[static_cast<std::size_t>(g) * m + a + y] = a + T->act(g, y);
    }
    return std::make_shared<const GSet>(S->lattice_ptr(), m, std::move(action));
}

std::pair<GMap, GMap> union_inclusions(const GSetPtr& S, const GSetPtr& T, const GSetPtr& sum) {
    std::vector<int> i0(S->size()), i1(T->size());
    for (int x = 0; x < S->size(); ++x) i0[x] = x;
    for (int y = 0; y < T->size(); ++y) i1[y] = S->size() + y;
    return {GMap{S, sum, std::move(i0)}, GMap{T, sum, std::move(i1)}};
}

GSetPtr product(const GSetPtr& S, const GSetPtr& T, const GSetCaps& caps) {
    if (!S->same_group(*T)) throw Error(ErrorCode::MismatchedGroups, "product over different groups");
    const std::int64_t m64 = static_cast<std::int64_t>(S->size()) * T->size();
    if (m64 > caps.max_points) throw Error(ErrorCode::CapExceeded, "product has " + std::to_string(m64) + " points");
    const int n = S->group().order();
    const int b = T->size();
    const int m = static_cast<int>(m64);
    std::vector<int> action(static_cast<std::size_t>(n) * m);
    for (int g = 0; g < n; ++g)
        for (int x = 0; x < S->size(); ++x)
            for (int y = 0; y < b; ++y)
                action[static_cast<std::size_t>(g) * m + x * b + y] = S->act(g, x) * b + T->act(g, y);
    return std::make_shared<const GSet>(S->lattice_ptr(), m, std::move(action));
}

std::pair<GMap, GMap> product_projections(const GSetPtr& S, const GSetPtr& T, const GSetPtr& prod) {
    std::vector<int> p0(prod->size()), p1(prod->size());
    for (int i = 0; i < prod->size(); ++i) {
        p0[i] = i / T->size();
        p1[i] = i % T->size();
    }
    return {GMap{prod, S, std::move(p0)}, GMap{prod, T, std::move(p1)}};
}

GSetPtr power(const GSetPtr& S, int n, const GSetCaps& caps) {
    GSetPtr out = point_gset(S->lattice_ptr());
    for (int i = 0; i < n; ++i) out = product(out, S, caps);
    return out;
}

GSetPtr disjoint_union_of_orbits(const LatticePtr& L, const std::vector<int>& subgroup_ids) {
    GSetPtr out = empty_gset(L);
    for (int id : subgroup_ids) out = disjoint_union(out, homogeneous_gset(L, id));
    return out;
}

bool check_orbit_counting(const GSet& S) {
    std::int64_t total = 0;
    for (int g = 0; g < S.group().order(); ++g)
        for (int x = 0; x < S.size(); ++x)
            if (S.act(g, x) == x) ++total;
    return total == static_cast<std::int64_t>(S.orbits().size()) * S.group().order();
}

nlohmann::json gset_to_json(const GSet& S) {
    std::vector<std::vector<int>> rows(S.group().order(), std::vector<int>(S.size()));
    for (int g = 0; g < S.group().order(); ++g)
        for (int x = 0; x < S.size(); ++x) rows[g][x] = S.act(g, x);
    return {{"group", group_spec_json(S.group())}, {"size", S.size()}, {"action", rows}};
}

GSetPtr gset_from_json(const LatticePtr& L, const nlohmann::json& j) {
    const int size = j.at("size").get<int>();
    auto rows = j.at("action").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(rows.size()) != L->group().order())
        throw Error(ErrorCode::MismatchedGroups, "action rows do not match group order");
    if (j.contains("group")) {
        auto spec = j.at("group");
        if (spec.value("type", "") == "table" &&
            spec.at("table").get<std::vector<std::vector<int>>>() != group_spec_json(L->group()).at("table").get<std::vector<std::vector<int>>>())
            throw Error(ErrorCode::MismatchedGroups, "embedded group differs from the lattice's group");
    }
    std::vector<int> action;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != size) throw Error(ErrorCode::InvalidFunctorData, "ragged action table");
        action.insert(action.end(), r.begin(), r.end());
    }
    return std::make_shared<const GSet>(L, size, std::move(action));
}

// ---------------------------------------------------------------------------

OrbitSkeleton::OrbitSkeleton(LatticePtr L) : lattice_(std::move(L)) {
    const auto& G = lattice_->group();
    const int k = lattice_->class_count();
    coset_index_.resize(k);
    coset_reps_.resize(k);
    orbits_.resize(k);
    for (int c = 0; c < k; ++c) {
        const auto& H = lattice_->rep(c);
        auto& idx = coset_index_[c];
        idx.assign(G.order(), -1);
        int count = 0;
        for (int g = 0; g < G.order(); ++g) {
            if (idx[g] >= 0) continue;
            coset_reps_[c].push_back(g);
            for (int h : H.elements) idx[G.mul(g, h)] = count;
            ++count;
        }
        orbits_[c] = homogeneous_gset(lattice_, lattice_->class_rep(c));
    }
    homs_.assign(k, std::vector<std::vector<int>>(k));
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t) {
            const auto& Hs = lattice_->rep(s);
            const auto& Ht = lattice_->rep(t);
            if (Ht.order % Hs.order != 0) continue;
            for (int coset = 0; coset < coset_count(t); ++coset) {
                const int g = coset_reps_[t][coset];
                bool fixed = true;
                for (int h : Hs.elements)
                    if (!Ht.contains(G.mul(G.mul(G.inv(g), h), g))) {
                        fixed = false;
                        break;
                    }
                if (fixed) homs_[s][t].push_back(coset);
            }
        }
}

int OrbitSkeleton::morphism_position(int s, int t, int coset) const {
    const auto& v = homs_[s][t];
    auto it = std::lower_bound(v.begin(), v.end(), coset);
    return (it != v.end() && *it == coset) ? static_cast<int>(it - v.begin()) : -1;
}

int OrbitSkeleton::compose(int t, int u, int coset_a_of_t, int coset_b_of_u) const {
    const auto& G = lattice_->group();
    return coset_of(u, G.mul(coset_reps_[t][coset_a_of_t], coset_reps_[u][coset_b_of_u]));
}

}  // namespace dress
