#include "dress/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dress {

// ---------------------------------------------------------------------------
// FiniteGroup

void FiniteGroup::finish() {
    element_orders_.assign(order_, 0);
    for (int a = 0; a < order_; ++a) {
        int x = a, k = 1;
        while (x != identity) {
            x = mul(x, a);
            ++k;
        }
        element_orders_[a] = k;
    }
    if (generators_.empty() && order_ > 1) {
        std::vector<char> in(order_, 0);
        in[0] = 1;
        for (int g = 1; g < order_; ++g) {
            if (in[g]) continue;
            generators_.push_back(g);
            for (int x : closure(generators_)) in[x] = 1;
        }
    }
}

int FiniteGroup::exponent() const {
    int e = 1;
    for (int o : element_orders_) e = std::lcm(e, o);
    return e;
}

bool FiniteGroup::is_abelian() const {
    for (int a : generators_)
        for (int b : generators_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
    std::vector<char> seen(order_, 0);
    std::vector<int> elems{identity};
    seen[identity] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (int s : gens) {
            int y = mul(elems[i], s);
            if (!seen[y]) {
                seen[y] = 1;
                elems.push_back(y);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

FiniteGroup build_group_from_table(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw Error(ErrorCode::InvalidGroupSpec, "empty multiplication table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidGroupSpec, "table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw Error(ErrorCode::InvalidGroupSpec, "table entry out of range");
    }
    int e = -1;
    for (int c = 0; c < n && e < 0; ++c) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = table[c][x] == x && table[x][c] == x;
        if (ok) e = c;
    }
    if (e < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity");
    // Reindex so that e becomes 0.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[e]);  // perm maps old -> new and is an involution
    FiniteGroup G;
    G.order_ = n;
    G.table_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            G.table_[static_cast<std::size_t>(perm[a]) * n + perm[b]] = perm[table[a][b]];
    G.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (G.mul(a, b) == 0 && G.mul(b, a) == 0) {
                G.inverse_[a] = b;
                break;
            }
        if (G.inverse_[a] < 0) throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                    throw Error(ErrorCode::TableNotAssociative,
                                "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    G.origin_ = "table";
    G.finish();
    return G;
}

FiniteGroup build_group_from_permutations(int degree, const std::vector<std::vector<std::vector<int>>>& generators) {
    if (degree < 1) throw Error(ErrorCode::PermutationsInvalid, "degree must be positive");
    std::vector<std::vector<int>> gens;
    for (const auto& cycles : generators) {
        std::vector<int> p(degree);
        std::iota(p.begin(), p.end(), 0);
        std::vector<char> used(degree, 0);
        for (const auto& cyc : cycles) {
            for (int x : cyc) {
                if (x < 1 || x > degree) throw Error(ErrorCode::PermutationsInvalid, "point out of range");
                if (used[x - 1]) throw Error(ErrorCode::PermutationsInvalid, "point repeated across cycles");
                used[x - 1] = 1;
            }
            for (std::size_t i = 0; i < cyc.size(); ++i) p[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
        }
        gens.push_back(std::move(p));
    }
    // (a*b)(x) = a(b(x))
    auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c(degree);
        for (int x = 0; x < degree; ++x) c[x] = a[b[x]];
        return c;
    };
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> queue{id};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& s : gens) {
            auto y = compose(queue[i], s);
            if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    std::vector<std::vector<int>> elems(seen.begin(), seen.end());  // lexicographic; identity first
    const int n = static_cast<int>(elems.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[elems[i]] = i;
    FiniteGroup G;
    G.order_ = n;
    G.table_.resize(static_cast<std::size_t>(n) * n);
    G.inverse_.resize(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G.table_[static_cast<std::size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
    for (int a = 0; a < n; ++a) {
        std::vector<int> inv(degree);
        for (int x = 0; x < degree; ++x) inv[elems[a][x]] = x;
        G.inverse_[a] = index.at(inv);
    }
    for (const auto& s : gens) {
        int g = index.at(s);
        if (g != FiniteGroup::identity && std::find(G.generators_.begin(), G.generators_.end(), g) == G.generators_.end())
            G.generators_.push_back(g);
    }
    G.origin_ = "perm";
    G.degree_ = degree;
    G.permutations_ = std::move(elems);
    G.finish();
    return G;
}

FiniteGroup build_group(const nlohmann::json& spec) {
    try {
        const std::string type = spec.at("type").get<std::string>();
        if (type == "table") return build_group_from_table(spec.at("table").get<std::vector<std::vector<int>>>());
        if (type == "perm")
            return build_group_from_permutations(spec.at("degree").get<int>(),
                                                 spec.at("generators").get<std::vector<std::vector<std::vector<int>>>>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidGroupSpec, e.what());
    }
    throw Error(ErrorCode::InvalidGroupSpec, "unknown group-spec type");
}

nlohmann::json group_spec_json(const FiniteGroup& G) {
    std::vector<std::vector<int>> t(G.order(), std::vector<int>(G.order()));
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b) t[a][b] = G.mul(a, b);
    return {{"type", "table"}, {"table", t}};
}

// ---------------------------------------------------------------------------
// SubgroupLattice

bool Subgroup::is_subset_of(const Subgroup& other) const {
    if (order > other.order) return false;
    for (std::size_t w = 0; w < mask.size(); ++w)
        if (mask[w] & ~other.mask[w]) return false;
    return true;
}

std::vector<std::uint64_t> SubgroupLattice::make_mask(const std::vector<int>& elems) const {
    std::vector<std::uint64_t> m((group_->order() + 63) / 64, 0);
    for (int g : elems) m[g >> 6] |= std::uint64_t{1} << (g & 63);
    return m;
}

SubgroupLattice::SubgroupLattice(GroupPtr G, int order_cap) : group_(std::move(G)) {
    const FiniteGroup& g = *group_;
    if (g.order() > order_cap)
        throw Error(ErrorCode::OrderCapExceeded,
                    "group order " + std::to_string(g.order()) + " exceeds cap " + std::to_string(order_cap));

    // Bottom-up: cyclic subgroups, then joins with cyclic subgroups until closed.
    struct Found {
        std::vector<int> elems;
        std::vector<int> gens;
    };
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    std::vector<Found> found;
    std::vector<int> cyclic_gens;
    for (int x = 0; x < g.order(); ++x) {
        auto e = g.closure({x});
        auto m = make_mask(e);
        if (seen.emplace(m, found.size()).second) {
            found.push_back({e, x == 0 ? std::vector<int>{} : std::vector<int>{x}});
            if (x != 0) cyclic_gens.push_back(x);
        }
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (int c : cyclic_gens) {
            if (std::binary_search(found[i].elems.begin(), found[i].elems.end(), c)) continue;
            auto gens = found[i].gens;
            gens.push_back(c);
            auto e = g.closure(gens);
            auto m = make_mask(e);
            if (seen.emplace(m, found.size()).second) found.push_back({std::move(e), std::move(gens)});
        }
    }
    std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return a.elems < b.elems;
    });
    for (auto& f : found) {
        Subgroup s;
        s.order = static_cast<int>(f.elems.size());
        s.mask = make_mask(f.elems);
        s.elements = std::move(f.elems);
        s.id = static_cast<int>(subgroups_.size());
        index_[s.mask] = s.id;
        subgroups_.push_back(std::move(s));
    }
    for (auto& s : subgroups_) {
        if (s.class_id >= 0) continue;
        const int c = static_cast<int>(classes_.size());
        std::set<int> members;
        for (int x = 0; x < g.order(); ++x) members.insert(conjugate(s.id, x));
        classes_.emplace_back(members.begin(), members.end());
        for (int m : members) {
            subgroups_[m].class_id = c;
            subgroups_[m].is_normal = members.size() == 1;
        }
    }
    // Cache the standard classification tags.
    std::vector<int> primes;
    for (int p = 2; p <= g.order(); ++p)
        if (is_prime(p) && g.order() % p == 0) primes.push_back(p);
    for (auto& s : subgroups_) {
        std::vector<ClassTag> tags{{ClassTag::Kind::Cyclic, 0}, {ClassTag::Kind::Elementary, 0},
                                   {ClassTag::Kind::Hyperelementary, 0}};
        for (int p : primes) {
            tags.push_back({ClassTag::Kind::PGroup, p});
            tags.push_back({ClassTag::Kind::PElementary, p});
            tags.push_back({ClassTag::Kind::PHyperelementary, p});
        }
        for (const auto& t : tags) s.class_tags[t.str()] = classify_subgroup(*this, s.id, t);
    }
}

int SubgroupLattice::find(const std::vector<int>& sorted_elements) const {
    return find_mask(make_mask(sorted_elements));
}

int SubgroupLattice::find_mask(const std::vector<std::uint64_t>& mask) const {
    auto it = index_.find(mask);
    return it == index_.end() ? -1 : it->second;
}

int SubgroupLattice::conjugate(int id, int x) const {
    const auto& s = subgroups_.at(id);
    std::vector<std::uint64_t> m(s.mask.size(), 0);
    for (int h : s.elements) {
        int c = group_->conjugate(x, h);
        m[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
    return index_.at(m);
}

std::optional<int> SubgroupLattice::conjugator(int from, int to) const {
    for (int x = 0; x < group_->order(); ++x)
        if (conjugate(from, x) == to) return x;
    return std::nullopt;
}

std::optional<int> SubgroupLattice::subconjugator(int H, int K) const {
    const auto& h = subgroups_.at(H);
    const auto& k = subgroups_.at(K);
    if (k.order % h.order != 0) return std::nullopt;
    for (int x = 0; x < group_->order(); ++x) {
        bool ok = true;
        for (int e : h.elements)
            if (!k.contains(group_->conjugate(x, e))) {
                ok = false;
                break;
            }
        if (ok) return x;
    }
    return std::nullopt;
}

std::vector<int> SubgroupLattice::subgroups_of(int id) const {
    const auto& s = subgroups_.at(id);
    std::vector<int> out;
    for (const auto& t : subgroups_)
        if (t.is_subset_of(s)) out.push_back(t.id);
    return out;
}

int SubgroupLattice::normalizer(int id) const {
    std::vector<int> n;
    for (int x = 0; x < group_->order(); ++x)
        if (conjugate(id, x) == id) n.push_back(x);
    return find(n);
}

// ---------------------------------------------------------------------------
// Classification

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::string ClassTag::str() const {
    switch (kind) {
        case Kind::Cyclic: return "cyclic";
        case Kind::PGroup: return "p-group(" + std::to_string(p) + ")";
        case Kind::PElementary: return "p-elementary(" + std::to_string(p) + ")";
        case Kind::PHyperelementary: return "p-hyperelementary(" + std::to_string(p) + ")";
        case Kind::Elementary: return "elementary";
        case Kind::Hyperelementary: return "hyperelementary";
        case Kind::AllFinite: return "all-finite";
    }
    return "?";
}

ClassTag ClassTag::parse(const std::string& s) {
    auto with_prime = [&](Kind k, const std::string& digits) {
        int p = 0;
        try {
            p = std::stoi(digits);
        } catch (...) {
            throw Error(ErrorCode::UnknownTag, s);
        }
        if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
        return ClassTag{k, p};
    };
    auto paren = [&](const std::string& prefix, Kind k) -> std::optional<ClassTag> {
        if (s.rfind(prefix + "(", 0) == 0 && s.back() == ')')
            return with_prime(k, s.substr(prefix.size() + 1, s.size() - prefix.size() - 2));
        return std::nullopt;
    };
    if (s == "cyclic" || s == "FCY") return {Kind::Cyclic, 0};
    if (s == "elementary" || s == "E") return {Kind::Elementary, 0};
    if (s == "hyperelementary" || s == "H") return {Kind::Hyperelementary, 0};
    if (s == "all-finite" || s == "FIN") return {Kind::AllFinite, 0};
    if (auto t = paren("p-group", Kind::PGroup)) return *t;
    if (auto t = paren("p-elementary", Kind::PElementary)) return *t;
    if (auto t = paren("p-hyperelementary", Kind::PHyperelementary)) return *t;
    if (s.size() > 2 && s[1] == '_') {
        if (s[0] == 'E') return with_prime(Kind::PElementary, s.substr(2));
        if (s[0] == 'H') return with_prime(Kind::PHyperelementary, s.substr(2));
        if (s[0] == 'P') return with_prime(Kind::PGroup, s.substr(2));
    }
    throw Error(ErrorCode::UnknownTag, s);
}

namespace {

bool is_power_of(int n, int p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

bool subgroup_is_cyclic(const SubgroupLattice& L, const Subgroup& H) {
    for (int h : H.elements)
        if (L.group().element_order(h) == H.order) return true;
    return false;
}

bool commute_elementwise(const FiniteGroup& G, const Subgroup& A, const Subgroup& B) {
    for (int a : A.elements)
        for (int b : B.elements)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

bool normal_in(const FiniteGroup& G, const Subgroup& C, const Subgroup& H) {
    for (int h : H.elements)
        for (int c : C.elements)
            if (!C.contains(G.conjugate(h, c))) return false;
    return true;
}

bool p_elementary(const SubgroupLattice& L, const Subgroup& H, int p) {
    const auto& G = L.group();
    for (int cid : L.subgroups_of(H.id)) {
        const auto& C = L.subgroup(cid);
        if (C.order % p == 0 || H.order % C.order != 0 || !subgroup_is_cyclic(L, C)) continue;
        const int want = H.order / C.order;
        if (!is_power_of(want, p)) continue;
        for (int pid : L.subgroups_of(H.id)) {
            const auto& P = L.subgroup(pid);
            if (P.order == want && commute_elementwise(G, C, P)) return true;
        }
    }
    return false;
}

bool p_hyperelementary(const SubgroupLattice& L, const Subgroup& H, int p) {
    for (int cid : L.subgroups_of(H.id)) {
        const auto& C = L.subgroup(cid);
        if (C.order % p == 0 || !is_power_of(H.order / C.order, p)) continue;
        if (subgroup_is_cyclic(L, C) && normal_in(L.group(), C, H)) return true;
    }
    return false;
}

}  // namespace

bool classify_subgroup(const SubgroupLattice& L, int id, const ClassTag& tag) {
    const Subgroup& H = L.subgroup(id);
    using K = ClassTag::Kind;
    if ((tag.kind == K::PGroup || tag.kind == K::PElementary || tag.kind == K::PHyperelementary) && !is_prime(tag.p))
        throw Error(ErrorCode::InvalidPrime, std::to_string(tag.p) + " is not prime");
    switch (tag.kind) {
        case K::AllFinite: return true;
        case K::Cyclic: return subgroup_is_cyclic(L, H);
        case K::PGroup: return is_power_of(H.order, tag.p);
        case K::PElementary: return p_elementary(L, H, tag.p);
        case K::PHyperelementary: return p_hyperelementary(L, H, tag.p);
        case K::Elementary:
        case K::Hyperelementary: {
            if (subgroup_is_cyclic(L, H)) return true;
            for (int p = 2; p <= H.order; ++p) {
                if (!is_prime(p) || H.order % p != 0) continue;
                if (tag.kind == K::Elementary ? p_elementary(L, H, p) : p_hyperelementary(L, H, p)) return true;
            }
            return false;
        }
    }
    return false;
}

bool classify_group(const FiniteGroup& H, const ClassTag& tag) {
    SubgroupLattice L(std::make_shared<const FiniteGroup>(H), std::max(H.order(), SubgroupLattice::default_order_cap));
    return classify_subgroup(L, L.whole(), tag);
}

// ---------------------------------------------------------------------------
// Homomorphisms

std::vector<int> GroupHom::kernel() const {
    std::vector<int> k;
    for (int x = 0; x < source->order(); ++x)
        if (image_table[x] == FiniteGroup::identity) k.push_back(x);
    return k;
}

std::vector<int> GroupHom::image() const {
    std::set<int> s(image_table.begin(), image_table.end());
    return {s.begin(), s.end()};
}

std::vector<int> GroupHom::image_of(const std::vector<int>& elems) const {
    std::set<int> s;
    for (int x : elems) s.insert(image_table[x]);
    return {s.begin(), s.end()};
}

GroupHom build_hom(GroupPtr source, GroupPtr target, const std::map<int, int>& generator_images) {
    const auto& S = *source;
    const auto& T = *target;
    for (int g : S.generators())
        if (!generator_images.count(g))
            throw Error(ErrorCode::NotDefinedOnGenerators, "no image for generator " + std::to_string(g));
    for (const auto& [g, t] : generator_images)
        if (g < 0 || g >= S.order() || t < 0 || t >= T.order())
            throw Error(ErrorCode::NotDefinedOnGenerators, "generator image out of range");
    std::vector<int> img(S.order(), -1);
    img[FiniteGroup::identity] = FiniteGroup::identity;
    std::vector<int> queue{FiniteGroup::identity};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const int x = queue[i];
        for (int s : S.generators()) {
            const int y = S.mul(x, s);
            const int v = T.mul(img[x], generator_images.at(s));
            if (img[y] < 0) {
                img[y] = v;
                queue.push_back(y);
            } else if (img[y] != v) {
                throw Error(ErrorCode::NotAHomomorphism, "relation violated at element " + std::to_string(y));
            }
        }
    }
    for (const auto& [g, t] : generator_images)
        if (img[g] != t) throw Error(ErrorCode::NotAHomomorphism, "inconsistent image for element " + std::to_string(g));
    return {std::move(source), std::move(target), std::move(img)};
}

GroupHom identity_hom(GroupPtr G) {
    std::vector<int> t(G->order());
    std::iota(t.begin(), t.end(), 0);
    return {G, G, std::move(t)};
}

FiniteGroup subgroup_as_group(const FiniteGroup& G, const std::vector<int>& elems) {
    const int n = static_cast<int>(elems.size());
    std::map<int, int> index;
    for (int i = 0; i < n; ++i) index[elems[i]] = i;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto it = index.find(G.mul(elems[a], elems[b]));
            if (it == index.end()) throw Error(ErrorCode::NotASubgroup, "element set not closed");
            table[a][b] = it->second;
        }
    return build_group_from_table(table);
}

GroupHom inclusion_hom(GroupPtr G, const std::vector<int>& elems) {
    auto H = std::make_shared<const FiniteGroup>(subgroup_as_group(*G, elems));
    return {H, std::move(G), elems};
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
    if (inner.target.get() != outer.source.get() && inner.target->order() != outer.source->order())
        throw Error(ErrorCode::GroupMismatch, "composition of incompatible homomorphisms");
    std::vector<int> t(inner.source->order());
    for (int x = 0; x < inner.source->order(); ++x) t[x] = outer.image_table[inner.image_table[x]];
    return {inner.source, outer.target, std::move(t)};
}

}  // namespace dress
