#include "dress/tower.hpp"

namespace dress {

OrbitTower::OrbitTower(GSetPtr S, int levels, std::int64_t max_orbits) : S_(std::move(S)) {
    if (S_->size() == 0) throw Error(ErrorCode::EmptyGSet, "orbit tower over the empty G-set");
    const auto& L = S_->lattice();
    const auto& G = S_->group();
    classes_.resize(L.class_count());
    levels_.resize(levels + 1);
    child_offset_.resize(levels + 1);
    levels_[0].push_back(Node{-1, -1, L.class_of(L.whole()), {}});
    std::int64_t total = 1;
    for (int n = 1; n <= levels; ++n) {
        auto& prev = levels_[n - 1];
        auto& offs = child_offset_[n - 1];
        offs.resize(prev.size());
        std::vector<Node> next;
        for (std::size_t p = 0; p < prev.size(); ++p) {
            offs[p] = static_cast<int>(next.size());
            const ClassData& cd = class_data(prev[p].class_id);
            total += static_cast<std::int64_t>(cd.children.size());
            if (total > max_orbits) throw Error(ErrorCode::CapExceeded, "orbit tower exceeds orbit cap");
            for (std::size_t j = 0; j < cd.children.size(); ++j) {
                const Child& ch = cd.children[j];
                Node node;
                node.parent = static_cast<int>(p);
                node.child = static_cast<int>(j);
                node.class_id = ch.class_id;
                const int ainv = G.inv(ch.shift);
                node.anchor.reserve(n);
                for (int x : prev[p].anchor) node.anchor.push_back(S_->act(ainv, x));
                node.anchor.push_back(S_->act(ainv, ch.rep));
                next.push_back(std::move(node));
            }
        }
        levels_[n] = std::move(next);
    }
}

const OrbitTower::ClassData& OrbitTower::class_data(int c) {
    ClassData& cd = classes_[c];
    if (cd.ready) return cd;
    const auto& L = S_->lattice();
    const auto& K = L.rep(c);
    const int n = S_->size();
    cd.korbit.assign(n, -1);
    cd.element.assign(n, -1);
    for (int y = 0; y < n; ++y) {
        if (cd.korbit[y] >= 0) continue;
        const int idx = static_cast<int>(cd.children.size());
        std::vector<int> stab;
        for (int k : K.elements) {
            const int z = S_->act(k, y);
            if (cd.korbit[z] < 0) {
                cd.korbit[z] = idx;
                cd.element[z] = k;
            }
            if (z == y) stab.push_back(k);
        }
        const int sid = L.find(stab);
        const int cls = L.class_of(sid);
        cd.children.push_back(Child{y, cls, *L.conjugator(L.class_rep(cls), sid)});
    }
    cd.ready = true;
    return cd;
}

std::pair<int, int> OrbitTower::locate(const std::vector<int>& tuple) const {
    const auto& G = S_->group();
    int o = 0;
    int g = FiniteGroup::identity;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const ClassData& cd = classes_[levels_[i][o].class_id];
        const int y = S_->act(G.inv(g), tuple[i]);
        const int j = cd.korbit[y];
        g = G.mul(G.mul(g, cd.element[y]), cd.children[j].shift);
        o = child_offset_[i][o] + j;
    }
    return {o, g};
}

}  // namespace dress
