#include "dress/campaign.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dress/bredon.hpp"
#include "dress/character.hpp"
#include "dress/corpus.hpp"
#include "dress/error.hpp"
#include "dress/family.hpp"

namespace dress {

namespace {

struct CheckInfo {
    Check check;
    const char* name;
    const char* statement;
};

const CheckInfo kChecks[] = {
    {Check::Classify, "classify", "family-closure"},
    {Check::CharTable, "char-table", "character-orthogonality"},
    {Check::Marks, "marks", "burnside-marks-homomorphism"},
    {Check::MackeyAxioms, "mackey-axioms", "double-coset-formula"},
    {Check::GreenPairing, "green-pairing", "green-pairing-conditions"},
    {Check::Dress, "dress", "projective-implies-acyclic"},
    {Check::SProjective, "s-projective", "projective-iff-split"},
    {Check::Brauer, "brauer", "brauer-induction"},
    {Check::Artin, "artin", "artin-induction"},
    {Check::Hyperelementary, "hyperelementary", "hyperelementary-induction"},
    {Check::Tor, "tor", "tor-of-the-family-resolution"},
    {Check::Colim, "colim", "colimit-map-agrees-with-induction"},
    {Check::CounterexampleSearch, "counterexample-search", "colimit-map-not-bijective"},
};

const CheckInfo& info(Check c) {
    for (const auto& i : kChecks)
        if (i.check == c) return i;
    throw std::logic_error("unknown check");
}

// Lazily built data for one group.
struct Context {
    const CampaignConfig& config;
    std::string name;
    GroupPtr group;
    LatticePtr L;
    SkeletonPtr sk;
    std::optional<RepRing> rep;
    std::optional<Burnside> burnside;

    Context(const CampaignConfig& c, const CampaignGroup& g) : config(c), name(g.name), group(g.group) {
        if (group->order() > config.caps.max_order)
            throw Error(ErrorCode::OrderCapExceeded,
                        "order " + std::to_string(group->order()) + " above --max-order " + std::to_string(config.caps.max_order));
        L = std::make_shared<const SubgroupLattice>(group);
        sk = std::make_shared<const OrbitSkeleton>(L);
    }
    const RepRing& R() {
        if (!rep) rep = build_rep_ring_green(sk, std::max(config.caps.max_order, group->order()));
        return *rep;
    }
    const Burnside& A() {
        if (!burnside) burnside = build_burnside_green(sk);
        return *burnside;
    }
    int whole() const { return L->class_of(L->whole()); }
    Family family(const std::string& tag) const { return family_from_class(L, tag); }
    GSetCaps gset_caps() const {
        GSetCaps c;
        c.max_points = config.caps.max_points;
        return c;
    }
};

bool check_classify(Context& cx, nlohmann::json& d) {
    bool ok = true;
    d["order"] = cx.group->order();
    d["subgroups"] = cx.L->size();
    d["classes"] = cx.L->class_count();
    nlohmann::json fams = nlohmann::json::object();
    for (const char* tag : {"FCY", "E", "H", "FIN"}) {
        auto F = cx.family(tag);
        const bool closed = is_subgroup_closed(F) && F.contains_subgroup(cx.L->trivial());
        ok &= closed;
        fams[tag] = {{"classes", F.classes.size()}, {"closed", closed}, {"contains_group", F.contains_subgroup(cx.L->whole())}};
    }
    // FCY <= E <= H <= FIN.
    const auto fcy = cx.family("FCY"), e = cx.family("E"), h = cx.family("H");
    const bool chain = combine_families(fcy, e, FamilyOp::Union) == e && combine_families(e, h, FamilyOp::Union) == h;
    ok &= chain;
    d["families"] = fams;
    d["chain"] = chain;
    return ok;
}

bool check_char_table(Context& cx, nlohmann::json& d) {
    bool ok = true;
    int tables = 0;
    for (int c = 0; c < cx.L->class_count(); ++c) {
        const auto& H = cx.L->rep(c);
        auto T = character_table(*cx.group, H.elements, 0, std::max(cx.config.caps.max_order, cx.group->order()));
        int sum = 0;
        for (int deg : T.degrees()) sum += deg * deg;
        const bool good = check_orthogonality(T) && sum == H.order;
        ok &= good;
        ++tables;
        if (c == cx.whole()) {
            d["degrees"] = T.degrees();
            d["class_count"] = T.class_count();
        }
        if (!good) d["failed_subgroup_order"] = H.order;
    }
    d["tables"] = tables;
    return ok;
}

bool check_marks(Context& cx, nlohmann::json& d) {
    const auto& B = cx.A();
    const int w = cx.whole();
    const int r = B.green.mackey.rank(w);
    auto marks_of = [&](const IntVector& x) {
        IntVector m = IntVector::Zero(cx.L->class_count());
        for (int i = 0; i < x.size(); ++i) m += x(i) * B.marks.marks.row(cx.L->class_of(B.basis[w][i])).transpose();
        return m;
    };
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
        for (int j = 0; j < r && ok; ++j) {
            IntVector ei = IntVector::Zero(r), ej = IntVector::Zero(r);
            ei(i) = 1;
            ej(j) = 1;
            ok = marks_of(B.green.multiply(w, ei, ej)) == marks_of(ei).cwiseProduct(marks_of(ej));
        }
    // Marks are injective: the matrix is triangular with nonzero diagonal
    // in an order refining subgroup size.
    Integer det = 1;
    const auto& M = B.marks.marks;
    for (Eigen::Index i = 0; i < M.rows(); ++i) det *= M(i, i);
    bool triangular = true;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (cx.L->rep(static_cast<int>(j)).order > cx.L->rep(static_cast<int>(i)).order && !M(i, j).is_zero()) triangular = false;
    d["multiplicative"] = ok;
    d["triangular"] = triangular;
    d["diagonal_product"] = integer_to_json(det);
    d["rank"] = r;
    return ok && triangular && !det.is_zero();
}

MackeyFunctor corrupted(const Burnside& B) {
    MackeyFunctor M = B.green.mackey;
    const auto& L = B.skeleton->lattice();
    const int one = L.class_of(L.trivial()), w = L.class_of(L.whole());
    M.set_push(one, w, 0, (M.push(one, w, 0) * Integer(2)).eval());
    M.set_name("A-corrupted");
    return M;
}

bool check_axioms(Context& cx, nlohmann::json& d) {
    auto squares = orbit_projection_squares(cx.L, cx.gset_caps());
    const int projection = static_cast<int>(squares.size());
    auto random = random_squares(cx.L, cx.config.caps.random_squares, cx.config.seed, cx.gset_caps());
    squares.insert(squares.end(), random.begin(), random.end());
    bool ok = true;
    for (const MackeyFunctor* M : {&cx.R().green.mackey, &cx.A().green.mackey}) {
        auto c = check_squares(*M, squares);
        const bool f = check_functoriality(*M).ok;
        ok &= c.passed == c.squares && f;
        nlohmann::json e = {{"squares", c.squares}, {"passed", c.passed}, {"functorial", f}};
        if (c.first_failure) e["first_failure"] = {{"index", c.failure_index}, {"identity", c.first_failure->failure}};
        d[M->name()] = e;
    }
    d["projection_squares"] = projection;
    d["random_squares"] = static_cast<int>(random.size());
    // Negative control: doubling one induction must be caught.
    auto bad = corrupted(cx.A());
    auto f = check_functoriality(bad);
    auto c = check_squares(bad, squares);
    const bool caught = !f.ok || (c.first_failure && c.first_failure->witness);
    d["corrupted_caught"] = caught;
    return ok && caught;
}

bool check_pairing(Context& cx, nlohmann::json& d) {
    bool ok = true;
    for (const GreenFunctor* U : {&cx.R().green, &cx.A().green}) {
        auto r = check_green_pairing(self_pairing(*U));
        ok &= r.ok;
        d[U->mackey.name()] = r.ok ? nlohmann::json{{"ok", true}} : nlohmann::json{{"ok", false}, {"identity", r.identity}};
    }
    return ok;
}

// The G-sets used for projectivity: family G-sets and one containing a fixed point.
std::vector<std::pair<std::string, GSetPtr>> test_sets(Context& cx) {
    std::vector<std::pair<std::string, GSetPtr>> v;
    for (const char* tag : {"TR", "FCY", "E", "H"}) v.emplace_back(tag, family_gset(cx.family(tag)));
    v.emplace_back("TR+pt", disjoint_union(family_gset(cx.family("TR")), point_gset(cx.L)));
    return v;
}

bool check_dress(Context& cx, nlohmann::json& d) {
    bool ok = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const GreenFunctor* U : {&cx.R().green, &cx.A().green})
        for (const auto& [label, S] : test_sets(cx)) {
            auto pr = is_s_projective(*U, S);
            nlohmann::json row = {{"functor", U->mackey.name()}, {"set", label}, {"points", S->size()}, {"projective", pr.projective}};
            nlohmann::json hom = nlohmann::json::object();
            bool good = true;
            for (auto var : {Variance::Covariant, Variance::Contravariant}) {
                DressOptions o;
                o.n_max = cx.config.caps.degree_cap;
                o.variance = var;
                o.max_points = cx.config.caps.tower_points;
                auto D = dress_complex(U->mackey, S, o);
                nlohmann::json h = nlohmann::json::array();
                for (int n = 0; n < o.n_max; ++n) {
                    auto Hn = D.homology(n);
                    h.push_back(Hn);
                    if (pr.projective && !Hn.is_trivial()) good = false;
                }
                // H_0 is always the cokernel of induction from S.
                if (var == Variance::Covariant && !(D.homology(0) == pr.cokernel)) good = false;
                hom[var == Variance::Covariant ? "homology" : "cohomology"] = h;
            }
            row.update(hom);
            row["ok"] = good;
            ok &= good;
            rows.push_back(row);
        }
    d["cases"] = rows;
    return ok;
}

bool check_s_projective(Context& cx, nlohmann::json& d) {
    bool ok = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const GreenFunctor* U : {&cx.R().green, &cx.A().green})
        for (const auto& [label, S] : test_sets(cx)) {
            auto pr = is_s_projective(*U, S);
            nlohmann::json row = {{"functor", U->mackey.name()}, {"set", label}, {"projective", pr.projective}};
            auto sp = find_theta_splitting(U->mackey, S, cx.gset_caps());
            row["split"] = sp.split;
            row["retraction_computed"] = sp.retraction_computed;
            row["unknowns"] = sp.unknowns;
            row["equations"] = sp.equations;
            bool good = sp.split == pr.projective;
            if (sp.retraction_computed) {
                auto ms = m_sub_s(U->mackey, S, cx.gset_caps());
                for (int k = 0; k < cx.sk->class_count(); ++k)
                    good &= (sp.retraction[k] * ms.theta_upper.components[k]).eval() ==
                            IntMatrix::Identity(U->mackey.rank(k), U->mackey.rank(k));
                good &= is_natural(ms.functor, U->mackey, sp.retraction);
            }
            row["ok"] = good;
            ok &= good;
            rows.push_back(row);
        }
    d["cases"] = rows;
    return ok;
}

nlohmann::json induction_json(const InductionReport& r) {
    auto j = induction_report_to_json(r);
    j.erase("matrix");
    return j;
}

bool check_induction(Context& cx, const char* tag, nlohmann::json& d) {
    auto r = induction_cokernel(cx.R().green.mackey, cx.family(tag), cx.config.coefficients);
    d = induction_json(r);
    return r.surjective;
}

bool check_artin(Context& cx, nlohmann::json& d) {
    auto F = cx.family("FCY");
    auto q = induction_cokernel(cx.R().green.mackey, F, Coefficients::parse("Q"));
    auto z = induction_cokernel(cx.R().green.mackey, F, Coefficients{});
    d["rational"] = induction_json(q);
    d["integral"] = induction_json(z);
    const bool divides = z.artin_exponent && (Integer(cx.group->order()) % *z.artin_exponent).is_zero();
    d["exponent_divides_order"] = divides;
    return q.surjective && divides;
}

bool check_tor(Context& cx, nlohmann::json& d) {
    const auto& caps = cx.config.caps;
    TorOptions opt;
    opt.n_max = caps.degree_cap;
    opt.max_points = caps.max_points;
    opt.dress_max_points = caps.tower_points;
    bool ok = true;
    nlohmann::json fams = nlohmann::json::object();
    for (const char* tag : {"E", "FCY"}) {
        const bool required = std::string(tag) == "E";
        auto C = build_orbit_category(cx.sk, cx.family(tag));
        TorSeries series;
        try {
            series = tor_series(C, cx.R().green.mackey, opt);
        } catch (const Error& e) {
            // Only the elementary family is asserted; others are reported when they fit.
            if (required || e.code() != ErrorCode::CapExceeded) throw;
            fams[tag] = {{"skipped", e.what()}};
            continue;
        }
        nlohmann::json t = nlohmann::json::array();
        bool good = series.agrees_with_dress.value_or(true);
        for (int p = 0; p < opt.n_max; ++p) {
            t.push_back(series.groups[p]);
            // Over E, Tor of the constant coefficients recovers R(G) in degree 0.
            if (required) {
                const auto want = p == 0 ? FgAbelianGroup::free(cx.R().green.mackey.rank(cx.whole())) : FgAbelianGroup{};
                good &= series.groups[p] == want;
            }
        }
        nlohmann::json e = {{"tor", t}, {"route", series.route == TorRoute::Coend ? "coend" : "shifted-dress"}, {"ok", good}};
        if (series.agrees_with_dress) e["agrees_with_dress"] = *series.agrees_with_dress;
        fams[tag] = e;
        ok &= good;
    }
    // Negative control for groups of prime order: Burnside over {1}.
    const int n = cx.group->order();
    if (n > 1 && is_prime(n)) {
        auto C = build_orbit_category(cx.sk, cx.family("TR"));
        auto r = tor_over_orbit_category(C, cx.A().green.mackey, 0, opt);
        const bool good = r.group == FgAbelianGroup::free(1) && !(r.group == FgAbelianGroup::free(cx.A().green.mackey.rank(cx.whole())));
        fams["TR-burnside"] = {{"tor0", r.group}, {"ok", good}};
        ok &= good;
    }
    d = fams;
    return ok;
}

bool check_colim(Context& cx, nlohmann::json& d) {
    bool ok = true;
    TorOptions opt;
    opt.n_max = 1;
    opt.max_points = cx.config.caps.max_points;
    opt.dress_max_points = cx.config.caps.tower_points;
    for (const char* tag : {"FCY", "E", "H"}) {
        auto F = cx.family(tag);
        auto C = build_orbit_category(cx.sk, F);
        auto r = colim_map(C, cx.R().green.mackey);
        auto ind = induction_cokernel(cx.R().green.mackey, F);
        auto tor0 = tor_over_orbit_category(C, cx.R().green.mackey, 0, opt);
        const bool agree = ind.surjective == r.surjective && r.cokernel == ind.integral;
        const bool tor_agree = r.colimit == tor0.group;
        auto j = colim_report_to_json(r, *C);
        j.erase("relations");
        j.erase("canonical_map");
        j["induction_surjective"] = ind.surjective;
        j["agrees_with_induction"] = agree;
        j["agrees_with_tor0"] = tor_agree;
        d[tag] = j;
        ok &= agree && tor_agree;
    }
    return ok;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

const std::vector<Check>& all_checks() {
    static const std::vector<Check> v = [] {
        std::vector<Check> r;
        for (const auto& i : kChecks) r.push_back(i.check);
        return r;
    }();
    return v;
}

std::string check_name(Check c) { return info(c).name; }
std::string statement_tag(Check c) { return info(c).statement; }

Check parse_check(const std::string& s) {
    for (const auto& i : kChecks)
        if (s == i.name) return i.check;
    throw Error(ErrorCode::ConfigError, "unknown check '" + s + "'");
}

namespace {

// Splits on commas outside parentheses, so "SL(2,3),S4" is two names.
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    int depth = 0;
    auto flush = [&] {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
        item.clear();
    };
    for (char ch : s) {
        depth += ch == '(';
        depth -= ch == ')';
        if (ch == ',' && depth == 0)
            flush();
        else
            item += ch;
    }
    flush();
    return out;
}

CampaignGroup named(const std::string& name) {
    try {
        return {name, named_group(name)};
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, "unknown group '" + name + "'");
    }
}

}  // namespace

std::vector<CampaignGroup> load_groups(const std::string& arg) {
    std::vector<CampaignGroup> out;
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ConfigError, arg + ": " + e.what());
        }
        if (!j.is_array()) throw Error(ErrorCode::ConfigError, arg + ": expected an array of groups");
        int index = 0;
        for (const auto& e : j) {
            ++index;
            if (e.is_string()) {
                out.push_back(named(e.get<std::string>()));
                continue;
            }
            try {
                auto G = std::make_shared<FiniteGroup>(build_group(e));
                const std::string name = e.value("name", "group" + std::to_string(index));
                G->set_name(name);
                out.push_back({name, G});
            } catch (const Error& err) {
                throw Error(ErrorCode::ConfigError, arg + ": group " + std::to_string(index) + ": " + err.what());
            } catch (const nlohmann::json::exception& err) {
                throw Error(ErrorCode::ConfigError, arg + ": group " + std::to_string(index) + ": " + err.what());
            }
        }
        return out;
    }
    for (const auto& name : split_list(arg)) {
        if (name == "corpus") {
            for (const auto& n : corpus_names()) out.push_back(named(n));
        } else {
            out.push_back(named(name));
        }
    }
    if (out.empty()) throw Error(ErrorCode::ConfigError, "no groups given");
    return out;
}

std::vector<Check> parse_checks(const std::string& arg) {
    std::vector<Check> out;
    for (const auto& s : split_list(arg)) {
        if (s == "all") return all_checks();
        out.push_back(parse_check(s));
    }
    return out;
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Error: return "error";
    }
    return "?";
}

bool CampaignReport::all_passed() const {
    for (const auto& r : results)
        if (r.status != Status::Pass) return false;
    return true;
}

nlohmann::json CampaignReport::to_json() const {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json j = {{"group", r.group},
                            {"check", check_name(r.check)},
                            {"statement", statement_tag(r.check)},
                            {"status", status_name(r.status)},
                            {"seconds", r.seconds},
                            {"details", r.details}};
        if (!r.error.empty()) j["error"] = r.error;
        rs.push_back(j);
    }
    return {{"passed", all_passed()}, {"results", rs}};
}

std::string CampaignReport::summary() const {
    std::ostringstream out;
    int pass = 0;
    char buf[32];
    for (const auto& r : results) {
        pass += r.status == Status::Pass;
        std::snprintf(buf, sizeof buf, "%8.3fs", r.seconds);
        out << (r.status == Status::Pass ? "PASS " : r.status == Status::Fail ? "FAIL " : "ERROR") << "  " << r.group
            << "  " << check_name(r.check) << " [" << statement_tag(r.check) << "] " << buf;
        if (!r.error.empty()) out << "  " << r.error;
        out << "\n";
    }
    out << pass << "/" << results.size() << " checks passed\n";
    return out.str();
}

CheckResult run_check(const CampaignGroup& g, Check check, const CampaignConfig& config) {
    CheckResult res;
    res.group = g.name;
    res.check = check;
    res.details = nlohmann::json::object();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Context cx(config, g);
        bool ok = false;
        switch (check) {
            case Check::Classify: ok = check_classify(cx, res.details); break;
            case Check::CharTable: ok = check_char_table(cx, res.details); break;
            case Check::Marks: ok = check_marks(cx, res.details); break;
            case Check::MackeyAxioms: ok = check_axioms(cx, res.details); break;
            case Check::GreenPairing: ok = check_pairing(cx, res.details); break;
            case Check::Dress: ok = check_dress(cx, res.details); break;
            case Check::SProjective: ok = check_s_projective(cx, res.details); break;
            case Check::Brauer: ok = check_induction(cx, "E", res.details); break;
            case Check::Hyperelementary: ok = check_induction(cx, "H", res.details); break;
            case Check::Artin: ok = check_artin(cx, res.details); break;
            case Check::Tor: ok = check_tor(cx, res.details); break;
            case Check::Colim: ok = check_colim(cx, res.details); break;
            case Check::CounterexampleSearch: throw std::logic_error("counterexample-search runs over the corpus");
        }
        res.status = ok ? Status::Pass : Status::Fail;
    } catch (const Error& e) {
        res.status = Status::Error;
        res.error = e.what();
    }
    res.seconds = seconds_since(t0);
    return res;
}

CheckResult counterexample_search(const CampaignConfig& config) {
    CheckResult res;
    res.group = "corpus";
    res.check = Check::CounterexampleSearch;
    const auto t0 = std::chrono::steady_clock::now();
    nlohmann::json searched = nlohmann::json::array(), hits = nlohmann::json::array();
    try {
        for (const auto& name : corpus_names()) {
            auto G = named_group(name);
            if (G->order() > config.caps.max_order) continue;
            searched.push_back(name);
            Context cx(config, {name, G});
            auto C = build_orbit_category(cx.sk, cx.family("FCY"));
            auto r = colim_map(C, cx.R().green.mackey);
            if (r.surjective && r.injective) continue;
            nlohmann::json h = {{"group", name},
                                {"order", G->order()},
                                {"surjective", r.surjective},
                                {"injective", r.injective},
                                {"cokernel", r.cokernel}};
            h["exponent"] = r.cokernel.is_finite() ? integer_to_json(r.cokernel.exponent()) : nlohmann::json(nullptr);
            h["witness"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
            hits.push_back(h);
        }
        res.details = {{"searched", searched}, {"hits", hits}};
        res.details["first_hit"] = hits.empty() ? nlohmann::json(nullptr) : hits.front();
        res.status = hits.empty() ? Status::Fail : Status::Pass;
    } catch (const Error& e) {
        res.status = Status::Error;
        res.error = e.what();
    }
    res.seconds = seconds_since(t0);
    return res;
}

CampaignReport run_campaign(const CampaignConfig& config) {
    const auto& c = config.caps;
    if (c.max_order <= 0 || c.degree_cap <= 0 || c.max_points <= 0 || c.tower_points <= 0 || c.random_squares < 0)
        throw Error(ErrorCode::ConfigError, "caps must be positive");
    CampaignReport rep;
    for (const auto& g : config.groups)
        for (Check check : config.checks)
            if (check != Check::CounterexampleSearch) rep.results.push_back(run_check(g, check, config));
    for (Check check : config.checks)
        if (check == Check::CounterexampleSearch) rep.results.push_back(counterexample_search(config));
    return rep;
}

}  // namespace dress
