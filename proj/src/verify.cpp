#include "polarkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "polarkit/constructions.hpp"
#include "polarkit/intriguing.hpp"

namespace polarkit {

using json = nlohmann::json;

namespace {

constexpr const char* kManifest = R"json([
  {"id": "space-W33", "budget": "fast", "recipe": "space", "params": {"kind": "W", "d": 4, "q": 3},
   "expected": {"rank": 2, "theta": 10, "points": 40}},
  {"id": "space-W52", "budget": "fast", "recipe": "space", "params": {"kind": "W", "d": 6, "q": 2},
   "expected": {"rank": 3, "theta": 9, "points": 63}},
  {"id": "space-Q43", "budget": "fast", "recipe": "space", "params": {"kind": "Q", "d": 5, "q": 3},
   "expected": {"rank": 2, "theta": 10, "points": 40}},
  {"id": "space-Q63", "budget": "fast", "recipe": "space", "params": {"kind": "Q", "d": 7, "q": 3},
   "expected": {"rank": 3, "theta": 28, "points": 364}},
  {"id": "space-Qp52", "budget": "fast", "recipe": "space", "params": {"kind": "Q+", "d": 6, "q": 2},
   "expected": {"rank": 3, "theta": 5, "points": 35}},
  {"id": "space-Qp72", "budget": "fast", "recipe": "space", "params": {"kind": "Q+", "d": 8, "q": 2},
   "expected": {"rank": 4, "theta": 9, "points": 135}},
  {"id": "space-Qp73", "budget": "fast", "recipe": "space", "params": {"kind": "Q+", "d": 8, "q": 3},
   "expected": {"rank": 4, "theta": 28, "points": 1120}},
  {"id": "space-Qm52", "budget": "fast", "recipe": "space", "params": {"kind": "Q-", "d": 6, "q": 2},
   "expected": {"rank": 2, "theta": 9, "points": 27}},
  {"id": "space-Qm53", "budget": "fast", "recipe": "space", "params": {"kind": "Q-", "d": 6, "q": 3},
   "expected": {"rank": 2, "theta": 28, "points": 112}},
  {"id": "space-H34", "budget": "fast", "recipe": "space", "params": {"kind": "H", "d": 4, "q": 4},
   "expected": {"rank": 2, "theta": 9, "points": 45}},
  {"id": "space-H44", "budget": "fast", "recipe": "space", "params": {"kind": "H", "d": 5, "q": 4},
   "expected": {"rank": 2, "theta": 33, "points": 165}},
  {"id": "maximal-ts-W33", "budget": "fast", "recipe": "maximal_ts", "params": {"kind": "W", "d": 4, "q": 3},
   "expected": {"size": 4, "h1": 4, "h2": 1, "tight_i": 1}},
  {"id": "adjoint-sl3-q3", "budget": "fast", "recipe": "adjoint_sl3", "params": {"q": 3},
   "expected": {"points": 364, "sizes": [52, 312], "tight": [4, 24], "h1": [25, 105], "h2": [16, 96]}},
  {"id": "adjoint-sl3-q9", "budget": "fast", "recipe": "adjoint_sl3", "params": {"q": 9},
   "expected": {"points": 66430, "sizes": [910, 65520], "tight": [10, 720]}},
  {"id": "c2-H34", "budget": "fast", "recipe": "dlength", "params": {"kind": "H", "q": 4, "t": 4},
   "expected": {"lengths": [2, 4], "sizes": [18, 27], "ovoid": [2, 3]}},
  {"id": "c2-H44", "budget": "fast", "recipe": "dlength", "params": {"kind": "H", "q": 4, "t": 5},
   "expected": {"lengths": [2, 4], "sizes": [30, 135], "tight": [6, 27]}},
  {"id": "c2-Qm53", "budget": "fast", "recipe": "dlength", "params": {"kind": "Q-", "q": 3, "t": 6},
   "expected": {"lengths": [3, 6], "sizes": [80, 32], "tight": [20, 8]}},
  {"id": "c2-Q63", "budget": "fast", "recipe": "dlength", "params": {"kind": "Q", "q": 3, "t": 7},
   "expected": {"lengths": [3, 6], "sizes": [140, 224], "ovoid": [5, 8]}},
  {"id": "c2-Qp73", "budget": "fast", "recipe": "dlength", "params": {"kind": "Q+", "q": 3, "t": 8},
   "expected": {"lengths": [3, 6], "sizes": [224, 896], "ovoid": [8, 32]}},
  {"id": "c2-Q43-lengths", "budget": "fast", "recipe": "dlength", "params": {"kind": "Q", "q": 3, "t": 5},
   "expected": {"lengths": [3], "sizes": [40]}},
  {"id": "c2-Q43-ovoids", "budget": "fast", "recipe": "monomial_split",
   "params": {"q": 3, "t": 5, "sizes": [20, 20], "family": "ovoid", "parameters": [2, 2]},
   "expected": {"found": true, "sizes": [20, 20], "ovoid": [2, 2]}},
  {"id": "c2-Q43-tight", "budget": "fast", "recipe": "monomial_split",
   "params": {"q": 3, "t": 5, "sizes": [16, 24], "family": "tight", "parameters": [4, 6]},
   "expected": {"found": true, "sizes": [16, 24], "tight": [4, 6]}},
  {"id": "sl25-W33", "budget": "fast", "recipe": "sl25", "params": {},
   "expected": {"vector_orbits": [40, 40], "sizes": [20, 20], "tight": [5, 5]}},
  {"id": "fieldred-row1-W33", "budget": "fast", "recipe": "blowup",
   "params": {"row": 1, "large": {"kind": "W", "d": 2, "q": 9}, "small_q": 3},
   "expected": {"large_points": 10, "small_points": 40, "m1_size": 40}},
  {"id": "fieldred-row2-Qp72", "budget": "fast", "recipe": "blowup",
   "params": {"row": 2, "large": {"kind": "Q+", "d": 4, "q": 4}, "small_q": 2},
   "expected": {"large_points": 25, "small_points": 135, "m1_size": 75, "m1_tight": 5, "complement_tight": 4}},
  {"id": "fieldred-row9-Qm53", "budget": "fast", "recipe": "blowup",
   "params": {"row": 9, "large": {"kind": "H", "d": 3, "q": 9}, "small_q": 3},
   "expected": {"large_points": 28, "small_points": 112, "m1_size": 112}},
  {"id": "perp-residual-elliptic-point-Q43", "budget": "fast", "recipe": "perp_residual",
   "params": {"space": {"kind": "Q", "d": 5, "q": 3}, "w": [[0, 1, 2, 0, 0]]},
   "expected": {"size": 10, "h1": 1, "h2": 4, "ovoid_m": 1}},
  {"id": "perp-residual-elliptic-line-Qm52", "budget": "fast", "recipe": "perp_residual",
   "params": {"space": {"kind": "Q-", "d": 6, "q": 2}, "w": [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]},
   "expected": {"size": 9, "tight_i": 3}},
  {"id": "feasibility-Qm5-q5", "budget": "fast", "recipe": "feasibility",
   "params": {"kind": "Q-", "d": 6, "q": 5, "group_order": 51840, "i": 36},
   "expected": {"feasible": true, "sizes": [216, 540], "lcm": 1080}},
  {"id": "extsq-sp6-q3", "budget": "slow", "recipe": "extsq_sp6", "params": {"q": 3},
   "expected": {"points": 265720, "sizes": [3640, 262080], "tight": [10, 720]}}
])json";

FormKind kind_of(const json& j) {
    const auto k = parse_kind(j.get<std::string>());
    if (!k) throw InvalidArgument("unknown kind " + j.dump());
    return *k;
}

SpacePtr space_of(const json& j) {
    const auto field = FiniteField::of_order(j.at("q").get<std::uint64_t>());
    return PolarSpace::build(Form::standard(kind_of(j.at("kind")), j.at("d").get<std::size_t>(), field));
}

json opt(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

json report_fields(const IntriguingReport& r) {
    return {{"size", r.size}, {"h1", opt(r.h1)}, {"h2", opt(r.h2)}, {"tight_i", opt(r.tight_i)}, {"ovoid_m", opt(r.ovoid_m)}};
}

// Orbits sorted by (size, representative), with aligned parameter lists.
json describe_sets(const std::vector<PointSet>& sets, unsigned threads) {
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sets[a].size() != sets[b].size()) return sets[a].size() < sets[b].size();
        return sets[a].members().front() < sets[b].members().front();
    });
    json sizes = json::array(), tight = json::array(), ovoid = json::array(), h1 = json::array(), h2 = json::array();
    for (auto k : order) {
        const auto r = classify(sets[k], threads);
        sizes.push_back(r.size);
        tight.push_back(opt(r.tight_i));
        ovoid.push_back(opt(r.ovoid_m));
        h1.push_back(opt(r.h1));
        h2.push_back(opt(r.h2));
    }
    return {{"sizes", sizes}, {"tight", tight}, {"ovoid", ovoid}, {"h1", h1}, {"h2", h2}};
}

std::vector<PointSet> orbit_sets(const OrbitPartition& parts) {
    std::vector<PointSet> out;
    for (std::size_t k = 0; k < parts.num_orbits(); ++k) out.push_back(parts.orbit(k));
    return out;
}

json run_recipe(const std::string& recipe, const json& p, unsigned threads) {
    const OrbitOptions oo{threads};
    if (recipe == "space") {
        const auto space = space_of(p);
        return {{"rank", space->rank()}, {"theta", space->theta()}, {"points", space->size()}};
    }
    if (recipe == "maximal_ts") return report_fields(classify(maximal_ts_points(space_of(p)), threads));
    if (recipe == "adjoint_sl3" || recipe == "extsq_sp6") {
        const auto q = p.at("q").get<std::uint32_t>();
        const auto c = recipe == "adjoint_sl3" ? adjoint_sl3(q, oo) : extsq_sp6(q, oo);
        json out = describe_sets(orbit_sets(c.orbits), threads);
        out["points"] = c.space->size();
        return out;
    }
    if (recipe == "dlength") {
        const auto dp = dlength_partition(kind_of(p.at("kind")), p.at("q").get<std::uint32_t>(), p.at("t").get<std::size_t>());
        json sizes = json::array(), tight = json::array(), ovoid = json::array();
        for (const auto& cls : dp.classes) {
            const auto r = classify(cls, threads);
            sizes.push_back(r.size);
            tight.push_back(opt(r.tight_i));
            ovoid.push_back(opt(r.ovoid_m));
        }
        return {{"lengths", dp.lengths}, {"sizes", sizes}, {"tight", tight}, {"ovoid", ovoid}};
    }
    if (recipe == "monomial_split") {
        const auto dp = dlength_partition(FormKind::QuadraticParabolic, p.at("q").get<std::uint32_t>(),
                                          p.at("t").get<std::size_t>());
        const auto want_sizes = p.at("sizes").get<std::vector<std::uint64_t>>();
        const auto want_params = p.at("parameters").get<std::vector<std::uint64_t>>();
        const bool tight = p.at("family").get<std::string>() == "tight";
        const auto hit = find_monomial_split(dp.space, [&](const OrbitPartition& o) {
            if (o.sorted_sizes() != want_sizes) return false;
            const json d = describe_sets(orbit_sets(o), 1);
            return d.at(tight ? "tight" : "ovoid") == json(want_params);
        });
        if (!hit) return {{"found", false}};
        json out = describe_sets(orbit_sets(hit->orbits), threads);
        out["found"] = true;
        out["permutations"] = hit->permutations;
        return out;
    }
    if (recipe == "sl25") {
        const auto gens = sl2_5_in_sl2_9();
        const auto f9 = FiniteField::of_order(9);
        const Form w = Form::standard(FormKind::Symplectic, 2, f9);
        const auto fr = reduce(1, w, FiniteField::of_order(3));
        GeneratorSet flat{{}, gens.label};
        for (const auto& g : gens.elements) flat.elements.push_back(fr->flatten(g));
        json out = describe_sets(orbit_sets(orbits(fr->small_space(), flat, oo)), threads);
        out["vector_orbits"] = vector_orbits(w, gens);
        return out;
    }
    if (recipe == "blowup") {
        const auto& l = p.at("large");
        const auto large = Form::standard(kind_of(l.at("kind")), l.at("d").get<std::size_t>(),
                                          FiniteField::of_order(l.at("q").get<std::uint64_t>()));
        const auto fr = reduce(p.at("row").get<int>(), large, FiniteField::of_order(p.at("small_q").get<std::uint64_t>()));
        const auto m1 = blow_up(*fr);
        const auto r1 = classify(m1, threads);
        json out{{"large_points", fr->large_space()->size()},
                 {"small_points", fr->small_space()->size()},
                 {"m1_size", m1.size()},
                 {"m1_tight", opt(r1.tight_i)},
                 {"m1_ovoid", opt(r1.ovoid_m)}};
        const auto rest = m1.complement();
        out["complement_size"] = rest.size();
        if (rest.empty()) {
            out["complement_tight"] = nullptr;
            out["complement_ovoid"] = nullptr;
        } else {
            const auto r2 = classify(rest, threads);
            out["complement_tight"] = opt(r2.tight_i);
            out["complement_ovoid"] = opt(r2.ovoid_m);
        }
        return out;
    }
    if (recipe == "perp_residual") {
        const auto space = space_of(p.at("space"));
        const auto& F = *space->field();
        std::vector<Vec> w;
        for (const auto& row : p.at("w")) {
            Vec v;
            for (const auto& x : row) {
                if (x.is_array()) {
                    auto c = x.get<std::vector<std::uint32_t>>();
                    c.resize(F.f(), 0);
                    v.push_back(F.from_coefficients(c));
                } else {
                    v.push_back(F.element(x.get<std::uint32_t>()));
                }
            }
            w.push_back(std::move(v));
        }
        const auto res = perp_residual(space, Subspace::span(space->field(), space->dim(), w));
        return report_fields(classify(res, threads));
    }
    if (recipe == "feasibility") {
        const FeasibilityQuery qy{kind_of(p.at("kind")), p.at("d").get<std::size_t>(), p.at("q").get<std::uint32_t>(),
                                  p.at("group_order").get<std::uint64_t>()};
        const auto res = feasibility(qy);
        const auto pp = polar_parameters(qy.kind, qy.d, qy.q);
        const auto i = p.at("i").get<std::uint64_t>();
        const std::uint64_t a = i * pp.gaussian, b = (pp.theta - i) * pp.gaussian;
        return {{"feasible", std::find(res.feasible_i.begin(), res.feasible_i.end(), i) != res.feasible_i.end()},
                {"sizes", {std::min(a, b), std::max(a, b)}},
                {"lcm", std::lcm(a, b)},
                {"dim_ok", res.dim_ok}};
    }
    throw InvalidArgument("unknown recipe " + recipe);
}

}  // namespace

std::vector<VerificationTarget> parse_manifest(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed manifest: ") + e.what());
    }
    if (!j.is_array()) throw InvalidArgument("manifest must be a list");
    std::vector<VerificationTarget> out;
    for (const auto& t : j) {
        VerificationTarget v;
        try {
            v.id = t.at("id").get<std::string>();
            const auto budget = t.value("budget", std::string("fast"));
            if (budget != "fast" && budget != "slow") throw InvalidArgument("bad budget for " + v.id);
            v.budget = budget == "slow" ? Budget::Slow : Budget::Fast;
            v.recipe = t.at("recipe").get<std::string>();
            v.params = t.value("params", json::object()).dump();
            v.expected = t.at("expected").dump();
        } catch (const json::exception& e) {
            throw InvalidArgument("malformed manifest entry " + t.dump() + ": " + e.what());
        }
        out.push_back(std::move(v));
    }
    return out;
}

const std::vector<VerificationTarget>& builtin_manifest() {
    static const std::vector<VerificationTarget> manifest = parse_manifest(kManifest);
    return manifest;
}

std::vector<VerificationTarget> select_targets(const std::vector<VerificationTarget>& manifest,
                                               std::string_view selector) {
    std::vector<VerificationTarget> out;
    for (const auto& t : manifest) {
        const bool take = selector == "all" || (selector == "fast" && t.budget == Budget::Fast) ||
                          (selector == "slow" && t.budget == Budget::Slow) || selector == t.id;
        if (take) out.push_back(t);
    }
    if (out.empty() && selector != "fast" && selector != "slow" && selector != "all")
        throw InvalidArgument("unknown target id: " + std::string(selector));
    return out;
}

RunReport run_target(const VerificationTarget& target, const RunOptions& opts) {
    RunReport r;
    r.id = target.id;
    r.expected = target.expected;
    const auto t0 = std::chrono::steady_clock::now();
    json computed;
    try {
        computed = run_recipe(target.recipe, json::parse(target.params), opts.threads);
        const json expected = json::parse(target.expected);
        r.match = true;
        for (const auto& [key, value] : expected.items())
            if (!computed.contains(key) || computed.at(key) != value) r.match = false;
    } catch (const std::exception& e) {
        computed = {{"error", e.what()}};
        r.match = false;
    }
    r.computed = computed.dump();
    if (opts.timing)
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<RunReport> run_targets(const std::vector<VerificationTarget>& targets, const RunOptions& opts) {
    std::vector<RunReport> out;
    if (!opts.parallel) {
        for (const auto& t : targets) out.push_back(run_target(t, opts));
        return out;
    }
    std::vector<std::future<RunReport>> futures;
    for (const auto& t : targets) futures.push_back(std::async(std::launch::async, [&t, &opts] { return run_target(t, opts); }));
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

std::string reports_jsonl(const std::vector<RunReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        json j{{"id", r.id}, {"match", r.match}, {"computed", json::parse(r.computed)}, {"expected", json::parse(r.expected)}};
        if (r.wall_time) j["wall_time"] = *r.wall_time;
        out += j.dump() + "\n";
    }
    return out;
}

std::string reports_table(const std::vector<RunReport>& reports) {
    std::size_t width = 2;
    for (const auto& r : reports) width = std::max(width, r.id.size());
    std::ostringstream ss;
    ss << std::left << std::setw(static_cast<int>(width)) << "id" << "  result";
    const bool timed = std::any_of(reports.begin(), reports.end(), [](const RunReport& r) { return r.wall_time; });
    if (timed) ss << "  seconds";
    ss << "\n";
    std::size_t passed = 0;
    for (const auto& r : reports) {
        ss << std::left << std::setw(static_cast<int>(width)) << r.id << "  " << (r.match ? "pass  " : "FAIL  ");
        if (r.wall_time) ss << "  " << std::fixed << std::setprecision(2) << *r.wall_time;
        ss << "\n";
        if (!r.match) ss << "    expected " << r.expected << "\n    computed " << r.computed << "\n";
        passed += r.match;
    }
    ss << passed << "/" << reports.size() << " targets match\n";
    return ss.str();
}

}  // namespace polarkit
