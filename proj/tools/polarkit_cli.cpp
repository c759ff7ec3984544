// polarkit command-line tool.
//
// Exit codes: 0 success / all targets match, 1 mismatch, 2 usage or input error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "polarkit/constructions.hpp"
#include "polarkit/io.hpp"
#include "polarkit/verify.hpp"

using namespace polarkit;
using json = nlohmann::json;

namespace {

struct SpaceArgs {
    std::string kind;
    std::size_t dim = 0;
    std::uint32_t q = 0;
};

void add_space_flags(CLI::App* cmd, SpaceArgs& a) {
    cmd->add_option("--kind", a.kind, "W, Q+, Q-, Q or H (long names also accepted)")->required();
    cmd->add_option("--dim", a.dim, "dimension of the underlying vector space")->required();
    cmd->add_option("--q", a.q, "field order")->required();
}

FormKind kind_or_throw(const std::string& s) {
    const auto k = parse_kind(s);
    if (!k) throw InvalidArgument("unknown kind '" + s + "'");
    return *k;
}

SpacePtr build_space(const SpaceArgs& a) {
    return PolarSpace::build(Form::standard(kind_or_throw(a.kind), a.dim, FiniteField::of_order(a.q)));
}

std::string label(const SpaceDescriptor& s) {
    const std::size_t proj = s.d - 1;
    return std::string(short_name(s.kind)) + "(" + std::to_string(proj) + "," + std::to_string(s.q) + ")";
}

std::string describe(const IntriguingReport& r) {
    if (!r.is_intriguing) return "not intriguing";
    std::string s = "h1=" + std::to_string(*r.h1) + " h2=" + (r.h2 ? std::to_string(*r.h2) : "-");
    if (r.tight_i) s += " " + std::to_string(*r.tight_i) + "-tight";
    if (r.ovoid_m) s += " " + std::to_string(*r.ovoid_m) + "-ovoid";
    if (r.anomalous()) s += " anomalous";
    return s;
}

void print_orbits(const OrbitPartition& parts, unsigned threads, bool as_json) {
    std::vector<IntriguingReport> reports;
    for (std::size_t k = 0; k < parts.num_orbits(); ++k) reports.push_back(classify(parts.orbit(k), threads));
    if (as_json) {
        std::cout << to_json(parts, reports) << "\n";
        return;
    }
    std::cout << label(parts.space->descriptor()) << ": " << parts.space->size() << " points, " << parts.num_orbits()
              << " orbit(s)\n";
    for (std::size_t k = 0; k < parts.num_orbits(); ++k)
        std::cout << "  orbit " << k << ": size " << parts.orbit_sizes[k] << ", " << describe(reports[k]) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite polar spaces, orbits and intriguing sets"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned threads = 0;
    bool as_json = false;
    app.add_option("--threads", threads, "worker threads (0: all cores)");
    app.add_flag("--json", as_json, "machine-readable output");

    SpaceArgs sp;
    auto* space_cmd = app.add_subcommand("space", "rank, ovoid number and point count of a polar space");
    add_space_flags(space_cmd, sp);

    SpaceArgs orb;
    std::string gens_file;
    auto* orbits_cmd = app.add_subcommand("orbits", "point orbits of a group given by a generator file");
    add_space_flags(orbits_cmd, orb);
    orbits_cmd->add_option("--gens", gens_file, "generator file")->required();

    SpaceArgs cls;
    std::string set_file;
    auto* classify_cmd = app.add_subcommand("classify", "tight set / m-ovoid test for a point set file");
    add_space_flags(classify_cmd, cls);
    classify_cmd->add_option("--set", set_file, "point set file")->required();

    SpaceArgs red;
    int row = 0;
    std::uint32_t small_q = 0;
    auto* reduce_cmd = app.add_subcommand("reduce", "field reduction of a standard form");
    add_space_flags(reduce_cmd, red);
    reduce_cmd->add_option("--row", row, "row of the reduction table (1-10)")->required();
    reduce_cmd->add_option("--small-q", small_q, "order of the subfield")->required();

    std::string name, family;
    SpaceArgs con;
    std::size_t t = 0;
    auto* construct_cmd = app.add_subcommand("construct", "run a named construction");
    construct_cmd->add_option("name", name, "adjoint-sl3, extsq-sp6, dlength, sl25 or classical")->required();
    construct_cmd->add_option("--q", con.q, "field order");
    construct_cmd->add_option("--kind", con.kind, "form kind (dlength)");
    construct_cmd->add_option("--t", t, "number of summands (dlength)");
    construct_cmd->add_option("--dim", con.dim, "dimension (classical)");
    construct_cmd->add_option("--family", family, "Sp, SU, OmegaPlus, OmegaMinus, Omega, GO1WrSym, GU1WrSym (classical)");

    std::string selector = "fast", manifest_file;
    bool slow = false, fast_only = false, parallel = false, timing = false;
    auto* verify_cmd = app.add_subcommand("verify", "run the built-in verification manifest");
    verify_cmd->add_option("selector", selector, "fast, slow, all or a target id");
    verify_cmd->add_flag("--slow", slow, "include slow targets");
    verify_cmd->add_flag("--fast", fast_only, "drop slow targets");
    verify_cmd->add_flag("--parallel", parallel, "run targets concurrently");
    verify_cmd->add_flag("--timing", timing, "report wall time per target");
    verify_cmd->add_option("--manifest", manifest_file, "manifest file replacing the built-in one");
    verify_cmd->add_flag("--list", [&](std::int64_t) { selector = "__list__"; }, "list target ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*space_cmd) {
            const auto s = build_space(sp);
            if (as_json)
                std::cout << json{{"space", json::parse(to_json(s->descriptor()))},
                                  {"rank", s->rank()},
                                  {"theta", s->theta()},
                                  {"points", s->size()}}
                                 .dump()
                          << "\n";
            else
                std::cout << label(s->descriptor()) << ": r=" << s->rank() << " theta=" << s->theta()
                          << " points=" << s->size() << "\n";
            return 0;
        }
        if (*orbits_cmd) {
            const auto s = build_space(orb);
            const auto file = parse_generators(read_text_file(gens_file));
            if (file.field->q() != s->q() || file.d != s->dim())
                throw InvalidArgument("generator file is for q=" + std::to_string(file.field->q()) +
                                      ", d=" + std::to_string(file.d));
            validate_generators(s->form(), file.generators);
            print_orbits(orbits(s, file.generators, OrbitOptions{threads}), threads, as_json);
            return 0;
        }
        if (*classify_cmd) {
            const auto s = build_space(cls);
            const auto set = to_point_set(parse_point_set(read_text_file(set_file)), s);
            const auto r = classify(set, threads);
            if (as_json)
                std::cout << to_json(r) << "\n";
            else
                std::cout << label(s->descriptor()) << ": " << r.size << " points, " << describe(r) << "\n";
            return 0;
        }
        if (*reduce_cmd) {
            const auto large = Form::standard(kind_or_throw(red.kind), red.dim, FiniteField::of_order(red.q));
            const auto fr = reduce(row, large, FiniteField::of_order(small_q));
            const auto m1 = blow_up(*fr);
            const auto r1 = classify(m1, threads);
            if (as_json) {
                json j = json::parse(to_json(*fr));
                j["large_points"] = fr->large_space()->size();
                j["small_points"] = fr->small_space()->size();
                j["m1"] = json::parse(to_json(r1));
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "row " << row << ": " << label(fr->large_space()->descriptor()) << " -> "
                          << label(fr->small_space()->descriptor()) << ", " << fr->large_space()->size() << " -> "
                          << fr->small_space()->size() << " points\n";
                std::cout << "  M1: " << m1.size() << " points, " << describe(r1) << "\n";
                if (m1.size() < fr->small_space()->size())
                    std::cout << "  complement: " << fr->small_space()->size() - m1.size() << " points, "
                              << describe(classify(m1.complement(), threads)) << "\n";
            }
            return 0;
        }
        if (*construct_cmd) {
            if (name == "adjoint-sl3" || name == "extsq-sp6") {
                if (con.q == 0) throw InvalidArgument(name + " needs --q");
                const auto c = name == "adjoint-sl3" ? adjoint_sl3(con.q, {threads}) : extsq_sp6(con.q, {threads});
                print_orbits(c.orbits, threads, as_json);
                return 0;
            }
            if (name == "dlength") {
                if (con.q == 0 || t == 0 || con.kind.empty()) throw InvalidArgument("dlength needs --kind, --q and --t");
                const auto dp = dlength_partition(kind_or_throw(con.kind), con.q, t);
                json list = json::array();
                if (!as_json)
                    std::cout << label(dp.space->descriptor()) << ": " << dp.space->size() << " points\n";
                for (std::size_t k = 0; k < dp.lengths.size(); ++k) {
                    const auto r = classify(dp.classes[k], threads);
                    if (as_json)
                        list.push_back({{"length", dp.lengths[k]}, {"report", json::parse(to_json(r))}});
                    else
                        std::cout << "  length " << dp.lengths[k] << ": " << r.size << " points, " << describe(r) << "\n";
                }
                if (as_json)
                    std::cout << json{{"space", json::parse(to_json(dp.space->descriptor()))}, {"classes", list}}.dump()
                              << "\n";
                return 0;
            }
            if (name == "sl25") {
                std::cout << generators_to_json(sl2_5_in_sl2_9()) << "\n";
                return 0;
            }
            if (name == "classical") {
                const auto fam = parse_family(family);
                if (!fam || con.dim == 0 || con.q == 0)
                    throw InvalidArgument("classical needs --family, --dim and --q");
                std::cout << generators_to_json(classical_generators(*fam, con.dim, FiniteField::of_order(con.q)).generators)
                          << "\n";
                return 0;
            }
            throw InvalidArgument("unknown construction '" + name + "'");
        }
        if (*verify_cmd) {
            const auto manifest = manifest_file.empty() ? builtin_manifest() : parse_manifest(read_text_file(manifest_file));
            if (selector == "__list__") {
                for (const auto& tg : manifest)
                    std::cout << tg.id << (tg.budget == Budget::Slow ? "  (slow)" : "") << "\n";
                return 0;
            }
            auto targets = select_targets(manifest, selector);
            if (slow && selector == "fast") targets = select_targets(manifest, "all");
            if (fast_only)
                std::erase_if(targets, [](const VerificationTarget& tg) { return tg.budget == Budget::Slow; });
            const auto reports = run_targets(targets, RunOptions{threads, parallel, timing});
            std::cout << (as_json ? reports_jsonl(reports) : reports_table(reports));
            for (const auto& r : reports)
                if (!r.match) return 1;
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
