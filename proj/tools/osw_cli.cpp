#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "osw/generators.hpp"
#include "osw/properties.hpp"

using namespace osw;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

Instance load_instance(const std::string& file, const std::string& fixture) {
    if (!fixture.empty()) {
        if (fixture == "sr-ex") return sr_ex();
        if (fixture == "reuse-ex") return reuse_ex();
        throw ValidationError("unknown fixture: " + fixture);
    }
    if (file.empty()) throw ValidationError("need an instance file or --fixture");
    return parse_instance(read_file(file));
}

TypeDistribution load_distribution(const std::string& file, const std::string& fixture) {
    if (!fixture.empty()) {
        if (fixture == "uiid-matching") return uiid_matching();
        if (fixture == "uiid-stochastic") return uiid_stochastic();
        if (fixture == "uiid-budgets") return uiid_budgets();
        throw ValidationError("unknown distribution fixture: " + fixture);
    }
    if (file.empty()) throw ValidationError("need a distribution file or --fixture");
    return parse_distribution(read_file(file));
}

void print_report(const PropertyReport& r) {
    std::cout << r.property << ": " << (r.holds ? "holds" : "FAILS") << " (" << r.checked
              << " tuples" << (r.exhaustive ? "" : ", sampled") << ")";
    if (!r.precondition_ok) std::cout << " [precondition failed]";
    if (!r.note.empty()) std::cout << " — " << r.note;
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online allocation with configurations: greedy, benchmarks, verification"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    long long cap = kDefaultEnumCap;
    std::string output, fixture;
    app.add_option("--seed", seed, "random seed");
    app.add_option("--cap", cap, "enumeration cap for exact benchmarks");
    app.add_option("--output", output, "output file (CSV or JSON, subcommand-dependent)");
    app.add_option("--fixture", fixture, "canonical fixture name (e.g. sr-ex, reuse-ex)");

    GeneratorSpec gspec;
    std::string in_file, repro_dir = "fuzz-repros";
    long long trials = 500;
    bool with_reveal = false;

    auto* c_gen = app.add_subcommand("gen", "generate a random instance");
    c_gen->add_option("--family", gspec.family, "generator family");
    c_gen->add_option("--resources", gspec.resources, "|I|");
    c_gen->add_option("--arrivals", gspec.arrivals, "T");
    c_gen->add_option("--menu-max", gspec.menu_max, "max |N_t|");
    c_gen->add_option("--patience", gspec.patience, "patience k");

    auto* c_run = app.add_subcommand("run", "run non-adaptive greedy");
    c_run->add_option("instance", in_file, "instance JSON file");

    auto* c_bench = app.add_subcommand("bench", "run greedy and all exact benchmarks");
    c_bench->add_option("instance", in_file, "instance JSON file");

    auto* c_verify = app.add_subcommand("verify", "run property checkers on every objective");
    c_verify->add_option("instance", in_file, "instance JSON file");

    auto* c_reveal = app.add_subcommand("reveal", "build and verify the revealed companion");
    c_reveal->add_option("instance", in_file, "instance JSON file");

    auto* c_uiid = app.add_subcommand("uiid", "estimate the unknown-IID competitive ratio");
    c_uiid->add_option("distribution", in_file, "type distribution JSON file");
    c_uiid->add_option("--trials", trials, "Monte Carlo trials");

    auto* c_fuzz = app.add_subcommand("fuzz", "random instances through the invariant chain");
    c_fuzz->add_option("--family", gspec.family, "generator family");
    c_fuzz->add_option("--resources", gspec.resources, "|I|");
    c_fuzz->add_option("--arrivals", gspec.arrivals, "T");
    c_fuzz->add_option("--menu-max", gspec.menu_max, "max |N_t|");
    c_fuzz->add_option("--trials", trials, "instance count");
    c_fuzz->add_option("--repro-dir", repro_dir, "where to persist violating instances");
    c_fuzz->add_flag("--reveal", with_reveal, "also verify the reveal transformation");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_gen->parsed()) {
            gspec.seed = seed;
            gspec.fixture = fixture;
            write_output(output, serialize_instance(gen(gspec)));
            return 0;
        }
        if (c_run->parsed()) {
            Instance inst = load_instance(in_file, fixture);
            GreedyResult res = run_greedy(inst);
            std::cout << "ALG = " << rat_str(res.total) << "\n";
            if (!output.empty()) write_output(output, trace_csv(inst, res.trace));
            return 0;
        }
        if (c_bench->parsed()) {
            Instance inst = load_instance(in_file, fixture);
            StageSet stages;
            ExperimentReport rep = run_experiment(inst, stages, "file", cap);
            auto show = [](const char* name, const std::optional<Rat>& v) {
                std::cout << name << " = " << (v ? rat_str(*v) : "-") << "\n";
            };
            show("ALG", rep.row.alg);
            show("OPT", rep.row.opt);
            show("AOPT", rep.row.aopt);
            show("OPTC", rep.row.optc);
            show("ALG/OPTC", rep.row.ratio_alg_optc);
            std::cout << "certificate: " << (rep.row.cert_ok ? "holds" : "FAILS") << "\n";
            std::cout << "chain: " << (rep.chain_ok ? "holds" : "FAILS") << "\n";
            if (!rep.note.empty()) std::cout << rep.note << "\n";
            if (!output.empty()) write_output(output, report_csv({rep.row}));
            return rep.chain_ok && rep.row.cert_ok ? 0 : 1;
        }
        if (c_verify->parsed()) {
            Instance inst = load_instance(in_file, fixture);
            bool ok = true;
            for (std::size_t i = 0; i < inst.resources().size(); ++i) {
                if (inst.resources()[i].dummy) continue;
                const ValueOracle& f = inst.objective(static_cast<int>(i));
                const auto& owned = inst.owned(static_cast<int>(i));
                std::cout << "resource " << inst.resources()[i].name << " (" << f.family()
                          << "):\n";
                ElementSet ground{std::vector<int>(owned)};
                PropertyReport mono = check_monotone(f, ground, inst);
                PropertyReport so = check_so(f, owned, inst);
                print_report(mono);
                print_report(so);
                ok = ok && mono.holds && so.holds;
                if (f.domain() == ValueOracle::Domain::Full) {
                    print_report(check_submodular(f, ground, inst));  // informational
                    print_report(check_eq1(f, inst));                 // informational
                }
            }
            return ok ? 0 : 1;
        }
        if (c_reveal->parsed()) {
            Instance inst = load_instance(in_file, fixture);
            ConcaveClosureSolution sol = solve_optc(inst);
            RevealedInstance rev = build_reveal(inst, sol);
            RevealReport rep = verify_reveal(rev, cap);
            std::cout << "OPTC = " << rat_str(sol.value) << "\n"
                      << "reveal verification: " << (rep.holds ? "holds" : "FAILS") << "\n";
            if (!rep.note.empty()) std::cout << rep.note << "\n";
            if (!output.empty()) {
                nlohmann::json doc = nlohmann::json::parse(serialize_instance(rev.hat));
                nlohmann::json ann;
                ann["relaxation_value"] = rat_str(sol.value);
                for (std::size_t e = 0; e < sol.yc.size(); ++e)
                    if (sol.yc[e] != 0) ann["y"][rev.base.config(static_cast<int>(e)).id] =
                        rat_str(sol.yc[e]);
                doc["annotations"] = std::move(ann);
                write_output(output, doc.dump(2) + "\n");
            }
            return rep.holds ? 0 : 1;
        }
        if (c_uiid->parsed()) {
            TypeDistribution dist = load_distribution(in_file, fixture);
            RatioEstimate est = estimate_ratio(dist, trials, seed);
            std::cout << "E[ALG] = " << rat_str(est.mean_alg) << "\n"
                      << "E[OPTC] = " << rat_str(est.mean_optc) << "\n"
                      << "ratio = " << est.ratio << " (99% lower bound " << est.lower99 << ")\n"
                      << "per-path 2*ALG >= OPTC: " << (est.per_path_half ? "holds" : "FAILS")
                      << "\n";
            if (!output.empty()) write_output(output, uiid_csv(est));
            return est.per_path_half ? 0 : 1;
        }
        if (c_fuzz->parsed()) {
            gspec.fixture.clear();
            FuzzReport rep = fuzz(gspec, trials, seed, repro_dir, with_reveal);
            std::cout << rep.trials << " instances, " << rep.violations << " violations\n";
            if (!rep.note.empty()) std::cout << rep.note << "\n";
            for (const auto& f : rep.repro_files) std::cout << "repro: " << f << "\n";
            if (!output.empty()) write_output(output, report_csv(rep.rows));
            return rep.violations == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
