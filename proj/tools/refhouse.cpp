// refhouse: solve, verify, generate and benchmark refugee housing instances.
//
// Exit codes: solve 0 sat / 1 unsat / 2 undecided; verify 0 accepted / 1 rejected;
// 3 internal error, 64 usage, 65 malformed or invalid data, 66 unreadable input.

#include "refhouse/io.hpp"
#include "refhouse/random.hpp"
#include "refhouse/reductions.hpp"
#include "refhouse/solve_arh.hpp"
#include "refhouse/solve_hx.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace refhouse;

namespace {

enum Exit { kSat = 0, kUnsat = 1, kUndecided = 2, kInternal = 3, kUsage = 64, kData = 65, kNoInput = 66 };

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") std::cout << text << std::flush;
    else write_file(out, text);
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("REFHOUSE_BUDGET")) {
        char* end = nullptr;
        const auto value = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && value > 0) return value;
        std::cerr << "refhouse: ignoring malformed REFHOUSE_BUDGET='" << env << "'\n";
    }
    return Budget{}.nodes;
}

SolveResult run_solver(const Instance& instance, const std::string& algorithm, std::uint64_t budget, bool preprocess) {
    SolveOptions options;
    options.strategy = parse_strategy(algorithm);
    options.budget.nodes = budget;
    options.preprocess = preprocess;
    SolveResult result = solve(instance, options);
    if (result.witness && !verify(instance, *result.witness))
        throw std::logic_error("solver produced a witness that fails verification");
    return result;
}

int status_code(Status s) {
    switch (s) {
    case Status::sat: return kSat;
    case Status::unsat: return kUnsat;
    case Status::undecided: return kUndecided;
    }
    return kInternal;
}

// --- generate gadget ------------------------------------------------------

struct GadgetArgs {
    std::string kind;
    std::string input;
    int k = 2;
    int lambda = 2;
    std::uint64_t seed = 1;
};

Instance make_gadget(const GadgetArgs& a) {
    Rng rng(a.seed);
    const bool given = !a.input.empty();
    auto text = [&] { return read_file(a.input); };
    auto cnf = [&] { return given ? parse_dimacs(text()) : random_two_balanced_cnf(rng.between(1, 5), rng.between(1, 6), rng); };
    auto clique = [&] { return given ? parse_clique(text()) : random_clique_instance(3, 2, 1, rng); };

    if (a.kind == "sat-arh") return sat_to_arh(cnf()).instance;
    if (a.kind == "sat-hrh") return sat_to_hrh(cnf()).instance;
    if (a.kind == "sat-drh") return sat_to_drh(cnf()).instance;
    if (a.kind == "ds-arh") {
        DominatingSet p{given ? parse_graph(text()) : random_graph(rng.between(1, 7), 0.3, rng), a.k};
        return dominating_set_to_arh(p).instance;
    }
    if (a.kind == "clique-arh") return clique_to_arh(clique()).instance;
    if (a.kind == "clique-hrh") return clique_to_hrh(clique()).instance;
    if (a.kind == "binpacking-arh")
        return binpacking_to_arh(given ? parse_bin_packing(text()) : random_bin_packing(6, 3, rng)).instance;
    if (a.kind == "channel-hrh")
        return channel_to_hrh(given ? parse_channel(text(), a.lambda) : random_channel_assignment(4, 3, rng)).instance;
    if (a.kind == "setcover-drh")
        return setcover_to_drh(given ? parse_set_cover(text()) : random_set_cover(4, 4, rng)).instance;
    if (a.kind == "arh-hrh") {
        if (!given) {
            RandomShape shape;
            return arh_to_hrh(random_instance(shape, a.seed)).instance;
        }
        return arh_to_hrh(parse_instance(text(), a.input)).instance;
    }
    throw CLI::ValidationError("--kind", "unknown gadget '" + a.kind + "'");
}

// --- bench ----------------------------------------------------------------

struct BenchRow {
    std::string instance;
    std::string algorithm;
    std::string variant;
    std::string status;
    std::uint64_t nodes = 0;
    double millis = 0;
};

/// Suite lines: "<instance path> [algorithm]", paths relative to the suite file; '#' comments.
std::vector<std::pair<std::string, std::string>> read_suite(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> rows;
    const auto base = std::filesystem::path(path).parent_path();
    std::istringstream in(read_file(path));
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        std::istringstream words(line);
        std::string file, algorithm, extra;
        if (!(words >> file) || file[0] == '#') continue;
        if (!(words >> algorithm)) algorithm = "auto";
        if (words >> extra) throw FormatError(path + ": line " + std::to_string(number) + ": expected '<instance> [algorithm]'");
        rows.emplace_back((base / file).string(), algorithm);
    }
    return rows;
}

int bench(const std::string& suite, int repeat, std::uint64_t budget, const std::string& csv) {
    std::vector<BenchRow> rows;
    for (const auto& [file, algorithm] : read_suite(suite)) {
        const Instance instance = parse_instance(read_file(file), file);
        for (int rep = 0; rep < repeat; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            SolveResult result;
            try {
                result = run_solver(instance, algorithm, budget, true);
            } catch (const PreconditionViolated& e) {
                result = SolveResult::undecided(algorithm, e.what());
            }
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            rows.push_back({file, algorithm, std::string(to_string(instance.variant())),
                            std::string(to_string(result.status)), result.stats.nodes, ms});
        }
    }
    std::size_t width = 8;
    for (const auto& r : rows) width = std::max(width, r.instance.size());
    std::cout << std::left << std::setw(static_cast<int>(width)) << "instance" << "  " << std::setw(8) << "variant"
              << std::setw(10) << "algorithm" << std::setw(10) << "status" << std::right << std::setw(12) << "nodes"
              << std::setw(12) << "millis" << '\n';
    for (const auto& r : rows)
        std::cout << std::left << std::setw(static_cast<int>(width)) << r.instance << "  " << std::setw(8) << r.variant
                  << std::setw(10) << r.algorithm << std::setw(10) << r.status << std::right << std::setw(12) << r.nodes
                  << std::setw(12) << std::fixed << std::setprecision(2) << r.millis << '\n';
    std::ostringstream machine;
    machine << "instance,variant,algorithm,status,nodes,millis\n";
    for (const auto& r : rows)
        machine << r.instance << ',' << r.variant << ',' << r.algorithm << ',' << r.status << ',' << r.nodes << ','
                << std::fixed << std::setprecision(3) << r.millis << '\n';
    if (!csv.empty()) emit(machine.str(), csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refugee housing solver"};
    app.require_subcommand(1);

    std::string path, housing_path, out, algorithm = "auto", csv;
    std::uint64_t budget = default_budget();
    bool no_preprocess = false;

    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance; exit 0 sat, 1 unsat, 2 undecided");
    solve_cmd->add_option("instance", path, "Instance JSON file")->required();
    solve_cmd->add_option("-a,--algorithm", algorithm, "auto|brute|dp2|sig-ip|sig-sets|delta|guess|vc")
        ->check(CLI::IsMember({"auto", "brute", "dp2", "sig-ip", "sig-sets", "delta", "guess", "vc"}));
    solve_cmd->add_option("-b,--budget", budget, "Search node budget (default: $REFHOUSE_BUDGET or 20000000)")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--no-preprocess", no_preprocess, "Skip the simplification rules");
    solve_cmd->add_option("-o,--out", out, "Result file (default: stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "Check a housing; exit 0 accepted, 1 rejected");
    verify_cmd->add_option("instance", path, "Instance JSON file")->required();
    verify_cmd->add_option("housing", housing_path, "Housing or result JSON file")->required();

    auto* generate_cmd = app.add_subcommand("generate", "Write an instance document");
    generate_cmd->require_subcommand(1);
    std::uint64_t seed = 1;
    RandomShape shape;
    std::string variant = "arh";
    auto* random_cmd = generate_cmd->add_subcommand("random", "Seeded random instance");
    random_cmd->add_option("--variant", variant)->check(CLI::IsMember({"arh", "hrh", "drh"}));
    random_cmd->add_option("-n,--vertices", shape.vertices)->check(CLI::NonNegativeNumber);
    random_cmd->add_option("-i,--inhabitants", shape.inhabitants)->check(CLI::NonNegativeNumber);
    random_cmd->add_option("-r,--refugees", shape.refugees)->check(CLI::PositiveNumber);
    random_cmd->add_option("-p,--edge-probability", shape.edge_probability)->check(CLI::Range(0.0, 1.0));
    random_cmd->add_flag("--max-degree-two", shape.max_degree_two);
    random_cmd->add_flag("--intervals-only", shape.intervals_only);
    random_cmd->add_option("--types", shape.types)->check(CLI::PositiveNumber);
    random_cmd->add_option("--family-size", shape.family_size)->check(CLI::NonNegativeNumber);
    random_cmd->add_option("-s,--seed", seed);
    random_cmd->add_option("-o,--out", out);

    GadgetArgs gadget;
    auto* gadget_cmd = generate_cmd->add_subcommand("gadget", "Hardness construction from a source problem");
    gadget_cmd->add_option("-k,--kind", gadget.kind)
        ->required()
        ->check(CLI::IsMember({"sat-arh", "sat-hrh", "sat-drh", "ds-arh", "clique-arh", "clique-hrh", "binpacking-arh",
                               "channel-hrh", "setcover-drh", "arh-hrh"}));
    gadget_cmd->add_option("input", gadget.input, "Source file (random source from --seed when omitted)");
    gadget_cmd->add_option("--size", gadget.k, "Dominating-set size bound")->check(CLI::NonNegativeNumber);
    gadget_cmd->add_option("--lambda", gadget.lambda, "Channel count")->check(CLI::PositiveNumber);
    gadget_cmd->add_option("-s,--seed", gadget.seed);
    gadget_cmd->add_option("-o,--out", out);

    int repeat = 1;
    auto* bench_cmd = app.add_subcommand("bench", "Run a suite of '<instance> [algorithm]' lines");
    bench_cmd->add_option("suite", path)->required();
    bench_cmd->add_option("--repeat", repeat)->check(CLI::PositiveNumber);
    bench_cmd->add_option("-b,--budget", budget)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", csv, "Machine-readable rows ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*solve_cmd) {
            const Instance instance = parse_instance(read_file(path), path);
            const SolveResult result = run_solver(instance, algorithm, budget, !no_preprocess);
            emit(dump_canonical(result_to_json(result, instance.variant())), out);
            return status_code(result.status);
        }
        if (*verify_cmd) {
            const Instance instance = parse_instance(read_file(path), path);
            std::optional<Variant> declared;
            Housing housing;
            try {
                housing = housing_from_json(parse_json(read_file(housing_path), housing_path), &declared);
            } catch (const FormatError& e) {
                throw FormatError(housing_path + ": " + e.what());
            }
            if (declared && *declared != instance.variant())
                throw FormatError("variant mismatch: instance is " + std::string(to_string(instance.variant())) +
                                  ", housing is " + std::string(to_string(*declared)));
            validate_housing(instance, housing);
            const bool ok = verify(instance, housing);
            std::cout << (ok ? "accepted" : "rejected") << '\n';
            return ok ? 0 : 1;
        }
        if (*random_cmd) {
            shape.variant = parse_variant(variant);
            emit(serialize_instance(random_instance(shape, seed)), out);
            return 0;
        }
        if (*gadget_cmd) {
            emit(serialize_instance(make_gadget(gadget)), out);
            return 0;
        }
        if (*bench_cmd) return bench(path, repeat, budget, csv);
    } catch (const MissingInput& e) {
        std::cerr << "refhouse: " << e.what() << '\n';
        return kNoInput;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "refhouse: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "refhouse: format error: " << e.what() << '\n';
        return kData;
    } catch (const InvalidInstance& e) {
        std::cerr << "refhouse: invalid instance: " << e.what() << '\n';
        return kData;
    } catch (const InvalidHousing& e) {
        std::cerr << "refhouse: invalid housing: " << e.what() << '\n';
        return kData;
    } catch (const PreconditionViolated& e) {
        std::cerr << "refhouse: precondition violated: " << e.what() << '\n';
        return kData;
    } catch (const BudgetExceeded& e) {
        std::cerr << "refhouse: too large: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "refhouse: internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
