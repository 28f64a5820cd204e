#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multinorm/corpus.hpp"
#include "multinorm/serialize.hpp"

namespace fs = std::filesystem;
using namespace multinorm;

namespace {

struct Opts {
    std::string instance;
    std::string out;
    std::string format = "json";
    double eps = 0.0;         // 0 = keep the instance value
    double resolution = 0.0;  // 0 = auto (diameter/64); verify defaults to 0.1
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t uc_index = 0;
    std::size_t threads = 1;
};

void add_common(CLI::App* sub, Opts& o, bool needs_instance = true) {
    auto* inst = sub->add_option("--instance", o.instance, "problem instance (JSON file)");
    if (needs_instance) inst->required();
    sub->add_option("--eps", o.eps, "argmin slack override")->check(CLI::PositiveNumber);
    sub->add_option("--resolution", o.resolution, "coarse net spacing")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "solver seed override")
        ->each([&o](const std::string&) { o.seed_set = true; });
    sub->add_option("--out", o.out, "write the result here instead of stdout");
    sub->add_option("--threads", o.threads, "worker threads for inner loops")
        ->check(CLI::PositiveNumber);
}

void add_format(CLI::App* sub, Opts& o) {
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

Instance load(const Opts& o) {
    Instance inst = load_instance(o.instance);
    if (o.eps > 0.0) inst.eps = o.eps;
    if (o.seed_set) inst.seed = o.seed;
    return inst;
}

SolveOptions solve_options(const Instance& inst, const Opts& o) {
    SolveOptions opt;
    opt.resolution = o.resolution;
    opt.seed = inst.seed;
    return opt;
}

void emit(const Opts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InvalidArgument("cannot open output file " + o.out);
    f << text;
}

void emit_json(const Opts& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

int run_project(const Opts& o) {
    Instance inst = load(o);
    const NormSpec& norm = inst.family.specs.front();
    auto res = nearest_point_set(inst.set, norm, inst.x, inst.eps, solve_options(inst, o));
    if (o.format == "csv")
        emit(o, witness_csv(res.witnesses, norm, inst.x));
    else
        emit_json(o, to_json(res));
    return 0;
}

int run_common(const Opts& o) {
    Instance inst = load(o);
    if (inst.family.specs.size() != 2)
        throw SchemaError("common needs a two-norm family, this instance has " +
                          std::to_string(inst.family.specs.size()));
    const auto& n1 = inst.family.specs[0];
    const auto& n2 = inst.family.specs[1];
    auto res = common_nearest_two(inst.set, n1, n2, inst.x, inst.eps, solve_options(inst, o));
    if (o.format == "csv")
        emit(o, witness_csv(res.witnesses, sum_norm({n1, n2}), inst.x));
    else
        emit_json(o, to_json(res));
    return 0;
}

int run_chain(const Opts& o) {
    Instance inst = load(o);
    auto chain =
        common_nearest_family(inst.set, inst.family, inst.x, inst.eps, solve_options(inst, o));
    if (o.format == "csv") {
        emit(o, witness_csv(chain.intersection_witnesses, sum_norm(inst.family.specs), inst.x));
        return 0;
    }
    Json j = to_json(chain);
    if (o.uc_index > 0) {
        auto verdict = uniqueness_check(chain, inst.family, o.uc_index, kUniquenessTol);
        j["uniqueness"] = Json{{"index", o.uc_index}, {"verdict", to_string(verdict)}};
    }
    emit_json(o, j);
    return 0;
}

int run_modulus(const Opts& o) {
    Instance inst = load(o);
    std::size_t dim = inst.x.size();
    constexpr std::size_t samples = 100000;
    constexpr double threshold = 1e-3;

    Json all = Json::array();
    for (const auto& norm : inst.family.specs) {
        auto est = modulus_of_convexity(norm, dim, default_modulus_grid(), samples, inst.seed);
        auto verdict = uc_verdict(est, threshold);
        std::printf("norm %s (dim %zu, %zu samples)\n", describe(norm).c_str(), dim, samples);
        std::printf("  %8s  %12s\n", "eps", "delta_hat");
        for (std::size_t i = 0; i < est.eps_grid.size(); ++i)
            std::printf("  %8.4f  %12.6f\n", est.eps_grid[i], est.delta_hat[i]);
        std::printf("  verdict: %s (threshold %g)\n", to_string(verdict), threshold);
        Json j = to_json(est);
        j["verdict"] = to_string(verdict);
        all.push_back(std::move(j));
    }
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw InvalidArgument("cannot open output file " + o.out);
        f << all.dump(2) << "\n";
    }
    return 0;
}

// Solver-vs-oracle sweep: every member norm of every instance is solved twice
// (multistart polish and brute-force grid) and the witness sets compared.
int run_verify(const Opts& o) {
    double res = o.resolution > 0.0 ? o.resolution : 0.1;

    std::vector<fs::path> files;
    fs::path root(o.instance);
    if (fs::is_directory(root)) {
        for (const auto& de : fs::directory_iterator(root))
            if (de.path().extension() == ".json") files.push_back(de.path());
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw SchemaError("verify: no *.json instances under " + root.string());
    } else {
        files.push_back(root);
    }

    Json report;
    report["resolution"] = res;
    Json checked = Json::array();
    std::size_t mismatches = 0;

    for (const auto& f : files) {
        Instance inst = load_instance(f.string());
        if (o.eps > 0.0) inst.eps = o.eps;
        if (o.seed_set) inst.seed = o.seed;
        SolveOptions opt;
        opt.resolution = res;
        opt.seed = inst.seed;

        Json entry;
        entry["file"] = f.filename().string();
        Json norms = Json::array();
        for (const auto& norm : inst.family.specs) {
            auto solved = nearest_point_set(inst.set, norm, inst.x, inst.eps, opt);
            auto oracle = compare(solved, grid_argmin(inst.set, norm, inst.x, res, inst.eps));
            bool ok = oracle.agreement == OracleReport::Agreement::match;
            if (!ok) ++mismatches;
            norms.push_back(Json{{"norm", describe(norm)},
                                 {"agreement", to_string(oracle.agreement)},
                                 {"solver_distance", solved.distance},
                                 {"oracle_distance", oracle.min_value},
                                 {"details", oracle.details}});
        }
        entry["norms"] = std::move(norms);
        checked.push_back(std::move(entry));
    }
    report["instances"] = std::move(checked);
    report["mismatches"] = mismatches;
    emit_json(o, report);
    return mismatches == 0 ? 0 : 4;
}

int run_corpus(const Opts& o) {
    fs::path dir = o.out.empty() ? fs::path("corpus") : fs::path(o.out);
    fs::create_directories(dir);

    bool all_ok = true;
    for (const auto& entry : builtin_corpus()) {
        std::ofstream f(dir / (entry.name + ".json"));
        if (!f) throw InvalidArgument("cannot write under " + dir.string());
        f << to_json(entry.instance).dump(2) << "\n";

        auto check = check_corpus_entry(entry);
        if (check.ok) {
            std::printf("pass  %s\n", check.name.c_str());
        } else {
            std::printf("FAIL  %s: %s\n", check.name.c_str(), check.detail.c_str());
            all_ok = false;
        }
    }
    return all_ok ? 0 : 1;
}

void apply_budget_env() {
    const char* raw = std::getenv("MULTINORM_POINT_BUDGET");
    if (!raw) return;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
        throw SchemaError(std::string("MULTINORM_POINT_BUDGET must be a positive integer, got \"") +
                          raw + "\"");
    point_budget() = static_cast<std::size_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nearest-point sets of compact sets under increasing norm families"};
    app.require_subcommand(1);

    Opts o;
    int (*action)(const Opts&) = nullptr;

    auto* project = app.add_subcommand("project", "nearest points under the first family norm");
    add_common(project, o);
    add_format(project, o);
    project->callback([&] { action = run_project; });

    auto* common = app.add_subcommand("common", "common nearest points of an ordered norm pair");
    add_common(common, o);
    add_format(common, o);
    common->callback([&] { action = run_common; });

    auto* chain = app.add_subcommand("chain", "nested nearest-point sets over the whole family");
    add_common(chain, o);
    add_format(chain, o);
    chain->add_option("--uc-index", o.uc_index,
                      "1-based family position to certify uniqueness with")
        ->check(CLI::PositiveNumber);
    chain->callback([&] { action = run_chain; });

    auto* modulus =
        app.add_subcommand("modulus", "modulus-of-convexity estimates for the family members");
    add_common(modulus, o);
    modulus->callback([&] { action = run_modulus; });

    auto* verify =
        app.add_subcommand("verify", "solver-vs-oracle comparison over an instance file or directory");
    add_common(verify, o);
    verify->callback([&] { action = run_verify; });

    auto* corpus = app.add_subcommand("corpus", "write the built-in instances and check them");
    corpus->add_option("--out", o.out, "directory to write instance files into");
    corpus->add_option("--threads", o.threads, "worker threads for inner loops")
        ->check(CLI::PositiveNumber);
    corpus->callback([&] { action = run_corpus; });

    CLI11_PARSE(app, argc, argv);

    try {
        apply_budget_env();
        detail::set_thread_count(o.threads);
        return action(o);
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const InvalidArgument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
