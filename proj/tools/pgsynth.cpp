/*
 * Copyright 2026 The pgsynth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pgsynth/model.hpp"
#include "pgsynth/pipeline.hpp"

using namespace pgsynth;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kNotRealizable = 2;
constexpr int kInputError = 3;
constexpr int kBudget = 4;

int exit_code(const Error& e)
{
    switch (e.kind()) {
    case ErrorKind::SyntaxError:
    case ErrorKind::ValidationError:
    case ErrorKind::InvalidUniverse:
    case ErrorKind::NonSymmetricInitialMarking:
    case ErrorKind::IllTypedArc:
    case ErrorKind::UnboundVariable:
    case ErrorKind::UnsafeNet:
    case ErrorKind::MultipleEnvironmentTokens: return kInputError;
    case ErrorKind::BoundExceeded:
    case ErrorKind::LimitExceeded: return kBudget;
    default: return kInternal;
    }
}

std::shared_ptr<const HLGame> load(const std::string& path)
{
    return std::make_shared<const HLGame>(parse_model(read_file(path)));
}

void emit(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

void print_stats(const BuildStats& s)
{
    std::cout << "nodes " << s.num_nodes << ", edges " << s.num_edges << ", accepting " << s.num_accepting
              << ", symmetries " << s.num_symmetries << ", build " << s.build_ms << " ms\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Petri game synthesis with symmetry reduction"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a benchmark model");
    std::string family;
    unsigned n = 3;
    std::string gen_out = "-";
    gen->add_option("family", family, "model family (cs)")->required()->check(CLI::IsMember({"cs"}));
    gen->add_option("--n", n, "number of computers")->check(CLI::Range(1u, 64u));
    gen->add_option("--out", gen_out, "output file, - for stdout");

    std::string model, approach = "canonical", stats_path, dot_path, strategy_path, report_path;
    uint64_t max_nodes = 5000000;
    uint32_t max_depth = 10000;
    double timeout = 0;
    bool require_realizable = false, unroll = false;

    auto* build = app.add_subcommand("build", "build the Büchi game");
    build->add_option("model", model)->required()->check(CLI::ExistingFile);
    build->add_option("--approach", approach)->check(CLI::IsMember({"explicit", "membership", "canonical"}));
    build->add_option("--stats", stats_path, "stats JSON output");
    build->add_option("--dot", dot_path, "game graph DOT output");
    build->add_option("--max-nodes", max_nodes, "node budget");
    build->add_option("--timeout", timeout, "build budget in seconds");

    auto* solve = app.add_subcommand("solve", "build, solve, and synthesize a strategy");
    solve->add_option("model", model)->required()->check(CLI::ExistingFile);
    solve->add_option("--approach", approach)->check(CLI::IsMember({"explicit", "membership", "canonical"}));
    solve->add_option("--stats", stats_path, "stats JSON output");
    solve->add_option("--strategy", strategy_path, "strategy DOT output");
    solve->add_option("--report", report_path, "cut report JSON output");
    solve->add_option("--max-depth", max_depth, "strategy tree depth bound");
    solve->add_option("--max-nodes", max_nodes, "node budget for game and strategy");
    solve->add_option("--timeout", timeout, "build budget in seconds");
    solve->add_flag("--require-realizable", require_realizable, "exit with 2 if not realizable");
    solve->add_flag("--unroll", unroll, "unroll loops to the depth bound instead of stopping at the first revisit");

    auto* bench_cmd = app.add_subcommand("bench", "run every model file in a directory");
    std::string dir, json_path;
    std::vector<std::string> approaches{"canonical"};
    double bench_timeout = 60;
    bench_cmd->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--approaches", approaches)->delimiter(',')->check(CLI::IsMember({"explicit", "membership", "canonical"}));
    bench_cmd->add_option("--timeout", bench_timeout, "per-cell build budget in seconds");
    bench_cmd->add_option("--json", json_path, "report JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*gen) {
            emit(gen_out, generate_cs(n));
            return kOk;
        }
        if (*bench_cmd) {
            std::vector<std::filesystem::path> files;
            for (const auto& e : std::filesystem::directory_iterator(dir)) {
                if (e.is_regular_file() && e.path().extension() == ".pg") files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            std::vector<BenchModel> models;
            for (const auto& f : files) models.push_back({f.stem().string(), read_file(f.string())});
            std::vector<Approach> as;
            for (const auto& a : approaches) as.push_back(parse_approach(a));
            BenchReport rep = bench(models, as, bench_timeout);
            std::cout << bench_table(rep);
            if (!json_path.empty()) emit(json_path, bench_json(rep).dump(2) + "\n");
            return kOk;
        }
        PipelineOptions opts;
        opts.model_name = std::filesystem::path(model).stem().string();
        opts.approach = parse_approach(approach);
        opts.build.max_nodes = max_nodes;
        opts.build.max_seconds = timeout;
        opts.synthesize = bool(*solve);
        opts.synthesis.max_depth = max_depth;
        opts.synthesis.max_nodes = max_nodes;
        opts.synthesis.lasso = unroll ? LassoPolicy::Unroll : LassoPolicy::Stop;
        const auto g = load(model);
        PipelineResult res;
        try {
            res = run_pipeline(g, opts);
        } catch (const BudgetExceeded& e) {
            if (!stats_path.empty()) emit(stats_path, stats_json(e.partial()).dump(2) + "\n");
            throw;
        }
        for (const auto& w : res.build.game.warnings) std::cerr << "warning: " << w << "\n";
        if (*build) res.build.stats.realizable.reset();
        print_stats(res.build.stats);
        if (!stats_path.empty()) emit(stats_path, stats_json(res.build.stats).dump(2) + "\n");
        if (!dot_path.empty()) emit(dot_path, game_dot(res.build.game));
        if (*build) return kOk;
        std::cout << (res.solve.realizable ? "realizable" : "not realizable") << "\n";
        if (res.validation) {
            const auto& v = *res.validation;
            std::cout << "strategy: " << res.synthesis->strategy.num_places() << " places, "
                      << res.synthesis->strategy.num_transitions() << " transitions, " << res.tree->lassos
                      << " open loops; validation " << (v.ok() ? "passed" : "FAILED") << "\n";
            for (const auto& m : v.violations) std::cerr << "violation: " << m << "\n";
            if (!strategy_path.empty()) emit(strategy_path, strategy_dot(res.synthesis->strategy, *res.build.game.game));
            if (!report_path.empty()) {
                nlohmann::json j;
                j["lasso_policy"] = unroll ? "unroll" : "stop";
                j["open_loops"] = res.tree->lassos;
                j["nodes"] = cut_report(*res.tree, *res.synthesis, *res.build.game.game);
                emit(report_path, j.dump(2) + "\n");
            }
            if (!v.ok()) return kInternal;
        }
        if (require_realizable && !res.solve.realizable) return kNotRealizable;
        return kOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
