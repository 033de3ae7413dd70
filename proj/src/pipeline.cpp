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

#include "pgsynth/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "pgsynth/model.hpp"

namespace pgsynth {

namespace {

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const BudgetExceeded&) {
        throw;
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(stage) + ": " + e.what());
    }
}

} // namespace

PipelineResult run_pipeline(std::shared_ptr<const HLGame> g, const PipelineOptions& opts)
{
    PipelineResult res;
    res.build = staged("build", [&] { return build_game(g, opts.approach, opts.build); });
    res.build.stats.model = opts.model_name;
    const auto t0 = std::chrono::steady_clock::now();
    res.solve = staged("solve", [&] { return solve_buchi(res.build.game); });
    res.build.stats.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    res.build.stats.realizable = res.solve.realizable;
    if (!opts.synthesize || !res.solve.realizable) return res;
    res.tree = staged("unfold", [&] { return unfold_strategy_tree(res.build.game, res.solve, opts.synthesis); });
    res.synthesis = staged("synthesize", [&] { return generate_strategy(*res.tree, res.build.game, opts.synthesis); });
    res.validation = staged("validate", [&] { return validate_strategy(res.synthesis->strategy, *res.build.game.game); });
    return res;
}

BenchReport bench(const std::vector<BenchModel>& models, const std::vector<Approach>& approaches, double timeout_s)
{
    BenchReport rep;
    for (const auto& m : models) {
        std::shared_ptr<const HLGame> g;
        try {
            g = std::make_shared<const HLGame>(parse_model(m.text));
        } catch (const Error& e) {
            for (auto a : approaches) rep.cells.push_back({m.name, a, {}, false, e.what()});
            continue;
        }
        for (auto a : approaches) {
            BenchCell cell{m.name, a, {}, false, ""};
            PipelineOptions opts;
            opts.model_name = m.name;
            opts.approach = a;
            opts.build.max_seconds = timeout_s;
            opts.synthesize = false;
            try {
                cell.stats = run_pipeline(g, opts).build.stats;
            } catch (const BudgetExceeded& e) {
                cell.stats = e.partial();
                cell.stats.model = m.name;
                cell.timeout = true;
            } catch (const Error& e) {
                cell.error = e.what();
            }
            rep.cells.push_back(std::move(cell));
        }
    }
    return rep;
}

std::string bench_table(const BenchReport& r)
{
    std::vector<Approach> approaches;
    std::vector<std::string> models;
    for (const auto& c : r.cells) {
        if (std::find(approaches.begin(), approaches.end(), c.approach) == approaches.end()) approaches.push_back(c.approach);
        if (std::find(models.begin(), models.end(), c.model) == models.end()) models.push_back(c.model);
    }
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %10s %10s %6s %5s", "model", "|V|", "|E|", "|xi|", "real");
    out += buf;
    for (auto a : approaches) {
        std::snprintf(buf, sizeof buf, " %12s", (std::string(to_string(a)) + "_s").c_str());
        out += buf;
    }
    out += "\n";
    for (const auto& m : models) {
        const BenchCell* ref = nullptr;
        for (const auto& c : r.cells) {
            if (c.model != m || c.timeout || !c.error.empty()) continue;
            if (!ref || c.approach == Approach::Canonical) ref = &c;
        }
        if (ref) {
            std::snprintf(buf, sizeof buf, "%-16s %10llu %10llu %6llu %5s", m.c_str(), (unsigned long long)ref->stats.num_nodes,
                          (unsigned long long)ref->stats.num_edges, (unsigned long long)ref->stats.num_symmetries,
                          ref->stats.realizable.value_or(false) ? "yes" : "no");
        } else {
            std::snprintf(buf, sizeof buf, "%-16s %10s %10s %6s %5s", m.c_str(), "-", "-", "-", "-");
        }
        out += buf;
        for (auto a : approaches) {
            std::string cell = "-";
            for (const auto& c : r.cells) {
                if (c.model != m || c.approach != a) continue;
                if (c.timeout) {
                    cell = "TO";
                } else if (!c.error.empty()) {
                    cell = "ERR";
                } else {
                    std::snprintf(buf, sizeof buf, "%.2f", (c.stats.build_ms + c.stats.solve_ms) / 1000.0);
                    cell = buf;
                }
            }
            std::snprintf(buf, sizeof buf, " %12s", cell.c_str());
            out += buf;
        }
        out += "\n";
    }
    return out;
}

nlohmann::json bench_json(const BenchReport& r)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : r.cells) {
        nlohmann::json j = stats_json(c.stats);
        j["model"] = c.model;
        j["approach"] = to_string(c.approach);
        j["timeout"] = c.timeout;
        if (!c.error.empty()) j["error"] = c.error;
        out.push_back(j);
    }
    return out;
}

} // namespace pgsynth
