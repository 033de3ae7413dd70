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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgsynth/buchi.hpp"
#include "pgsynth/strategy.hpp"

namespace pgsynth {

struct PipelineOptions {
    std::string model_name;
    Approach approach = Approach::Canonical;
    BuildLimits build;
    bool synthesize = true;
    SynthesisLimits synthesis;
};

struct PipelineResult {
    BuildResult build;
    SolveResult solve;
    std::optional<StrategyTree> tree;
    std::optional<SynthesisResult> synthesis;
    std::optional<ValidationReport> validation;
};

// expand, build, solve, then synthesize and validate when realizable. Errors keep their
// kind and gain a stage prefix.
PipelineResult run_pipeline(std::shared_ptr<const HLGame> g, const PipelineOptions& opts);

struct BenchCell {
    std::string model;
    Approach approach = Approach::Canonical;
    BuildStats stats;
    bool timeout = false;
    std::string error;
};

struct BenchReport {
    std::vector<BenchCell> cells;
};

struct BenchModel {
    std::string name;
    std::string text;
};

// Never aborts the matrix: budget overruns become timeout cells, other failures error cells.
BenchReport bench(const std::vector<BenchModel>& models, const std::vector<Approach>& approaches, double timeout_s);
std::string bench_table(const BenchReport& r);
nlohmann::json bench_json(const BenchReport& r);

} // namespace pgsynth
