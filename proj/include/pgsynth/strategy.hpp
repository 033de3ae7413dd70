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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgsynth/buchi.hpp"
#include "pgsynth/occurrence.hpp"

namespace pgsynth {

enum class LassoPolicy { Stop, Unroll };

struct SynthesisLimits {
    uint32_t max_depth = 10000;
    uint64_t max_nodes = 1000000;  // tree nodes and strategy elements alike
    LassoPolicy lasso = LassoPolicy::Stop;
};

struct TreeNode {
    uint32_t game_node;
    int32_t parent = -1;
    std::string label;  // edge label from the parent
    bool top = false;
    uint32_t depth = 0;
    int32_t back_ref = -1;  // ancestor this branch loops to
    std::vector<uint32_t> children;
};

// Breadth-first; node 0 is the root.
struct StrategyTree {
    std::vector<TreeNode> nodes;
    uint32_t lassos = 0;
};

// Throws NotWinning, LimitExceeded.
StrategyTree unfold_strategy_tree(const BuchiGame& game, const SolveResult& f, const SynthesisLimits& limits = {});

struct CutRecord {
    Cut cut;
    DecisionSet decisions;
};

struct SynthesisResult {
    PGStrategy strategy;
    std::vector<std::vector<CutRecord>> cuts;  // per tree node
};

// Throws AssignmentMismatch on an internal inconsistency, LimitExceeded.
SynthesisResult generate_strategy(const StrategyTree& tree, const BuchiGame& game, const SynthesisLimits& limits = {});

nlohmann::json cut_report(const StrategyTree& tree, const SynthesisResult& s, const PTGame& game);

} // namespace pgsynth
