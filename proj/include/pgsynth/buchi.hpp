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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgsynth/canonical.hpp"
#include "pgsynth/decision_set.hpp"
#include "pgsynth/error.hpp"
#include "pgsynth/game.hpp"

namespace pgsynth {

enum class Approach { Explicit, Membership, Canonical };

const char* to_string(Approach a);
// Throws SyntaxError.
Approach parse_approach(const std::string& s);

struct GameEdge {
    uint32_t target;
    std::string label;  // "⊤" or an instance name
    bool top = false;
    bool operator==(const GameEdge&) const = default;
};

// Player 0 owns the system nodes, player 1 the environment-dependent ones.
struct BuchiGame {
    Approach approach = Approach::Canonical;
    std::shared_ptr<const PTGame> game;
    uint32_t initial = 0;
    std::vector<uint8_t> player;
    std::vector<StateFlags> flags;
    std::vector<bool> has_top;
    std::vector<std::vector<GameEdge>> succ;  // sinks carry exactly one self-loop
    std::vector<DecisionSet> states;                // explicit and membership
    std::vector<CanonicalRepresentation> reps;      // canonical
    std::vector<std::string> warnings;

    uint32_t num_nodes() const { return static_cast<uint32_t>(succ.size()); }
    bool accepting(uint32_t v) const { return flags[v].accepting(); }
    bool sink(uint32_t v) const { return flags[v].sink(); }
    // Sink self-loops are not counted.
    uint64_t num_edges() const;
    uint64_t num_accepting() const;
};

struct BuildStats {
    std::string model;
    Approach approach = Approach::Canonical;
    uint64_t num_nodes = 0;
    uint64_t num_edges = 0;
    uint64_t num_accepting = 0;
    uint64_t num_symmetries = 0;
    uint64_t comparisons = 0;
    uint64_t orderings_enumerated = 0;
    uint64_t max_orderings = 0;  // per canonicalization
    double build_ms = 0;
    double solve_ms = 0;
    std::optional<bool> realizable;
};

nlohmann::json stats_json(const BuildStats& s);

struct BuildLimits {
    uint64_t max_nodes = 5000000;
    double max_seconds = 0;  // 0: unlimited
    bool reverse_successors = false;
};

// BoundExceeded carrying the counters reached so far.
class BudgetExceeded : public Error
{
public:
    BudgetExceeded(const std::string& msg, BuildStats partial)
        : Error(ErrorKind::BoundExceeded, msg), partial_(std::move(partial))
    {
    }
    const BuildStats& partial() const { return partial_; }

private:
    BuildStats partial_;
};

struct BuildResult {
    BuchiGame game;
    BuildStats stats;
};

BuildResult build_game(std::shared_ptr<const HLGame> g, Approach approach, const BuildLimits& limits = {});

struct SolveResult {
    std::vector<bool> winning;
    std::vector<int32_t> strategy;  // per node: index into succ, -1 outside W0 ∩ V0
    bool realizable = false;
};

// Throws NonTotalGame.
SolveResult solve_buchi(const BuchiGame& game);

// Plain graph form for solver testing.
struct ArenaGraph {
    std::vector<uint8_t> player;
    std::vector<bool> accepting;
    std::vector<std::vector<uint32_t>> succ;
};
ArenaGraph arena(const BuchiGame& game);
SolveResult solve_buchi(const ArenaGraph& g, uint32_t initial);
// Nested fixpoint over bitmasks, at most 64 nodes.
std::vector<bool> solve_buchi_naive(const ArenaGraph& g);

struct QuotientReport {
    bool ok = true;
    uint64_t orbits = 0;
    uint64_t quotient_edges = 0;
    std::string mismatch;  // first divergence
};

QuotientReport quotient_check(const BuchiGame& explicit_game, const BuchiGame& canonical_game);

std::string game_dot(const BuchiGame& game);

// Name of a symbolic successor label over r's subclasses, e.g. "a.(Z1^1_1,Z1^1_2)".
std::string successor_label(const SymbolicContext& ctx, const DynamicRepresentation& r, const SymbolicSuccessor& s);

} // namespace pgsynth
