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

#include "pgsynth/game.hpp"

namespace pgsynth {

// Labeled occurrence net. Places are numbered 0..P-1, transitions 0..T-1.
class OccurrenceNet
{
public:
    uint32_t add_place(uint32_t label, int32_t producer = -1);
    // Preset places are consumed as given; the postset is created by add_output.
    uint32_t add_transition(uint32_t label, std::vector<uint32_t> preset);
    uint32_t add_output(uint32_t transition, uint32_t label);

    uint32_t num_places() const { return static_cast<uint32_t>(place_label.size()); }
    uint32_t num_transitions() const { return static_cast<uint32_t>(trans_label.size()); }
    std::vector<uint32_t> initial() const;

    std::vector<uint32_t> place_label;  // P/T place
    std::vector<uint32_t> trans_label;  // P/T transition
    std::vector<int32_t> place_pre;     // producing transition or -1
    std::vector<std::vector<uint32_t>> place_post;
    std::vector<std::vector<uint32_t>> trans_pre, trans_post;
    std::vector<bool> open;  // place on a truncated frontier
};

using PGStrategy = OccurrenceNet;
using Cut = std::vector<uint32_t>;  // sorted strategy places

// Node ids: places first, then transitions offset by num_places().
class CausalRelations
{
public:
    bool leq(uint32_t x, uint32_t y) const { return bit(leq_, x, y); }
    bool conflict(uint32_t x, uint32_t y) const { return bit(conflict_, x, y); }
    bool co(uint32_t x, uint32_t y) const { return !leq(x, y) && !leq(y, x) && !conflict(x, y); }
    uint32_t size() const { return n_; }

private:
    friend CausalRelations causal_analysis(const OccurrenceNet&);
    static bool bit(const std::vector<std::vector<uint64_t>>& m, uint32_t x, uint32_t y)
    {
        return (m[x][y >> 6] >> (y & 63)) & 1;
    }
    uint32_t n_ = 0;
    std::vector<std::vector<uint64_t>> leq_, conflict_;
};

// Throws CyclicFlow; also rejects self-conflict and places with two producers.
CausalRelations causal_analysis(const OccurrenceNet& net);

// Throws BoundExceeded beyond `bound` cuts.
std::vector<Cut> reachable_cuts(const OccurrenceNet& net, size_t bound = 1000000);

struct ValidationReport {
    bool justified_refusal = true;
    bool determinism = true;
    bool deadlock_free = true;
    bool winning = true;
    size_t cuts = 0;
    size_t open_cuts = 0;
    std::vector<std::string> violations;

    bool ok() const { return justified_refusal && determinism && deadlock_free && winning; }
};

// Cuts touching an open place are checked for determinism and winning only.
ValidationReport validate_strategy(const PGStrategy& s, const PTGame& game, size_t bound = 1000000);

std::string strategy_dot(const PGStrategy& s, const PTGame& game);

} // namespace pgsynth
