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
#include <vector>

#include "pgsynth/color.hpp"
#include "pgsynth/net.hpp"

namespace pgsynth {

// Bad places are system places.
enum class PlaceKind : uint8_t { Env, Sys, Bad };

struct HLGame {
    HLNet net;
    HLMarking m0;
    std::vector<PlaceKind> kinds;  // per high-level place

    bool operator==(const HLGame&) const = default;
};

// validate_net plus the classification size check.
void validate_game(const HLGame& g);

struct PTGame {
    std::shared_ptr<const HLGame> hl;  // owns the net `net` points into
    PTNet net;
    std::vector<PlaceKind> kinds;         // per P/T place
    std::vector<bool> touches_env;        // per P/T transition: an environment place in its preset
    uint32_t num_places() const { return static_cast<uint32_t>(net.places.size()); }
    uint32_t num_transitions() const { return static_cast<uint32_t>(net.transitions.size()); }
    bool is_env(uint32_t p) const { return kinds[p] == PlaceKind::Env; }
    bool is_bad(uint32_t p) const { return kinds[p] == PlaceKind::Bad; }
    bool is_sys(uint32_t p) const { return kinds[p] != PlaceKind::Env; }
};

PTGame expand_game(std::shared_ptr<const HLGame> g);

// One index permutation per element of enumerate_symmetries, same order.
std::vector<PTPermutation> pt_symmetries(const PTGame& g);

} // namespace pgsynth
