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

#include "pgsynth/game.hpp"

#include "pgsynth/error.hpp"

namespace pgsynth {

void validate_game(const HLGame& g)
{
    if (g.kinds.size() != g.net.places.size()) throw Error(ErrorKind::ValidationError, "place classification size");
    validate_net(g.net, g.m0);
}

PTGame expand_game(std::shared_ptr<const HLGame> g)
{
    PTGame pt;
    pt.hl = std::move(g);
    pt.net = expand(pt.hl->net, pt.hl->m0);
    for (const auto& p : pt.net.places) pt.kinds.push_back(pt.hl->kinds[p.hl]);
    for (const auto& t : pt.net.transitions) {
        bool env = false;
        for (auto [p, k] : t.pre) env = env || pt.kinds[p] == PlaceKind::Env;
        pt.touches_env.push_back(env);
    }
    return pt;
}

std::vector<PTPermutation> pt_symmetries(const PTGame& g)
{
    std::vector<PTPermutation> out;
    for (const auto& s : enumerate_symmetries(g.hl->net.universe)) out.push_back(permutation_on(g.net, s));
    return out;
}

} // namespace pgsynth
