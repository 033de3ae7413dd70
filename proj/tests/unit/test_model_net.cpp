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

#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "pgsynth/error.hpp"
#include "pgsynth/model.hpp"

using namespace pgsynth;
using pgsynth::testing::cs_game;

namespace {

ErrorKind kind_of(const std::string& text)
{
    try {
        parse_model(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("model was accepted: " << text);
    return ErrorKind::ModelAnomaly;
}

} // namespace

TEST_CASE("the Client/Server family validates and has n! symmetries")
{
    uint64_t fact = 1;
    for (unsigned n = 1; n <= 6; n++) {
        fact *= n;
        const auto g = cs_game(n);
        CHECK_NOTHROW(validate_game(*g));
        CHECK(symmetry_count(g->net.universe) == fact);
    }
}

TEST_CASE("models round-trip through serialization")
{
    for (unsigned n = 1; n <= 3; n++) {
        const HLGame g = parse_model(generate_cs(n));
        CHECK(parse_model(serialize_model(g)) == g);
    }
    const HLGame cm = *pgsynth::testing::model_game("cm_static.pg");
    CHECK(parse_model(serialize_model(cm)) == cm);
}

TEST_CASE("parse errors carry their location")
{
    const std::string text = "class C = a, b ;\nplace P kind=sys type=C ;\ninit P = (a) (zz) ;\n";
    try {
        parse_model(text);
        FAIL("unknown color accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(kind_of("class C = a ;\nplace P kind=whatever type=C ;\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("class C = a ;\nplace P kind=sys type=C\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("place P kind=sys type=C ;\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("class C = a ;\nplace P kind=sys type=C ;\ntrans t vars x:C ;\narc P -> t expr (y) ;\n") ==
          ErrorKind::SyntaxError);
}

TEST_CASE("invalid nets are rejected during validation")
{
    // the initial marking must be symmetric
    CHECK(kind_of("class C = a, b ;\nplace P kind=sys type=C ;\ninit P = (a) ;\n") == ErrorKind::ValidationError);
    // an arc tuple must match the place type; reported with its line
    CHECK(kind_of("class C = a ;\nclass D = d ;\nplace P kind=sys type=C ;\ntrans t vars x:D ;\narc P -> t expr (x) ;\n") ==
          ErrorKind::SyntaxError);
    // static subclasses split the marking legitimately
    CHECK_NOTHROW(parse_model("class C = a | b ;\nplace P kind=sys type=C ;\ninit P = (a) ;\n"));
}

TEST_CASE("expansion instantiates every place and guarded mode")
{
    const auto g = cs_game(2);
    const PTGame pt = expand_game(g);
    // Env, I, R, Sys, H per computer, A and B per pair
    CHECK(pt.num_places() == 1 + 4 * 2 + 2 * 4);
    // d, inf, h per computer, a and b per pair
    CHECK(pt.num_transitions() == 3 * 2 + 2 * 4);
    const uint32_t sys = *g->net.find_place("Sys");
    CHECK(pt.net.place_name(pt.net.place_index(sys, {1})) == "Sys.c2");
    const uint32_t a = *g->net.find_transition("a");
    const auto t = pt.net.transition_index(a, {0, 1});
    REQUIRE(t);
    CHECK(pt.net.transition_name(*t) == "a.(c1,c2)");
    CHECK(pt.net.place_post[pt.net.place_index(sys, {0})].size() == 4);

    const auto cm = pgsynth::testing::model_game("cm_2m1o.pg");
    const uint32_t work = *cm->net.find_transition("work");
    CHECK_FALSE(expand_game(cm).net.transition_index(work, {0, 1, 1}));
    CHECK(expand_game(cm).net.transition_index(work, {0, 1, 0}));
}

TEST_CASE("the high-level firing rule")
{
    const auto g = cs_game(3);
    const HLNet& net = g->net;
    const uint32_t d = *net.find_transition("d"), inf = *net.find_transition("inf"), a = *net.find_transition("a");
    CHECK(enabled_hl(net, g->m0, d, {0}));
    CHECK_FALSE(enabled_hl(net, g->m0, inf, {0}));
    CHECK(enabled_hl(net, g->m0, a, {2, 1}));
    const HLMarking m1 = fire_hl(net, g->m0, d, {1});
    CHECK(enabled_hl(net, m1, inf, {1}));
    CHECK_FALSE(enabled_hl(net, m1, inf, {0}));
    const HLMarking m2 = fire_hl(net, m1, inf, {1});
    CHECK(m2.tokens[*net.find_place("Sys")] == g->m0.tokens[*net.find_place("Sys")]);
    CHECK(m2.tokens[*net.find_place("R")] == Multiset{{{1}, 1}});
    try {
        fire_hl(net, g->m0, inf, {0});
        FAIL("fired a disabled mode");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotEnabled);
    }
}

TEST_CASE("firing commutes with symmetries")
{
    const auto g = cs_game(3);
    const HLNet& net = g->net;
    const auto syms = enumerate_symmetries(net.universe);
    HLMarking m = fire_hl(net, g->m0, *net.find_transition("d"), {0});
    m = fire_hl(net, m, *net.find_transition("a"), {1, 0});
    for (const auto& s : syms) {
        const HLMarking sm = apply(s, net, m);
        for (uint32_t t = 0; t < net.transitions.size(); t++) {
            for (const auto& v : modes(net.universe, net.transitions[t])) {
                const Mode sv = apply_mode(s, net.transitions[t], v);
                REQUIRE(enabled_hl(net, m, t, v) == enabled_hl(net, sm, t, sv));
                if (enabled_hl(net, m, t, v)) CHECK(apply(s, net, fire_hl(net, m, t, v)) == fire_hl(net, sm, t, sv));
            }
        }
    }
}

TEST_CASE("symmetries act on the expanded net as permutations")
{
    const auto g = cs_game(3);
    const PTGame pt = expand_game(g);
    for (const auto& s : pt_symmetries(pt)) {
        std::vector<bool> hit(pt.num_places(), false);
        for (auto p : s.place) hit[p] = true;
        CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        for (uint32_t t = 0; t < pt.num_transitions(); t++) {
            std::vector<std::pair<uint32_t, uint32_t>> pre;
            for (auto [p, w] : pt.net.transitions[t].pre) pre.push_back({s.place[p], w});
            std::sort(pre.begin(), pre.end());
            CHECK(pre == pt.net.transitions[s.transition[t]].pre);
        }
    }
}
