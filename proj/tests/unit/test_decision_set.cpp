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
#include "pgsynth/decision_set.hpp"
#include "pgsynth/error.hpp"

using namespace pgsynth;
using pgsynth::testing::cs_game;

namespace {

uint32_t place(const PTGame& g, const std::string& name)
{
    for (uint32_t p = 0; p < g.num_places(); p++) {
        if (g.net.place_name(p) == name) return p;
    }
    FAIL("no place " << name);
    return 0;
}

uint32_t transition(const PTGame& g, const std::string& name)
{
    for (uint32_t t = 0; t < g.num_transitions(); t++) {
        if (g.net.transition_name(t) == name) return t;
    }
    FAIL("no transition " << name);
    return 0;
}

// d with every ⊤ of a system place replaced by the named transitions.
DecisionSet resolve(const PTGame& g, const DecisionSet& d, const std::vector<std::string>& commit)
{
    DecisionSetBuilder b;
    for (auto e : d) {
        if (!e.top) {
            b.add(e);
            continue;
        }
        std::vector<uint32_t> c;
        for (const auto& n : commit) {
            const uint32_t t = transition(g, n);
            if (std::find(g.net.place_post[e.place].begin(), g.net.place_post[e.place].end(), t) != g.net.place_post[e.place].end())
                c.push_back(t);
        }
        b.add(e.place, c);
    }
    return b.build();
}

ErrorKind error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ModelAnomaly;
}

} // namespace

TEST_CASE("initial decision sets commit environment places to their whole postset")
{
    const PTGame g = expand_game(cs_game(1));
    const DecisionSet d0 = initial_decision_set(g);
    CHECK(d0.has_top());
    const auto env = d0.find(place(g, "Env.dot"));
    REQUIRE(env);
    CHECK_FALSE(env->top);
    CHECK(env->size() == 1);
    CHECK(env->contains(transition(g, "d.c1")));
    CHECK(d0.find(place(g, "Sys.c1"))->top);
    CHECK_FALSE(d0.find(place(g, "R.c1")));
}

TEST_CASE("⊤-resolution enumerates every subset of every postset")
{
    // Sys.c1 has postset {inf.c1, a.(c1,c1)}: 2^2 choices
    CHECK(top_successors(initial_decision_set(expand_game(cs_game(1))), expand_game(cs_game(1))).size() == 4);
    // each Sys.ci has postset {inf.c1, inf.c2, a.(ci,c1), a.(ci,c2)}: 2^4 choices for each of two places
    const PTGame g2 = expand_game(cs_game(2));
    CHECK(for_each_top_successor(initial_decision_set(g2), g2, [](const DecisionSet& d) { CHECK_FALSE(d.has_top()); }) == 256);
    const PTGame g1 = expand_game(cs_game(1));
    const DecisionSet no_top = resolve(g1, initial_decision_set(g1), {});
    CHECK(error_of([&] { top_successors(no_top, g1); }) == ErrorKind::NoTop);
}

TEST_CASE("firing follows commitments")
{
    const PTGame g = expand_game(cs_game(1));
    const DecisionSet d0 = initial_decision_set(g);
    CHECK(error_of([&] { fire_ds(d0, transition(g, "d.c1"), g); }) == ErrorKind::TopPresent);
    const DecisionSet d1 = resolve(g, d0, {"inf.c1"});
    CHECK(enabled_transitions(d1, g) == std::vector<uint32_t>{transition(g, "d.c1")});
    CHECK(error_of([&] { fire_ds(d1, transition(g, "a.(c1,c1)"), g); }) == ErrorKind::NotEnabledInDS);
    const DecisionSet d2 = fire_ds(d1, transition(g, "d.c1"), g);
    CHECK(d2.find(place(g, "I.c1")));
    CHECK_FALSE(d2.find(place(g, "Env.dot")));
    CHECK(d2.find(place(g, "Sys.c1"))->contains(transition(g, "inf.c1")));
    const DecisionSet d3 = fire_ds(d2, transition(g, "inf.c1"), g);
    CHECK(d3.find(place(g, "Sys.c1"))->top);
    CHECK(d3.find(place(g, "R.c1"))->contains(transition(g, "h.c1")));
}

TEST_CASE("state flags")
{
    const PTGame g = expand_game(cs_game(1));
    const DecisionSet d0 = initial_decision_set(g);
    {
        const StateFlags f = properties_ds(d0, g);
        CHECK_FALSE(f.sink());
        CHECK_FALSE(f.env_dependent);
    }
    {
        // the system refuses everything: the environment moves alone, then the system blocks
        const DecisionSet d = resolve(g, d0, {});
        const StateFlags f = properties_ds(d, g);
        CHECK(f.env_dependent);
        CHECK(f.accepting());
        const StateFlags after = properties_ds(fire_ds(d, transition(g, "d.c1"), g), g);
        CHECK(after.deadlock);
        CHECK_FALSE(after.accepting());
    }
    {
        const DecisionSet d = fire_ds(resolve(g, d0, {"inf.c1", "a.(c1,c1)"}), transition(g, "d.c1"), g);
        CHECK(properties_ds(d, g).nondet);
    }
    {
        DecisionSet d = fire_ds(resolve(g, d0, {"a.(c1,c1)"}), transition(g, "a.(c1,c1)"), g);
        d = fire_ds(resolve(g, d, {"b.(c1,c1)"}), transition(g, "b.(c1,c1)"), g);
        const StateFlags f = properties_ds(d, g);
        CHECK(f.bad);
        CHECK(f.sink());
        CHECK_FALSE(f.accepting());
    }
    {
        const PTGame idle = expand_game(pgsynth::testing::model_game("idle.pg"));
        const StateFlags f = properties_ds(initial_decision_set(idle), idle);
        CHECK(f.terminating);
        CHECK(f.accepting());
    }
}

TEST_CASE("decision sets reject unsafe and multi-environment markings")
{
    const auto two_env = std::make_shared<const HLGame>(
        parse_model("class C = a, b ;\nplace E kind=env type=C ;\ninit E = (a) (b) ;\n"));
    CHECK(error_of([&] { initial_decision_set(expand_game(two_env)); }) == ErrorKind::MultipleEnvironmentTokens);
    const auto doubled = std::make_shared<const HLGame>(
        parse_model("class D = d ;\nplace E kind=env type=D ;\nplace S kind=sys type=D ;\ninit E = (d) ;\ninit S = (d) (d) ;\n"));
    CHECK(error_of([&] { initial_decision_set(expand_game(doubled)); }) == ErrorKind::UnsafeNet);
}

TEST_CASE("symmetries act on decision sets")
{
    const PTGame g = expand_game(cs_game(2));
    const auto syms = pt_symmetries(g);
    REQUIRE(syms.size() == 2);
    const DecisionSet d0 = initial_decision_set(g);
    CHECK(apply_symmetry_ds(syms[1], d0) == d0);
    const DecisionSet d = resolve(g, d0, {"inf.c1", "a.(c1,c2)"});
    const DecisionSet sd = apply_symmetry_ds(syms[1], d);
    CHECK_FALSE(sd == d);
    CHECK(apply_symmetry_ds(syms[1], sd) == d);
    CHECK(sd.find(place(g, "Sys.c1"))->contains(transition(g, "inf.c2")));
    CHECK(sd.find(place(g, "Sys.c2"))->contains(transition(g, "a.(c2,c1)")));
    CHECK(properties_ds(sd, g) == properties_ds(d, g));
}
