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
#include "pgsynth/pipeline.hpp"

using namespace pgsynth;
using pgsynth::testing::cs_game;
using pgsynth::testing::model_game;

namespace {

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

PipelineResult run(std::shared_ptr<const HLGame> g, Approach a = Approach::Canonical)
{
    PipelineOptions o;
    o.approach = a;
    return run_pipeline(std::move(g), o);
}

} // namespace

TEST_CASE("synthesized strategies validate")
{
    for (unsigned n : {1u, 2u}) {
        for (Approach a : {Approach::Explicit, Approach::Canonical}) {
            INFO("cs" << n << " " << to_string(a));
            const auto r = run(cs_game(n), a);
            REQUIRE(r.solve.realizable);
            REQUIRE(r.validation);
            CHECK(r.validation->ok());
            CHECK(r.validation->violations.empty());
            CHECK(r.synthesis->cuts.size() == r.tree->nodes.size());
        }
    }
    const auto cm = run(model_game("cm_2m1o.pg"));
    REQUIRE(cm.solve.realizable);
    CHECK(cm.validation->ok());
    const auto report = cut_report(*cm.tree, *cm.synthesis, *cm.build.game.game);
    CHECK(report.is_array());
    CHECK(report.size() == cm.tree->nodes.size());
}

TEST_CASE("tree shape follows the game")
{
    const auto r = run(cs_game(1));
    const auto& t = *r.tree;
    REQUIRE_FALSE(t.nodes.empty());
    CHECK(t.nodes[0].parent == -1);
    CHECK(t.nodes[0].game_node == r.build.game.initial);
    for (uint32_t i = 1; i < t.nodes.size(); i++) {
        const auto& n = t.nodes[i];
        REQUIRE(n.parent >= 0);
        CHECK(n.depth == t.nodes[n.parent].depth + 1);
        const auto& edges = r.build.game.succ[t.nodes[n.parent].game_node];
        CHECK(std::any_of(edges.begin(), edges.end(), [&](const GameEdge& e) {
            return e.target == n.game_node && e.label == n.label;
        }));
    }
}

TEST_CASE("a terminated game yields a single-node tree")
{
    const auto r = run(model_game("idle.pg"));
    REQUIRE(r.solve.realizable);
    CHECK(r.tree->nodes.size() == 1);
    CHECK(r.synthesis->strategy.num_transitions() == 0);
    CHECK(r.synthesis->strategy.num_places() == 1);
    CHECK(r.validation->ok());
}

TEST_CASE("infinite plays close into lassos with open frontiers")
{
    const auto r = run(model_game("lasso.pg"));
    REQUIRE(r.solve.realizable);
    CHECK(r.tree->lassos >= 1);
    CHECK(std::any_of(r.tree->nodes.begin(), r.tree->nodes.end(), [](const TreeNode& n) { return n.back_ref >= 0; }));
    const auto& open = r.synthesis->strategy.open;
    CHECK(std::count(open.begin(), open.end(), true) > 0);
    CHECK(r.validation->ok());
    CHECK(r.validation->open_cuts > 0);

    PipelineOptions o;
    o.synthesis.lasso = LassoPolicy::Unroll;
    o.synthesis.max_depth = 6;
    const auto u = run_pipeline(model_game("lasso.pg"), o);
    CHECK(u.tree->nodes.size() > r.tree->nodes.size());
    CHECK(u.validation->ok());

    o.synthesis.max_nodes = 3;
    CHECK(error_of([&] { run_pipeline(model_game("lasso.pg"), o); }) == ErrorKind::LimitExceeded);
}

TEST_CASE("unfolding refuses a losing game")
{
    const auto b = build_game(model_game("syscycle.pg"), Approach::Canonical);
    const SolveResult f = solve_buchi(b.game);
    REQUIRE_FALSE(f.realizable);
    CHECK(error_of([&] { unfold_strategy_tree(b.game, f); }) == ErrorKind::NotWinning);
}

TEST_CASE("validation rejects faulty strategies")
{
    const PTGame g = expand_game(cs_game(1));
    const uint32_t env = place(g, "Env.dot"), sys = place(g, "Sys.c1");

    SECTION("refusing an environment move")
    {
        PGStrategy s;
        s.add_place(env);
        s.add_place(sys);
        const auto v = validate_strategy(s, g);
        CHECK_FALSE(v.justified_refusal);
        CHECK_FALSE(v.ok());
    }
    SECTION("reaching a bad place")
    {
        PGStrategy s;
        const uint32_t e = s.add_place(env);
        const uint32_t p = s.add_place(sys);
        const uint32_t d = s.add_transition(transition(g, "d.c1"), {e});
        s.add_output(d, place(g, "I.c1"));
        const uint32_t a = s.add_transition(transition(g, "a.(c1,c1)"), {p});
        const uint32_t q = s.add_output(a, place(g, "A.(c1,c1)"));
        const uint32_t b = s.add_transition(transition(g, "b.(c1,c1)"), {q});
        s.add_output(b, place(g, "B.(c1,c1)"));
        CHECK_FALSE(validate_strategy(s, g).winning);
    }
    SECTION("two system moves competing for one token")
    {
        const PTGame sg = expand_game(model_game("syscycle.pg"));
        PGStrategy s;
        s.add_place(place(sg, "E.dot"));
        const uint32_t p = s.add_place(place(sg, "S.dot"));
        for (int i = 0; i < 2; i++) {
            const uint32_t t = s.add_transition(transition(sg, "spin.dot"), {p});
            s.add_output(t, place(sg, "S.dot"));
        }
        CHECK_FALSE(validate_strategy(s, sg).determinism);
    }
    SECTION("cyclic flow")
    {
        PGStrategy s;
        const uint32_t p = s.add_place(sys);
        const uint32_t t = s.add_transition(transition(g, "a.(c1,c1)"), {p});
        s.place_pre[p] = static_cast<int32_t>(t);
        s.trans_post[t].push_back(p);
        CHECK(error_of([&] { causal_analysis(s); }) == ErrorKind::CyclicFlow);
    }
}

TEST_CASE("strategy DOT output is deterministic")
{
    const auto r = run(cs_game(1));
    const std::string dot = strategy_dot(r.synthesis->strategy, *r.build.game.game);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot == strategy_dot(run(cs_game(1)).synthesis->strategy, *r.build.game.game));
}
