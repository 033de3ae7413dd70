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

#include <set>

#include "../support/checks.hpp"
#include "fixtures.hpp"
#include "pgsynth/buchi.hpp"
#include "pgsynth/error.hpp"

using namespace pgsynth;
using pgsynth::testing::cs_game;
using pgsynth::testing::model_game;

namespace {

std::vector<DecisionSet> orbit(const DecisionSet& d, const PTGame& g)
{
    std::vector<DecisionSet> out;
    for (const auto& s : pt_symmetries(g)) out.push_back(apply_symmetry_ds(s, d));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DecisionSet commit(const PTGame& g, const DecisionSet& d, const std::map<std::string, std::vector<std::string>>& c)
{
    DecisionSetBuilder b;
    for (auto e : d) {
        auto it = c.find(g.net.place_name(e.place));
        if (it == c.end()) {
            b.add(e);
            continue;
        }
        std::vector<uint32_t> ts;
        for (const auto& name : it->second) {
            for (uint32_t t = 0; t < g.num_transitions(); t++) {
                if (g.net.transition_name(t) == name) ts.push_back(t);
            }
        }
        b.add(e.place, ts);
    }
    return b.build();
}

uint32_t comp_subclasses(const DynamicRepresentation& r)
{
    return static_cast<uint32_t>(std::count_if(r.subclasses.begin(), r.subclasses.end(),
                                               [](const DynamicSubclass& z) { return z.cls == 0; }));
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

TEST_CASE("every canonical node realizes exactly one orbit")
{
    for (const char* name : {"cs2", "cm_static.pg"}) {
        INFO(name);
        const auto g = std::string(name) == "cs2" ? cs_game(2) : model_game(name);
        const BuildResult b = build_game(g, Approach::Canonical);
        SymbolicContext ctx(*b.game.game);
        for (uint32_t v = 0; v < b.game.num_nodes(); v++) {
            auto m = checks::members(ctx, b.game.reps[v].rep);
            std::sort(m.begin(), m.end());
            REQUIRE_FALSE(m.empty());
            REQUIRE(m == orbit(m.front(), *b.game.game));
        }
    }
}

TEST_CASE("lifting and realizing with the lifted assignment is the identity")
{
    const BuildResult b = build_game(cs_game(2), Approach::Explicit);
    SymbolicContext ctx(*b.game.game);
    const ValidAssignment va = lift_assignment(ctx.universe());
    for (const auto& d : b.game.states) REQUIRE(realize(ctx, lift(ctx, d), va) == d);
}

TEST_CASE("the initial state merges into one subclass per class")
{
    const PTGame g = expand_game(cs_game(3));
    SymbolicContext ctx(g);
    const auto c = canon(ctx, initial_decision_set(g));
    REQUIRE(c.rep.subclasses.size() == 2);
    CHECK(c.rep.subclasses[0].card == 3);
    CHECK(to_string(ctx, c.rep) == "C = {|Z1^1|=3, |Z2^1|=1}, D = {(Env.Z2^1, {d.Z1^1}), (Sys.Z1^1, ⊤)}");
    CHECK(encode(c.rep, ctx.universe()).front() == 0x50470001u);
    CHECK(c.key.size() == 4 * encode(c.rep, ctx.universe()).size());
}

TEST_CASE("merging keeps subclasses apart when the merge would add realizations")
{
    const PTGame g = expand_game(cs_game(2));
    SymbolicContext ctx(g);
    const DecisionSet d0 = initial_decision_set(g);
    // each computer connects to the other: invariant under the swap, yet no single subclass expresses it
    const DecisionSet crossed = commit(g, d0, {{"Sys.c1", {"a.(c1,c2)"}}, {"Sys.c2", {"a.(c2,c1)"}}});
    const auto c1 = canon(ctx, crossed);
    CHECK(comp_subclasses(c1.rep) == 2);
    CHECK(checks::members(ctx, c1.rep) == std::vector<DecisionSet>{crossed});
    // same for each computer connecting to itself
    const DecisionSet diagonal = commit(g, d0, {{"Sys.c1", {"a.(c1,c1)"}}, {"Sys.c2", {"a.(c2,c2)"}}});
    CHECK(comp_subclasses(canon(ctx, diagonal).rep) == 2);
    // both computers informing c1 only is not symmetric at all
    const DecisionSet inform = commit(g, d0, {{"Sys.c1", {"inf.c1"}}, {"Sys.c2", {"inf.c1"}}});
    CHECK(checks::members(ctx, canon(ctx, inform).rep).size() == 2);
    // full commitments merge
    const DecisionSet all = commit(g, d0, {{"Sys.c1", {"inf.c1", "inf.c2", "a.(c1,c1)", "a.(c1,c2)"}},
                                           {"Sys.c2", {"inf.c1", "inf.c2", "a.(c2,c1)", "a.(c2,c2)"}}});
    CHECK(comp_subclasses(canon(ctx, all).rep) == 1);
}

TEST_CASE("ordering rejects non-minimal representations")
{
    const PTGame g = expand_game(cs_game(2));
    SymbolicContext ctx(g);
    const DynamicRepresentation lifted = lift(ctx, initial_decision_set(g));
    CHECK(mergeable(ctx, lifted, 0, 1));
    CHECK(error_of([&] { order_representation(ctx, lifted); }) == ErrorKind::NotMinimal);
    const DynamicRepresentation merged = merge_minimal(ctx, lifted);
    CHECK_NOTHROW(order_representation(ctx, merged));
}

TEST_CASE("contexts and assignments are validated")
{
    const PTGame g = expand_game(cs_game(2));
    SymbolicContext ctx(g);
    const DynamicRepresentation lifted = lift(ctx, initial_decision_set(g));
    CHECK(error_of([&] { context(lifted, 99); }) == ErrorKind::UnknownSubclass);
    const auto ctx0 = context(lifted, 0);
    REQUIRE(ctx0.size() == 2);  // Env's commitment d.Z and Sys.Z
    for (const auto& w : ctx0) CHECK(std::count(w.begin(), w.end(), kNabla) == 1);
    CHECK(context(lifted, 1) != ctx0);

    const auto merged = canonicalize(ctx, lifted).rep;
    CHECK(assignments(merged, ctx.universe()).size() == 1);
    CHECK(assignments(lifted, ctx.universe()).size() == 2);
    ValidAssignment bad = lift_assignment(ctx.universe());
    CHECK(error_of([&] { realize(ctx, merged, bad); }) == ErrorKind::InvalidAssignment);
    bad.of.pop_back();
    CHECK(error_of([&] { realize(ctx, lifted, bad); }) == ErrorKind::InvalidAssignment);
}

TEST_CASE("symbolic operations agree with their concrete counterparts on small models")
{
    for (const char* name : {"cs1", "cm_2m1o.pg", "cm_static.pg"}) {
        INFO(name);
        const auto g = std::string(name) == "cs1" ? cs_game(1) : model_game(name);
        const BuildResult cn = build_game(g, Approach::Canonical);
        const BuildResult ex = build_game(g, Approach::Explicit);
        const auto succ = checks::successor_correspondence(cn.game);
        CHECK(succ.violations == 0);
        CHECK(succ.first == "");
        const auto flags = checks::flag_agreement(cn.game);
        CHECK(flags.violations == 0);
        CHECK(flags.first == "");
        const auto q = quotient_check(ex.game, cn.game);
        CHECK(q.ok);
        CHECK(q.mismatch == "");
        CHECK(checks::brute_orbit_count(ex.game) == cn.game.num_nodes());
        const auto inv = checks::canon_invariants(ex.game, cn.game);
        CHECK(inv.idempotence.ok());
        CHECK(inv.symmetry_invariance.ok());
        CHECK(inv.orbit_separation.ok());
        CHECK(inv.ordering_bound.ok());
        CHECK(cn.stats.max_orderings <= cn.stats.num_symmetries);
    }
}

TEST_CASE("the canonical game does not depend on exploration order")
{
    const auto g = cs_game(2);
    const BuildResult a = build_game(g, Approach::Canonical);
    BuildLimits rev;
    rev.reverse_successors = true;
    const BuildResult b = build_game(g, Approach::Canonical, rev);
    auto keyed = [](const BuchiGame& x) {
        std::set<std::pair<std::string, std::string>> edges;
        for (uint32_t v = 0; v < x.num_nodes(); v++) {
            for (const auto& e : x.succ[v]) edges.insert({x.reps[v].key, x.reps[e.target].key});
        }
        return edges;
    };
    CHECK(a.game.num_nodes() == b.game.num_nodes());
    CHECK(keyed(a.game) == keyed(b.game));
    CHECK(a.game.reps[a.game.initial].key == b.game.reps[b.game.initial].key);
}
