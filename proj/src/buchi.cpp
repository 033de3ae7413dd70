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

#include "pgsynth/buchi.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace pgsynth {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Candidate {
    uint32_t target;
    std::string label;
    bool top;
};

// Appends unless the target is already present; the first label stays.
void add_edge(std::vector<GameEdge>& out, const Candidate& c)
{
    for (const auto& e : out) {
        if (e.target == c.target) return;
    }
    out.push_back({c.target, c.label, c.top});
}

// Witness cycle among non-accepting player-0 nodes, ignoring sink self-loops.
std::vector<uint32_t> system_cycle(const BuchiGame& g)
{
    const uint32_t n = g.num_nodes();
    auto inside = [&](uint32_t v) { return g.player[v] == 0 && !g.accepting(v) && !g.sink(v); };
    std::vector<uint8_t> color(n, 0);
    std::vector<uint32_t> parent(n, 0);
    for (uint32_t root = 0; root < n; root++) {
        if (color[root] || !inside(root)) continue;
        std::vector<std::pair<uint32_t, size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i == g.succ[v].size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            uint32_t w = g.succ[v][i++].target;
            if (!inside(w)) continue;
            if (color[w] == 1) {
                std::vector<uint32_t> cyc{w};
                for (uint32_t x = v; x != w; x = parent[x]) cyc.push_back(x);
                std::reverse(cyc.begin() + 1, cyc.end());
                return cyc;
            }
            if (color[w] == 0) {
                color[w] = 1;
                parent[w] = v;
                stack.push_back({w, 0});
            }
        }
    }
    return {};
}

} // namespace

const char* to_string(Approach a)
{
    switch (a) {
    case Approach::Explicit: return "explicit";
    case Approach::Membership: return "membership";
    case Approach::Canonical: return "canonical";
    }
    return "?";
}

Approach parse_approach(const std::string& s)
{
    if (s == "explicit") return Approach::Explicit;
    if (s == "membership") return Approach::Membership;
    if (s == "canonical") return Approach::Canonical;
    throw Error(ErrorKind::SyntaxError, "unknown approach '" + s + "'");
}

uint64_t BuchiGame::num_edges() const
{
    uint64_t n = 0;
    for (uint32_t v = 0; v < num_nodes(); v++) {
        if (!sink(v)) n += succ[v].size();
    }
    return n;
}

uint64_t BuchiGame::num_accepting() const
{
    uint64_t n = 0;
    for (uint32_t v = 0; v < num_nodes(); v++) n += accepting(v) ? 1 : 0;
    return n;
}

nlohmann::json stats_json(const BuildStats& s)
{
    nlohmann::json j;
    j["model"] = s.model;
    j["approach"] = to_string(s.approach);
    j["num_nodes"] = s.num_nodes;
    j["num_edges"] = s.num_edges;
    j["num_accepting"] = s.num_accepting;
    j["num_symmetries"] = s.num_symmetries;
    j["comparisons"] = s.comparisons;
    j["orderings_enumerated"] = s.orderings_enumerated;
    j["max_orderings"] = s.max_orderings;
    j["build_ms"] = s.build_ms;
    j["solve_ms"] = s.solve_ms;
    j["realizable"] = s.realizable ? nlohmann::json(*s.realizable) : nlohmann::json(nullptr);
    return j;
}

std::string successor_label(const SymbolicContext& ctx, const DynamicRepresentation& r, const SymbolicSuccessor& s)
{
    std::string out = ctx.net().transitions[s.instance.transition].name;
    const size_t n = s.split_of.size();
    if (n == 0) return out;
    out += n == 1 ? "." : ".(";
    for (size_t i = 0; i < n; i++) {
        if (i) out += ",";
        out += subclass_name(r, s.split_of[i]);
        if (r.subclasses[s.split_of[i]].card > 1) out += "_" + std::to_string(s.k[i]);
    }
    return n == 1 ? out : out + ")";
}

BuildResult build_game(std::shared_ptr<const HLGame> g, Approach approach, const BuildLimits& limits)
{
    const auto t0 = Clock::now();
    auto pt = std::make_shared<const PTGame>(expand_game(g));
    BuildResult res;
    BuchiGame& G = res.game;
    BuildStats& st = res.stats;
    G.approach = approach;
    G.game = pt;
    st.approach = approach;
    st.num_symmetries = symmetry_count(g->net.universe);

    std::unique_ptr<SymbolicContext> ctx;
    if (approach == Approach::Canonical) ctx = std::make_unique<SymbolicContext>(*pt);
    std::vector<PTPermutation> syms;
    if (approach == Approach::Membership) syms = pt_symmetries(*pt);

    std::unordered_map<DecisionSet, uint32_t, DecisionSetHash> by_state;
    std::unordered_map<std::string, uint32_t> by_key;
    std::deque<uint32_t> queue;

    auto fill_stats = [&]() {
        st.num_nodes = G.num_nodes();
        st.num_edges = 0;
        st.num_accepting = 0;
        for (uint32_t v = 0; v < G.num_nodes(); v++) {
            if (v < G.flags.size() && !G.sink(v)) st.num_edges += G.succ[v].size();
            if (v < G.flags.size() && G.accepting(v)) st.num_accepting++;
        }
        if (ctx) {
            st.orderings_enumerated = ctx->stats.orderings;
            st.max_orderings = ctx->stats.max_orderings;
        }
        st.build_ms = ms_since(t0);
    };
    auto new_node = [&]() {
        uint32_t id = G.num_nodes();
        if (id >= limits.max_nodes) {
            fill_stats();
            throw BudgetExceeded("node budget of " + std::to_string(limits.max_nodes) + " exceeded", st);
        }
        G.succ.emplace_back();
        queue.push_back(id);
        return id;
    };
    auto state_node = [&](const DecisionSet& d) -> uint32_t {
        if (approach == Approach::Explicit) {
            st.comparisons++;
            auto it = by_state.find(d);
            if (it != by_state.end()) return it->second;
        } else {
            for (const auto& s : syms) {
                st.comparisons++;
                auto it = by_state.find(apply_symmetry_ds(s, d));
                if (it != by_state.end()) return it->second;
            }
        }
        uint32_t id = new_node();
        by_state.emplace(d, id);
        G.states.push_back(d);
        return id;
    };
    auto rep_node = [&](const CanonicalRepresentation& c) -> uint32_t {
        st.comparisons++;
        auto it = by_key.find(c.key);
        if (it != by_key.end()) return it->second;
        uint32_t id = new_node();
        by_key.emplace(c.key, id);
        G.reps.push_back(c);
        return id;
    };

    if (ctx) {
        G.initial = rep_node(canon(*ctx, initial_decision_set(*pt)));
    } else {
        G.initial = state_node(initial_decision_set(*pt));
    }

    while (!queue.empty()) {
        if (limits.max_seconds > 0 && ms_since(t0) > limits.max_seconds * 1000) {
            fill_stats();
            throw BudgetExceeded("time budget exceeded", st);
        }
        const uint32_t v = queue.front();
        queue.pop_front();
        StateFlags f;
        bool top;
        std::vector<Candidate> cand;
        try {
            if (ctx) {
                const DynamicRepresentation r = G.reps[v].rep;
                f = properties_rep(*ctx, r);
                top = std::any_of(r.entries.begin(), r.entries.end(), [](const DynEntry& e) { return e.top; });
                if (!f.sink()) {
                    if (top) {
                        for (const auto& c : symbolic_top_successors(*ctx, r)) cand.push_back({rep_node(c), "⊤", true});
                    } else {
                        const bool sys_only = !f.env_dependent;
                        for (const auto& s : symbolic_transition_successors(*ctx, r, sys_only))
                            cand.push_back({rep_node(s.target), successor_label(*ctx, r, s), false});
                    }
                }
            } else {
                const DecisionSet d = G.states[v];
                f = properties_ds(d, *pt);
                top = d.has_top();
                if (!f.sink()) {
                    if (top) {
                        for_each_top_successor(d, *pt, [&](const DecisionSet& s) { cand.push_back({state_node(s), "⊤", true}); });
                    } else {
                        for (auto t : enabled_transitions(d, *pt)) {
                            if (!f.env_dependent && pt->touches_env[t]) continue;
                            cand.push_back({state_node(fire_ds(d, t, *pt)), pt->net.transition_name(t), false});
                        }
                    }
                }
            }
        } catch (const BudgetExceeded&) {
            throw;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BoundExceeded) throw;
            fill_stats();
            const std::string m = e.what();
            throw BudgetExceeded(m.substr(m.find(": ") + 2), st);
        }
        if (limits.reverse_successors) std::reverse(cand.begin(), cand.end());
        if (G.flags.size() <= v) {
            G.flags.resize(v + 1);
            G.has_top.resize(v + 1);
            G.player.resize(v + 1);
        }
        G.flags[v] = f;
        G.has_top[v] = top;
        G.player[v] = (!top && f.env_dependent) ? 1 : 0;
        if (f.sink()) {
            G.succ[v].push_back({v, "", false});
            continue;
        }
        for (const auto& c : cand) add_edge(G.succ[v], c);
        if (G.succ[v].empty())
            throw Error(ErrorKind::ModelAnomaly, "system node " + std::to_string(v) + " has no successor and is no sink");
    }
    G.flags.resize(G.num_nodes());
    G.has_top.resize(G.num_nodes());
    G.player.resize(G.num_nodes());

    auto cyc = system_cycle(G);
    if (!cyc.empty()) {
        std::string w = "system can proceed forever without the environment: cycle";
        for (auto x : cyc) w += " " + std::to_string(x);
        G.warnings.push_back(w);
    }
    fill_stats();
    return res;
}

ArenaGraph arena(const BuchiGame& game)
{
    ArenaGraph a;
    a.player = game.player;
    a.accepting.resize(game.num_nodes());
    a.succ.resize(game.num_nodes());
    for (uint32_t v = 0; v < game.num_nodes(); v++) {
        a.accepting[v] = game.accepting(v);
        for (const auto& e : game.succ[v]) a.succ[v].push_back(e.target);
    }
    return a;
}

SolveResult solve_buchi(const ArenaGraph& g, uint32_t initial)
{
    const uint32_t n = static_cast<uint32_t>(g.succ.size());
    std::vector<std::vector<uint32_t>> pred(n);
    for (uint32_t v = 0; v < n; v++) {
        if (g.succ[v].empty()) throw Error(ErrorKind::NonTotalGame, "node " + std::to_string(v) + " has no successor");
        for (auto w : g.succ[v]) pred[w].push_back(v);
    }
    std::vector<bool> in(n, true);
    std::vector<int32_t> choice(n, -1);
    // attractor of `target` for player `p` inside the current subgame
    auto attractor = [&](uint8_t p, std::vector<bool> target, bool record) {
        std::vector<uint32_t> count(n, 0);
        for (uint32_t v = 0; v < n; v++) {
            if (!in[v]) continue;
            for (auto w : g.succ[v]) count[v] += in[w] ? 1 : 0;
        }
        std::deque<uint32_t> q;
        for (uint32_t v = 0; v < n; v++) {
            if (target[v]) q.push_back(v);
        }
        while (!q.empty()) {
            uint32_t w = q.front();
            q.pop_front();
            for (auto v : pred[w]) {
                if (!in[v] || target[v]) continue;
                if (g.player[v] == p) {
                    target[v] = true;
                    if (record) {
                        auto it = std::find(g.succ[v].begin(), g.succ[v].end(), w);
                        choice[v] = static_cast<int32_t>(it - g.succ[v].begin());
                    }
                    q.push_back(v);
                } else if (--count[v] == 0) {
                    target[v] = true;
                    q.push_back(v);
                }
            }
        }
        return target;
    };
    while (true) {
        std::vector<bool> f(n, false);
        for (uint32_t v = 0; v < n; v++) f[v] = in[v] && g.accepting[v];
        std::fill(choice.begin(), choice.end(), -1);
        auto reach = attractor(0, f, true);
        std::vector<bool> lose(n, false);
        bool any = false;
        for (uint32_t v = 0; v < n; v++) {
            if (in[v] && !reach[v]) {
                lose[v] = true;
                any = true;
            }
        }
        if (!any) break;
        auto gone = attractor(1, lose, false);
        for (uint32_t v = 0; v < n; v++) {
            if (gone[v]) in[v] = false;
        }
    }
    SolveResult res;
    res.winning = in;
    res.strategy.assign(n, -1);
    for (uint32_t v = 0; v < n; v++) {
        if (!in[v] || g.player[v] != 0) continue;
        if (g.accepting[v]) {
            for (size_t i = 0; i < g.succ[v].size(); i++) {
                if (in[g.succ[v][i]]) {
                    res.strategy[v] = static_cast<int32_t>(i);
                    break;
                }
            }
        } else {
            res.strategy[v] = choice[v];
        }
    }
    res.realizable = n > 0 && in[initial];
    return res;
}

SolveResult solve_buchi(const BuchiGame& game) { return solve_buchi(arena(game), game.initial); }

std::vector<bool> solve_buchi_naive(const ArenaGraph& g)
{
    const uint32_t n = static_cast<uint32_t>(g.succ.size());
    if (n > 64) throw Error(ErrorKind::LimitExceeded, "naive solver handles at most 64 nodes");
    using Set = uint64_t;
    auto cpre = [&](Set x) {
        Set out = 0;
        for (uint32_t v = 0; v < n; v++) {
            bool some = false, all = true;
            for (auto w : g.succ[v]) {
                bool b = (x >> w) & 1;
                some = some || b;
                all = all && b;
            }
            if (g.player[v] == 0 ? some : all) out |= Set(1) << v;
        }
        return out;
    };
    Set acc = 0;
    for (uint32_t v = 0; v < n; v++) {
        if (g.accepting[v]) acc |= Set(1) << v;
    }
    const Set full = n == 64 ? ~Set(0) : (Set(1) << n) - 1;
    // nu Z. mu Y. (F and cpre(Z)) or cpre(Y)
    Set z = full;
    while (true) {
        Set y = 0;
        while (true) {
            Set ny = (acc & cpre(z)) | cpre(y);
            if (ny == y) break;
            y = ny;
        }
        if (y == z) break;
        z = y;
    }
    std::vector<bool> out(n);
    for (uint32_t v = 0; v < n; v++) out[v] = (z >> v) & 1;
    return out;
}

QuotientReport quotient_check(const BuchiGame& ex, const BuchiGame& cn)
{
    if (ex.states.size() != ex.num_nodes() || cn.reps.size() != cn.num_nodes())
        throw Error(ErrorKind::ValidationError, "quotient check needs an explicit and a canonical game");
    QuotientReport rep;
    SymbolicContext ctx(*ex.game);
    std::unordered_map<std::string, uint32_t> node_of;
    for (uint32_t v = 0; v < cn.num_nodes(); v++) node_of.emplace(cn.reps[v].key, v);
    std::vector<uint32_t> image(ex.num_nodes());
    std::vector<bool> hit(cn.num_nodes(), false);
    auto fail = [&](const std::string& m) {
        rep.ok = false;
        if (rep.mismatch.empty()) rep.mismatch = m;
    };
    for (uint32_t v = 0; v < ex.num_nodes(); v++) {
        auto it = node_of.find(canon(ctx, ex.states[v]).key);
        if (it == node_of.end()) {
            fail("explicit node " + std::to_string(v) + " has no canonical counterpart: " + to_string(ex.states[v], *ex.game));
            return rep;
        }
        image[v] = it->second;
        if (!hit[it->second]) rep.orbits++;
        hit[it->second] = true;
    }
    if (rep.orbits != cn.num_nodes())
        fail(std::to_string(rep.orbits) + " orbits but " + std::to_string(cn.num_nodes()) + " canonical nodes");
    if (image[ex.initial] != cn.initial) fail("initial nodes differ");
    std::vector<bool> done(cn.num_nodes(), false);
    for (uint32_t v = 0; v < ex.num_nodes(); v++) {
        const uint32_t c = image[v];
        const std::string where = "explicit node " + std::to_string(v) + " / canonical node " + std::to_string(c);
        if (ex.player[v] != cn.player[c]) fail(where + ": players differ");
        if (!(ex.flags[v] == cn.flags[c])) fail(where + ": flags " + to_string(ex.flags[v]) + " vs " + to_string(cn.flags[c]));
        std::vector<uint32_t> a, b;
        for (const auto& e : ex.succ[v]) a.push_back(image[e.target]);
        for (const auto& e : cn.succ[c]) b.push_back(e.target);
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) fail(where + ": successor orbits differ");
        if (!done[c]) {
            done[c] = true;
            if (!cn.sink(c)) rep.quotient_edges += a.size();
        }
    }
    return rep;
}

std::string game_dot(const BuchiGame& game)
{
    std::ostringstream os;
    os << "digraph game {\n";
    for (uint32_t v = 0; v < game.num_nodes(); v++) {
        os << "  n" << v << " [label=\"" << v << "\", shape=" << (game.player[v] == 0 ? "box" : "diamond");
        if (game.accepting(v)) os << ", peripheries=2";
        if (v == game.initial) os << ", style=bold";
        os << "];\n";
    }
    for (uint32_t v = 0; v < game.num_nodes(); v++) {
        for (const auto& e : game.succ[v]) {
            os << "  n" << v << " -> n" << e.target;
            if (!e.label.empty()) os << " [label=\"" << e.label << "\"]";
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace pgsynth
