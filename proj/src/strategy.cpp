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

#include "pgsynth/strategy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <unordered_map>

namespace pgsynth {

namespace {

// Game node of a concrete decision set, or -1.
class NodeIndex
{
public:
    explicit NodeIndex(const BuchiGame& g) : game_(g)
    {
        if (g.approach == Approach::Canonical) {
            ctx_ = std::make_unique<SymbolicContext>(*g.game);
            for (uint32_t v = 0; v < g.num_nodes(); v++) by_key_.emplace(g.reps[v].key, v);
        } else {
            for (uint32_t v = 0; v < g.num_nodes(); v++) by_state_.emplace(g.states[v], v);
            if (g.approach == Approach::Membership) syms_ = pt_symmetries(*g.game);
        }
    }

    int64_t operator()(const DecisionSet& d) const
    {
        if (ctx_) {
            auto it = by_key_.find(canon(*ctx_, d).key);
            return it == by_key_.end() ? -1 : it->second;
        }
        if (syms_.empty()) {
            auto it = by_state_.find(d);
            return it == by_state_.end() ? -1 : it->second;
        }
        for (const auto& s : syms_) {
            auto it = by_state_.find(apply_symmetry_ds(s, d));
            if (it != by_state_.end()) return it->second;
        }
        return -1;
    }

    const SymbolicContext* ctx() const { return ctx_.get(); }

private:
    const BuchiGame& game_;
    std::unique_ptr<SymbolicContext> ctx_;
    std::unordered_map<std::string, uint32_t> by_key_;
    std::unordered_map<DecisionSet, uint32_t, DecisionSetHash> by_state_;
    std::vector<PTPermutation> syms_;
};

struct StopSearch {};

// The valid assignment from the colors of d into the canonical node of d.
ValidAssignment assignment_of(const SymbolicContext& ctx, const DecisionSet& d)
{
    std::vector<uint32_t> map;
    canonicalize(ctx, lift(ctx, d), &map);
    ValidAssignment va = lift_assignment(ctx.universe());
    for (auto& cls : va.of) {
        for (auto& z : cls) z = map[z];
    }
    return va;
}

} // namespace

StrategyTree unfold_strategy_tree(const BuchiGame& game, const SolveResult& f, const SynthesisLimits& limits)
{
    if (!f.realizable || !f.winning[game.initial]) throw Error(ErrorKind::NotWinning, "initial node is not winning");
    StrategyTree tree;
    tree.nodes.push_back({game.initial, -1, "", false, 0, -1, {}});
    for (uint32_t i = 0; i < tree.nodes.size(); i++) {
        const uint32_t g = tree.nodes[i].game_node;
        if (game.sink(g)) {
            if (!game.accepting(g)) throw Error(ErrorKind::NotWinning, "strategy reaches losing sink " + std::to_string(g));
            continue;
        }
        bool looped = false;
        for (int32_t a = tree.nodes[i].parent; a >= 0 && limits.lasso == LassoPolicy::Stop; a = tree.nodes[a].parent) {
            if (tree.nodes[a].game_node == g) {
                tree.nodes[i].back_ref = a;
                tree.lassos++;
                looped = true;
                break;
            }
        }
        if (looped) continue;
        if (tree.nodes[i].depth >= limits.max_depth) {
            if (limits.lasso == LassoPolicy::Unroll) {
                tree.nodes[i].back_ref = static_cast<int32_t>(i);
                tree.lassos++;
                continue;
            }
            throw Error(ErrorKind::LimitExceeded, "strategy tree deeper than " + std::to_string(limits.max_depth));
        }
        std::vector<const GameEdge*> next;
        if (game.player[g] == 0) {
            if (f.strategy[g] < 0) throw Error(ErrorKind::NotWinning, "no strategy choice at node " + std::to_string(g));
            next.push_back(&game.succ[g][f.strategy[g]]);
        } else {
            for (const auto& e : game.succ[g]) next.push_back(&e);
        }
        for (const auto* e : next) {
            if (!f.winning[e->target]) throw Error(ErrorKind::NotWinning, "strategy leaves the winning region");
            if (tree.nodes.size() >= limits.max_nodes)
                throw Error(ErrorKind::LimitExceeded, "strategy tree exceeds " + std::to_string(limits.max_nodes) + " nodes");
            const uint32_t c = static_cast<uint32_t>(tree.nodes.size());
            tree.nodes[i].children.push_back(c);
            tree.nodes.push_back({e->target, static_cast<int32_t>(i), e->label, e->top, tree.nodes[i].depth + 1, -1, {}});
        }
    }
    return tree;
}

SynthesisResult generate_strategy(const StrategyTree& tree, const BuchiGame& game, const SynthesisLimits& limits)
{
    const PTGame& pt = *game.game;
    const NodeIndex node_of(game);
    SynthesisResult res;
    PGStrategy& S = res.strategy;
    res.cuts.resize(tree.nodes.size());

    CutRecord root;
    for (uint32_t p = 0; p < pt.num_places(); p++) {
        if (pt.net.m0[p] > 0) root.cut.push_back(S.add_place(p));
    }
    root.decisions = initial_decision_set(pt);
    res.cuts[0].push_back(std::move(root));

    std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> existing;
    auto fire_into = [&](const Cut& cut, uint32_t t) {
        std::vector<uint32_t> preset;
        for (auto [p, w] : pt.net.transitions[t].pre) {
            (void)w;
            auto it = std::find_if(cut.begin(), cut.end(), [&](uint32_t q) { return S.place_label[q] == p; });
            if (it == cut.end()) throw Error(ErrorKind::AssignmentMismatch, "cut lacks a preset place of " + pt.net.transition_name(t));
            preset.push_back(*it);
        }
        std::sort(preset.begin(), preset.end());
        auto key = std::make_pair(t, preset);
        auto hit = existing.find(key);
        uint32_t tr;
        if (hit != existing.end()) {
            tr = hit->second;
        } else {
            if (S.num_places() + S.num_transitions() >= limits.max_nodes)
                throw Error(ErrorKind::LimitExceeded, "strategy exceeds " + std::to_string(limits.max_nodes) + " elements");
            tr = S.add_transition(t, preset);
            for (auto [p, w] : pt.net.transitions[t].post) {
                (void)w;
                S.add_output(tr, p);
            }
            existing.emplace(std::move(key), tr);
        }
        Cut next;
        for (auto q : cut) {
            if (!std::binary_search(preset.begin(), preset.end(), q)) next.push_back(q);
        }
        for (auto q : S.trans_post[tr]) next.push_back(q);
        std::sort(next.begin(), next.end());
        return next;
    };

    for (uint32_t i = 0; i < tree.nodes.size(); i++) {
        const auto& node = tree.nodes[i];
        const uint32_t g = node.game_node;
        auto& cuts = res.cuts[i];
        std::sort(cuts.begin(), cuts.end(), [](const CutRecord& a, const CutRecord& b) { return a.cut < b.cut; });
        cuts.erase(std::unique(cuts.begin(), cuts.end(), [](const CutRecord& a, const CutRecord& b) { return a.cut == b.cut; }),
                   cuts.end());
        for (const auto& c : cuts) {
            if (node_of(c.decisions) != g)
                throw Error(ErrorKind::AssignmentMismatch, "cut at tree node " + std::to_string(i) + " left its orbit");
        }
        if (node.children.empty()) {
            if (node.back_ref >= 0) {
                for (const auto& c : cuts) {
                    for (auto q : c.cut) S.open[q] = true;
                }
            }
            continue;
        }
        if (game.has_top[g]) {
            const uint32_t child = node.children.front();
            const uint32_t w = tree.nodes[child].game_node;
            if (const SymbolicContext* ctx = node_of.ctx()) {
                const DynamicRepresentation& r = game.reps[g].rep;
                std::vector<std::vector<uint32_t>> rmap;
                refine_to_singletons(*ctx, r, &rmap);
                DynamicRepresentation resolved;
                try {
                    for_each_top_choice(*ctx, r, [&](const TopChoice& c) {
                        if (c.target.key == game.reps[w].key) {
                            resolved = c.resolved;
                            throw StopSearch{};
                        }
                    });
                } catch (const StopSearch&) {
                }
                if (resolved.subclasses.empty())
                    throw Error(ErrorKind::AssignmentMismatch, "no ⊤-resolution reaches node " + std::to_string(w));
                for (const auto& c : cuts) {
                    ValidAssignment va = assignment_of(*ctx, c.decisions);
                    // the j-th color of subclass z goes to the j-th singleton refining z
                    std::vector<uint32_t> used(r.subclasses.size(), 0);
                    for (auto& cls : va.of) {
                        for (auto& z : cls) z = rmap[z][used[z]++];
                    }
                    res.cuts[child].push_back({c.cut, realize(*ctx, resolved, va)});
                }
            } else {
                for (const auto& c : cuts) {
                    bool found = false;
                    try {
                        for_each_top_successor(c.decisions, pt, [&](const DecisionSet& d) {
                            if (node_of(d) == w) {
                                res.cuts[child].push_back({c.cut, d});
                                found = true;
                                throw StopSearch{};
                            }
                        });
                    } catch (const StopSearch&) {
                    }
                    if (!found) throw Error(ErrorKind::AssignmentMismatch, "no ⊤-resolution reaches node " + std::to_string(w));
                }
            }
            continue;
        }
        if (game.player[g] == 0) {
            const uint32_t child = node.children.front();
            const uint32_t w = tree.nodes[child].game_node;
            for (const auto& c : cuts) {
                bool found = false;
                for (auto t : enabled_transitions(c.decisions, pt)) {
                    if (pt.touches_env[t]) continue;
                    DecisionSet d = fire_ds(c.decisions, t, pt);
                    if (node_of(d) != w) continue;
                    res.cuts[child].push_back({fire_into(c.cut, t), std::move(d)});
                    found = true;
                    break;
                }
                if (!found) throw Error(ErrorKind::AssignmentMismatch, "no system instance reaches node " + std::to_string(w));
            }
            continue;
        }
        std::unordered_map<uint32_t, uint32_t> child_of;
        for (auto ch : node.children) child_of.emplace(tree.nodes[ch].game_node, ch);
        for (const auto& c : cuts) {
            for (auto t : enabled_transitions(c.decisions, pt)) {
                DecisionSet d = fire_ds(c.decisions, t, pt);
                auto it = child_of.find(static_cast<uint32_t>(std::max<int64_t>(node_of(d), 0)));
                if (node_of(d) < 0 || it == child_of.end())
                    throw Error(ErrorKind::AssignmentMismatch, "environment instance leaves the game at tree node " + std::to_string(i));
                res.cuts[it->second].push_back({fire_into(c.cut, t), std::move(d)});
            }
        }
    }
    return res;
}

nlohmann::json cut_report(const StrategyTree& tree, const SynthesisResult& s, const PTGame& game)
{
    const auto& S = s.strategy;
    std::vector<std::string> name(S.num_places());
    std::vector<uint32_t> occ(game.num_places(), 0);
    for (uint32_t q = 0; q < S.num_places(); q++) name[q] = game.net.place_name(S.place_label[q]) + "#" + std::to_string(occ[S.place_label[q]]++);
    nlohmann::json out = nlohmann::json::array();
    for (uint32_t i = 0; i < tree.nodes.size(); i++) {
        const auto& n = tree.nodes[i];
        nlohmann::json j;
        j["tree_node"] = i;
        j["game_node"] = n.game_node;
        j["parent"] = n.parent;
        j["label"] = n.label;
        if (n.back_ref >= 0) j["back_ref"] = n.back_ref;
        nlohmann::json cuts = nlohmann::json::array();
        for (const auto& c : s.cuts[i]) {
            nlohmann::json names = nlohmann::json::array();
            for (auto q : c.cut) names.push_back(name[q]);
            cuts.push_back(names);
        }
        j["cuts"] = cuts;
        out.push_back(j);
    }
    return out;
}

} // namespace pgsynth
