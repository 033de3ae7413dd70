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

#include "pgsynth/occurrence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pgsynth/error.hpp"

namespace pgsynth {

uint32_t OccurrenceNet::add_place(uint32_t label, int32_t producer)
{
    place_label.push_back(label);
    place_pre.push_back(producer);
    place_post.emplace_back();
    open.push_back(false);
    return num_places() - 1;
}

uint32_t OccurrenceNet::add_transition(uint32_t label, std::vector<uint32_t> preset)
{
    uint32_t t = num_transitions();
    trans_label.push_back(label);
    std::sort(preset.begin(), preset.end());
    for (auto p : preset) place_post[p].push_back(t);
    trans_pre.push_back(std::move(preset));
    trans_post.emplace_back();
    return t;
}

uint32_t OccurrenceNet::add_output(uint32_t transition, uint32_t label)
{
    uint32_t p = add_place(label, static_cast<int32_t>(transition));
    trans_post[transition].push_back(p);
    return p;
}

std::vector<uint32_t> OccurrenceNet::initial() const
{
    std::vector<uint32_t> out;
    for (uint32_t p = 0; p < num_places(); p++) {
        if (place_pre[p] < 0) out.push_back(p);
    }
    return out;
}

CausalRelations causal_analysis(const OccurrenceNet& net)
{
    const uint32_t np = net.num_places();
    const uint32_t n = np + net.num_transitions();
    std::vector<std::vector<uint32_t>> succ(n);
    std::vector<uint32_t> indeg(n, 0);
    for (uint32_t t = 0; t < net.num_transitions(); t++) {
        for (auto p : net.trans_pre[t]) succ[p].push_back(np + t);
        for (auto p : net.trans_post[t]) succ[np + t].push_back(p);
    }
    for (uint32_t x = 0; x < n; x++) {
        for (auto y : succ[x]) indeg[y]++;
    }
    std::vector<uint32_t> order;
    for (uint32_t x = 0; x < n; x++) {
        if (indeg[x] == 0) order.push_back(x);
    }
    for (size_t i = 0; i < order.size(); i++) {
        for (auto y : succ[order[i]]) {
            if (--indeg[y] == 0) order.push_back(y);
        }
    }
    if (order.size() != n) throw Error(ErrorKind::CyclicFlow, "flow relation has a cycle");

    CausalRelations r;
    r.n_ = n;
    const size_t words = (n + 63) / 64;
    r.leq_.assign(n, std::vector<uint64_t>(words, 0));
    r.conflict_.assign(n, std::vector<uint64_t>(words, 0));
    for (size_t i = n; i-- > 0;) {
        uint32_t x = order[i];
        r.leq_[x][x >> 6] |= uint64_t(1) << (x & 63);
        for (auto y : succ[x]) {
            for (size_t w = 0; w < words; w++) r.leq_[x][w] |= r.leq_[y][w];
        }
    }
    for (uint32_t p = 0; p < np; p++) {
        const auto& post = net.place_post[p];
        for (size_t a = 0; a < post.size(); a++) {
            for (size_t b = 0; b < post.size(); b++) {
                if (a == b) continue;
                const auto& up1 = r.leq_[np + post[a]];
                const auto& up2 = r.leq_[np + post[b]];
                for (uint32_t x = 0; x < n; x++) {
                    if (!((up1[x >> 6] >> (x & 63)) & 1)) continue;
                    for (size_t w = 0; w < words; w++) r.conflict_[x][w] |= up2[w];
                }
            }
        }
    }
    for (uint32_t x = 0; x < n; x++) {
        if (r.conflict(x, x)) throw Error(ErrorKind::ValidationError, "node in self-conflict");
    }
    return r;
}

std::vector<Cut> reachable_cuts(const OccurrenceNet& net, size_t bound)
{
    std::set<Cut> seen;
    std::vector<Cut> out;
    Cut m0 = net.initial();
    seen.insert(m0);
    out.push_back(m0);
    for (size_t i = 0; i < out.size(); i++) {
        const Cut cut = out[i];
        std::set<uint32_t> candidates;
        for (auto p : cut) candidates.insert(net.place_post[p].begin(), net.place_post[p].end());
        for (auto t : candidates) {
            const auto& pre = net.trans_pre[t];
            if (!std::includes(cut.begin(), cut.end(), pre.begin(), pre.end())) continue;
            Cut next;
            std::set_difference(cut.begin(), cut.end(), pre.begin(), pre.end(), std::back_inserter(next));
            next.insert(next.end(), net.trans_post[t].begin(), net.trans_post[t].end());
            std::sort(next.begin(), next.end());
            if (seen.insert(next).second) {
                if (out.size() >= bound) throw Error(ErrorKind::BoundExceeded, "more than " + std::to_string(bound) + " cuts");
                out.push_back(std::move(next));
            }
        }
    }
    return out;
}

ValidationReport validate_strategy(const PGStrategy& s, const PTGame& game, size_t bound)
{
    ValidationReport rep;
    const auto& pt = game.net;
    for (uint32_t p = 0; p < s.num_places(); p++) {
        if (game.is_bad(s.place_label[p])) {
            rep.winning = false;
            rep.violations.push_back("bad place " + pt.place_name(s.place_label[p]));
        }
    }
    // labels occurring in a place's postset, for the uniform-refusal test
    std::vector<std::set<uint32_t>> post_labels(s.num_places());
    for (uint32_t p = 0; p < s.num_places(); p++) {
        for (auto t : s.place_post[p]) post_labels[p].insert(s.trans_label[t]);
    }
    for (const auto& cut : reachable_cuts(s, bound)) {
        rep.cuts++;
        bool open = false;
        std::map<uint32_t, uint32_t> by_label;  // P/T place -> strategy place
        for (auto p : cut) {
            open = open || s.open[p];
            if (!by_label.emplace(s.place_label[p], p).second) {
                rep.determinism = false;
                rep.violations.push_back("cut labels a place twice");
            }
        }
        std::set<uint32_t> s_enabled;
        std::set<uint32_t> s_labels;
        for (auto p : cut) {
            for (auto t : s.place_post[p]) {
                const auto& pre = s.trans_pre[t];
                if (std::includes(cut.begin(), cut.end(), pre.begin(), pre.end())) {
                    s_enabled.insert(t);
                    s_labels.insert(s.trans_label[t]);
                }
            }
        }
        for (auto p : cut) {
            if (!game.is_sys(s.place_label[p])) continue;
            int n = 0;
            for (auto t : s.place_post[p]) n += s_enabled.count(t) ? 1 : 0;
            if (n > 1) {
                rep.determinism = false;
                rep.violations.push_back("system place " + pt.place_name(s.place_label[p]) + " allows two transitions");
            }
        }
        if (open) {
            rep.open_cuts++;
            continue;
        }
        std::set<uint32_t> g_enabled;
        for (const auto& [lp, sp] : by_label) {
            for (auto t : pt.place_post[lp]) {
                bool en = true;
                for (auto [q, w] : pt.transitions[t].pre) en = en && w == 1 && by_label.count(q);
                if (en) g_enabled.insert(t);
            }
        }
        if (!g_enabled.empty() && s_enabled.empty()) {
            rep.deadlock_free = false;
            rep.violations.push_back("deadlock at a cut enabling " + pt.transition_name(*g_enabled.begin()));
        }
        for (auto t : g_enabled) {
            if (s_labels.count(t)) continue;
            bool justified = false;
            for (auto [q, w] : pt.transitions[t].pre) {
                uint32_t sp = by_label.at(q);
                if (game.is_sys(q) && !post_labels[sp].count(t)) justified = true;
            }
            if (!justified) {
                rep.justified_refusal = false;
                rep.violations.push_back("unjustified refusal of " + pt.transition_name(t));
            }
        }
    }
    return rep;
}

std::string strategy_dot(const PGStrategy& s, const PTGame& game)
{
    const auto& pt = game.net;
    std::map<uint32_t, uint32_t> place_occ, trans_occ;
    std::string out = "digraph strategy {\n";
    for (uint32_t p = 0; p < s.num_places(); p++) {
        uint32_t l = s.place_label[p];
        std::string name = pt.place_name(l) + "#" + std::to_string(place_occ[l]++);
        out += "  p" + std::to_string(p) + " [shape=circle,label=\"" + name + "\"";
        if (game.is_bad(l)) out += ",peripheries=2";
        out += game.is_env(l) ? ",style=filled,fillcolor=white" : ",style=filled,fillcolor=gray";
        out += "];\n";
    }
    for (uint32_t t = 0; t < s.num_transitions(); t++) {
        uint32_t l = s.trans_label[t];
        std::string name = pt.transition_name(l) + "#" + std::to_string(trans_occ[l]++);
        out += "  t" + std::to_string(t) + " [shape=box,label=\"" + name + "\"];\n";
        for (auto p : s.trans_pre[t]) out += "  p" + std::to_string(p) + " -> t" + std::to_string(t) + ";\n";
        for (auto p : s.trans_post[t]) out += "  t" + std::to_string(t) + " -> p" + std::to_string(p) + ";\n";
    }
    return out + "}\n";
}

} // namespace pgsynth
