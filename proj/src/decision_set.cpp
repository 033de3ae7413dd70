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

#include "pgsynth/decision_set.hpp"

#include <algorithm>

#include "pgsynth/error.hpp"

namespace pgsynth {

bool DecisionSet::Entry::contains(uint32_t t) const { return !top && std::binary_search(begin, end, t); }

bool DecisionSet::has_top() const
{
    for (auto e : *this) {
        if (e.top) return true;
    }
    return false;
}

std::optional<DecisionSet::Entry> DecisionSet::find(uint32_t place) const
{
    for (auto e : *this) {
        if (e.place == place) return e;
        if (e.place > place) break;
    }
    return std::nullopt;
}

size_t DecisionSet::hash() const
{
    uint64_t h = 1469598103934665603ull;
    for (auto w : data_) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return static_cast<size_t>(h ^ (h >> 29));
}

void DecisionSetBuilder::add_top(uint32_t place) { items_.push_back({place, true, {}}); }

void DecisionSetBuilder::add(uint32_t place, std::vector<uint32_t> commitment)
{
    std::sort(commitment.begin(), commitment.end());
    commitment.erase(std::unique(commitment.begin(), commitment.end()), commitment.end());
    items_.push_back({place, false, std::move(commitment)});
}

void DecisionSetBuilder::add(const DecisionSet::Entry& e)
{
    if (e.top) {
        add_top(e.place);
    } else {
        items_.push_back({e.place, false, std::vector<uint32_t>(e.begin, e.end)});
    }
}

DecisionSet DecisionSetBuilder::build()
{
    std::sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) { return a.place < b.place; });
    DecisionSet d;
    for (size_t i = 0; i < items_.size(); i++) {
        if (i > 0 && items_[i].place == items_[i - 1].place)
            throw Error(ErrorKind::UnsafeNet, "two tokens on one place instance");
        d.data_.push_back(items_[i].place);
        if (items_[i].top) {
            d.data_.push_back(DecisionSet::kTop);
        } else {
            d.data_.push_back(static_cast<uint32_t>(items_[i].c.size()));
            d.data_.insert(d.data_.end(), items_[i].c.begin(), items_[i].c.end());
        }
    }
    items_.clear();
    return d;
}

std::string to_string(const StateFlags& f)
{
    std::string s;
    auto add = [&](bool b, const char* n) {
        if (!b) return;
        if (!s.empty()) s += ",";
        s += n;
    };
    add(f.env_dependent, "env");
    add(f.bad, "bad");
    add(f.deadlock, "deadlock");
    add(f.terminating, "terminating");
    add(f.nondet, "nondet");
    return s.empty() ? "-" : s;
}

DecisionSet initial_decision_set(const PTGame& g)
{
    DecisionSetBuilder b;
    int env = 0;
    for (uint32_t p = 0; p < g.num_places(); p++) {
        if (g.net.m0[p] == 0) continue;
        if (g.net.m0[p] > 1) throw Error(ErrorKind::UnsafeNet, "initial marking puts two tokens on " + g.net.place_name(p));
        if (g.is_env(p)) {
            if (++env > 1) throw Error(ErrorKind::MultipleEnvironmentTokens, "initial marking");
            b.add(p, g.net.place_post[p]);
        } else {
            b.add_top(p);
        }
    }
    return b.build();
}

// All preset places carry weight 1 and are present; with `commit` also committed to t.
static bool enabled_at(const DecisionSet& d, uint32_t t, const PTGame& g, bool commit)
{
    const auto& pre = g.net.transitions[t].pre;
    if (pre.empty()) return false;
    auto it = d.begin();
    auto end = d.end();
    for (auto [p, w] : pre) {
        if (w != 1) return false;
        while (it != end && (*it).place < p) ++it;
        if (!(it != end) || (*it).place != p) return false;
        if (commit && !(*it).contains(t)) return false;
    }
    return true;
}

static std::vector<uint32_t> candidates(const DecisionSet& d, const PTGame& g, bool commit)
{
    std::vector<uint32_t> out;
    for (auto e : d) {
        if (commit) {
            for (auto p = e.begin; p != e.end; ++p) out.push_back(*p);
        } else {
            out.insert(out.end(), g.net.place_post[e.place].begin(), g.net.place_post[e.place].end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<uint32_t> enabled_transitions(const DecisionSet& d, const PTGame& g)
{
    std::vector<uint32_t> out;
    for (auto t : candidates(d, g, true)) {
        if (enabled_at(d, t, g, true)) out.push_back(t);
    }
    return out;
}

std::vector<uint32_t> marking_enabled(const DecisionSet& d, const PTGame& g)
{
    std::vector<uint32_t> out;
    for (auto t : candidates(d, g, false)) {
        if (enabled_at(d, t, g, false)) out.push_back(t);
    }
    return out;
}

uint64_t for_each_top_successor(const DecisionSet& d, const PTGame& g, const std::function<void(const DecisionSet&)>& fn)
{
    std::vector<uint32_t> tops;
    for (auto e : d) {
        if (e.top) tops.push_back(e.place);
    }
    if (tops.empty()) throw Error(ErrorKind::NoTop, "decision set without ⊤");
    std::vector<uint64_t> limit;
    size_t bits = 0;
    for (auto p : tops) {
        auto n = g.net.place_post[p].size();
        bits += n;
        if (bits > kMaxTopChoiceBits)
            throw Error(ErrorKind::BoundExceeded, "more than 2^" + std::to_string(kMaxTopChoiceBits) + " ⊤-resolutions");
        limit.push_back(uint64_t(1) << n);
    }
    std::vector<uint64_t> mask(tops.size(), 0);
    uint64_t count = 0;
    while (true) {
        DecisionSetBuilder b;
        size_t k = 0;
        for (auto e : d) {
            if (!e.top) {
                b.add(e);
                continue;
            }
            std::vector<uint32_t> c;
            const auto& post = g.net.place_post[e.place];
            for (size_t i = 0; i < post.size(); i++) {
                if ((mask[k] >> i) & 1) c.push_back(post[i]);
            }
            b.add(e.place, std::move(c));
            k++;
        }
        fn(b.build());
        count++;
        size_t i = mask.size();
        while (i > 0) {
            if (++mask[i - 1] < limit[i - 1]) break;
            mask[i - 1] = 0;
            i--;
        }
        if (i == 0) break;
    }
    return count;
}

std::vector<DecisionSet> top_successors(const DecisionSet& d, const PTGame& g)
{
    std::vector<DecisionSet> out;
    for_each_top_successor(d, g, [&](const DecisionSet& s) { out.push_back(s); });
    return out;
}

DecisionSet fire_ds(const DecisionSet& d, uint32_t t, const PTGame& g)
{
    if (d.has_top()) throw Error(ErrorKind::TopPresent, "firing requires all ⊤ resolved");
    if (!enabled_at(d, t, g, true)) throw Error(ErrorKind::NotEnabledInDS, g.net.transition_name(t));
    const auto& tr = g.net.transitions[t];
    DecisionSetBuilder b;
    size_t i = 0;
    int env = 0;
    for (auto e : d) {
        while (i < tr.pre.size() && tr.pre[i].first < e.place) i++;
        if (i < tr.pre.size() && tr.pre[i].first == e.place) continue;
        if (g.is_env(e.place)) env++;
        b.add(e);
    }
    for (auto [p, w] : tr.post) {
        if (w != 1) throw Error(ErrorKind::UnsafeNet, "firing " + g.net.transition_name(t) + " puts two tokens on a place");
        if (g.is_env(p)) {
            env++;
            b.add(p, g.net.place_post[p]);
        } else {
            b.add_top(p);
        }
    }
    if (env > 1) throw Error(ErrorKind::MultipleEnvironmentTokens, "after " + g.net.transition_name(t));
    try {
        return b.build();
    } catch (const Error&) {
        throw Error(ErrorKind::UnsafeNet, "firing " + g.net.transition_name(t) + " marks a place twice");
    }
}

StateFlags properties_ds(const DecisionSet& d, const PTGame& g)
{
    StateFlags f;
    const bool top = d.has_top();
    for (auto e : d) f.bad = f.bad || g.is_bad(e.place);
    const auto in_marking = marking_enabled(d, g);
    f.terminating = in_marking.empty();
    const auto en = enabled_transitions(d, g);
    if (!top) {
        f.env_dependent = true;
        for (auto t : en) f.env_dependent = f.env_dependent && g.touches_env[t];
        f.deadlock = !in_marking.empty() && en.empty();
    }
    for (auto e : d) {
        if (!g.is_sys(e.place)) continue;
        int n = 0;
        for (auto t : en) {
            for (auto [p, w] : g.net.transitions[t].pre) n += p == e.place ? 1 : 0;
        }
        f.nondet = f.nondet || n > 1;
    }
    return f;
}

DecisionSet apply_symmetry_ds(const PTPermutation& s, const DecisionSet& d)
{
    DecisionSetBuilder b;
    for (auto e : d) {
        if (e.top) {
            b.add_top(s.place[e.place]);
        } else {
            std::vector<uint32_t> c;
            c.reserve(e.size());
            for (auto p = e.begin; p != e.end; ++p) c.push_back(s.transition[*p]);
            b.add(s.place[e.place], std::move(c));
        }
    }
    return b.build();
}

std::string to_string(const DecisionSet& d, const PTGame& g)
{
    std::string s = "{";
    bool first = true;
    for (auto e : d) {
        if (!first) s += ", ";
        first = false;
        s += "(" + g.net.place_name(e.place) + ", ";
        if (e.top) {
            s += "⊤";
        } else {
            s += "{";
            for (auto p = e.begin; p != e.end; ++p) {
                if (p != e.begin) s += ",";
                s += g.net.transition_name(*p);
            }
            s += "}";
        }
        s += ")";
    }
    return s + "}";
}

} // namespace pgsynth
