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

#include "pgsynth/canonical.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pgsynth/error.hpp"

namespace pgsynth {

namespace {

constexpr uint32_t kEncodingVersion = 0x50470001u;

std::vector<uint32_t> members_of_class(const DynamicRepresentation& r, uint32_t cls)
{
    std::vector<uint32_t> out;
    for (uint32_t z = 0; z < r.subclasses.size(); z++) {
        if (r.subclasses[z].cls == cls) out.push_back(z);
    }
    return out;
}

bool entry_less(const DynEntry& a, const DynEntry& b)
{
    if (a.place != b.place) return a.place < b.place;
    return a.tuple < b.tuple;
}

const DynEntry* find_entry(const DynamicRepresentation& r, uint32_t place, const std::vector<uint32_t>& tuple)
{
    DynEntry probe{place, tuple, false, {}};
    auto it = std::lower_bound(r.entries.begin(), r.entries.end(), probe, entry_less);
    if (it == r.entries.end() || it->place != place || it->tuple != tuple) return nullptr;
    return &*it;
}

void encode_entry(const DynEntry& e, std::vector<uint32_t>& out)
{
    out.push_back(e.place);
    out.insert(out.end(), e.tuple.begin(), e.tuple.end());
    if (e.top) {
        out.push_back(DecisionSet::kTop);
        return;
    }
    out.push_back(static_cast<uint32_t>(e.commitment.size()));
    for (const auto& i : e.commitment) {
        out.push_back(i.transition);
        out.insert(out.end(), i.args.begin(), i.args.end());
    }
}

// Renames by a bijection of subclass references; keeps entries sorted.
std::vector<DynEntry> rename(const std::vector<DynEntry>& entries, const std::vector<uint32_t>& to)
{
    std::vector<DynEntry> out = entries;
    for (auto& e : out) {
        for (auto& z : e.tuple) z = to[z];
        for (auto& i : e.commitment) {
            for (auto& z : i.args) z = to[z];
        }
        std::sort(e.commitment.begin(), e.commitment.end());
    }
    std::sort(out.begin(), out.end(), entry_less);
    return out;
}

// Entries containing z with z written as 0 and every other subclass as 1; sorted.
std::vector<std::vector<uint32_t>> signature(const DynamicRepresentation& r, uint32_t z)
{
    std::vector<std::vector<uint32_t>> sig;
    for (const auto& e : r.entries) {
        bool hit = std::find(e.tuple.begin(), e.tuple.end(), z) != e.tuple.end();
        for (const auto& i : e.commitment) {
            hit = hit || std::find(i.args.begin(), i.args.end(), z) != i.args.end();
        }
        if (!hit) continue;
        DynEntry c = e;
        for (auto& x : c.tuple) x = x == z ? 0 : 1;
        for (auto& i : c.commitment) {
            for (auto& x : i.args) x = x == z ? 0 : 1;
        }
        std::sort(c.commitment.begin(), c.commitment.end());
        c.commitment.erase(std::unique(c.commitment.begin(), c.commitment.end()), c.commitment.end());
        std::vector<uint32_t> w;
        encode_entry(c, w);
        sig.push_back(std::move(w));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

std::string to_key(const std::vector<uint32_t>& words)
{
    std::string s(words.size() * 4, '\0');
    for (size_t i = 0; i < words.size(); i++) {
        s[4 * i] = static_cast<char>(words[i] >> 24);
        s[4 * i + 1] = static_cast<char>(words[i] >> 16);
        s[4 * i + 2] = static_cast<char>(words[i] >> 8);
        s[4 * i + 3] = static_cast<char>(words[i]);
    }
    return s;
}

// Same entries modulo duplicates; false if one (place, tuple) carries two decisions.
bool substitute_into(const SymbolicContext& ctx, const DynamicRepresentation& r,
                     const std::vector<DynamicSubclass>& subclasses, const std::vector<std::vector<uint32_t>>& repl,
                     DynamicRepresentation& out)
{
    out.subclasses = subclasses;
    out.entries.clear();
    for (const auto& e : r.entries) {
        std::vector<SymInstance> commitment;
        if (!e.top) {
            for (const auto& inst : e.commitment) {
                std::vector<size_t> ctr(inst.args.size(), 0);
                while (true) {
                    SymInstance n{inst.transition, std::vector<uint32_t>(inst.args.size())};
                    for (size_t k = 0; k < inst.args.size(); k++) n.args[k] = repl[inst.args[k]][ctr[k]];
                    commitment.push_back(std::move(n));
                    size_t k = ctr.size();
                    while (k > 0) {
                        if (++ctr[k - 1] < repl[inst.args[k - 1]].size()) break;
                        ctr[k - 1] = 0;
                        k--;
                    }
                    if (k == 0) break;
                }
            }
            std::sort(commitment.begin(), commitment.end());
            commitment.erase(std::unique(commitment.begin(), commitment.end()), commitment.end());
        }
        std::vector<size_t> ctr(e.tuple.size(), 0);
        while (true) {
            DynEntry n{e.place, std::vector<uint32_t>(e.tuple.size()), e.top, {}};
            for (size_t k = 0; k < e.tuple.size(); k++) n.tuple[k] = repl[e.tuple[k]][ctr[k]];
            if (!e.top) {
                for (const auto& inst : commitment) {
                    if (ctx.possibly_in_post(out, n.place, n.tuple, inst)) n.commitment.push_back(inst);
                }
            }
            out.entries.push_back(std::move(n));
            size_t k = ctr.size();
            while (k > 0) {
                if (++ctr[k - 1] < repl[e.tuple[k - 1]].size()) break;
                ctr[k - 1] = 0;
                k--;
            }
            if (k == 0) break;
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const DynEntry& a, const DynEntry& b) {
        if (a.place != b.place) return a.place < b.place;
        if (a.tuple != b.tuple) return a.tuple < b.tuple;
        if (a.top != b.top) return a.top;
        return a.commitment < b.commitment;
    });
    std::vector<DynEntry> uniq;
    for (auto& e : out.entries) {
        if (!uniq.empty() && uniq.back().place == e.place && uniq.back().tuple == e.tuple) {
            if (!(uniq.back() == e)) return false;
            continue;
        }
        uniq.push_back(std::move(e));
    }
    out.entries = std::move(uniq);
    return true;
}

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    uint32_t find(uint32_t x)
    {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(uint32_t a, uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

CanonicalRepresentation order_unchecked(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                        std::vector<uint32_t>* map)
{
    const uint32_t n = static_cast<uint32_t>(r.subclasses.size());
    std::vector<std::vector<std::vector<uint32_t>>> sig(n);
    for (uint32_t z = 0; z < n; z++) sig[z] = signature(r, z);
    // base order: (class, stat, card, signature); ties are the blocks to permute
    std::vector<uint32_t> base(n);
    std::iota(base.begin(), base.end(), 0);
    auto key_less = [&](uint32_t a, uint32_t b) {
        const auto& x = r.subclasses[a];
        const auto& y = r.subclasses[b];
        if (x.cls != y.cls) return x.cls < y.cls;
        if (x.stat != y.stat) return x.stat < y.stat;
        if (x.card != y.card) return x.card < y.card;
        return sig[a] < sig[b];
    };
    std::stable_sort(base.begin(), base.end(), key_less);
    std::vector<std::pair<uint32_t, uint32_t>> blocks;  // [begin, end) in base
    for (uint32_t i = 0; i < n;) {
        uint32_t j = i + 1;
        while (j < n && !key_less(base[i], base[j]) && !key_less(base[j], base[i])) j++;
        if (j - i > 1) blocks.push_back({i, j});
        i = j;
    }
    std::vector<uint32_t> order = base;
    for (auto [b, e] : blocks) std::sort(order.begin() + b, order.begin() + e);

    std::vector<DynamicSubclass> subs(n);
    for (uint32_t i = 0; i < n; i++) subs[i] = r.subclasses[base[i]];

    std::vector<uint32_t> best_words;
    std::vector<DynEntry> best_entries;
    std::vector<uint32_t> best_to;
    uint64_t count = 0;
    std::vector<uint32_t> to(n);
    while (true) {
        for (uint32_t i = 0; i < n; i++) to[order[i]] = i;
        DynamicRepresentation cand{subs, rename(r.entries, to)};
        auto words = encode(cand, ctx.universe());
        count++;
        if (best_words.empty() || words < best_words) {
            best_words = std::move(words);
            best_entries = std::move(cand.entries);
            best_to = to;
        }
        size_t k = blocks.size();
        while (k > 0) {
            auto [b, e] = blocks[k - 1];
            if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
            k--;
        }
        if (k == 0) break;
    }
    ctx.stats.canonicalizations++;
    ctx.stats.orderings += count;
    ctx.stats.max_orderings = std::max(ctx.stats.max_orderings, count);
    if (map) *map = best_to;
    CanonicalRepresentation out;
    out.rep.subclasses = std::move(subs);
    out.rep.entries = std::move(best_entries);
    out.key = to_key(best_words);
    return out;
}

// Normalized symbolic modes of t: per slot a subclass and an instance number k, where k
// runs 1..m in first-use order per subclass and never exceeds the cardinality.
void for_each_symbolic_mode(const DynamicRepresentation& r, const std::vector<uint32_t>& classes,
                            const std::function<void(const std::vector<uint32_t>&, const std::vector<uint32_t>&)>& fn)
{
    const size_t n = classes.size();
    std::vector<uint32_t> of(n), k(n);
    std::vector<uint32_t> used(r.subclasses.size(), 0);
    std::vector<std::vector<uint32_t>> members(n);
    for (size_t s = 0; s < n; s++) members[s] = members_of_class(r, classes[s]);
    std::function<void(size_t)> rec = [&](size_t s) {
        if (s == n) {
            fn(of, k);
            return;
        }
        for (auto z : members[s]) {
            uint32_t lim = std::min(r.subclasses[z].card, used[z] + 1);
            for (uint32_t kk = 1; kk <= lim; kk++) {
                of[s] = z;
                k[s] = kk;
                bool fresh = kk > used[z];
                if (fresh) used[z]++;
                rec(s + 1);
                if (fresh) used[z]--;
            }
        }
    };
    rec(0);
}

// Split for a symbolic mode: instantiated singletons first, then the remainder.
struct ModeSplit {
    DynamicRepresentation shell;  // split subclasses, no entries
    std::vector<std::vector<uint32_t>> repl;
    std::vector<uint32_t> back;  // split subclass -> subclass of r
    std::vector<uint32_t> y;     // per slot, the singleton reference
};

ModeSplit split_for_mode(const DynamicRepresentation& r, const std::vector<uint32_t>& of, const std::vector<uint32_t>& k)
{
    ModeSplit s;
    auto& subs = s.shell.subclasses;
    std::vector<uint32_t> m(r.subclasses.size(), 0);
    for (size_t i = 0; i < of.size(); i++) m[of[i]] = std::max(m[of[i]], k[i]);
    std::vector<uint32_t> first(r.subclasses.size());
    s.repl.resize(r.subclasses.size());
    for (uint32_t z = 0; z < r.subclasses.size(); z++) {
        const auto& sc = r.subclasses[z];
        first[z] = static_cast<uint32_t>(subs.size());
        for (uint32_t i = 0; i < m[z]; i++) {
            s.repl[z].push_back(static_cast<uint32_t>(subs.size()));
            s.back.push_back(z);
            subs.push_back({sc.cls, sc.stat, 1});
        }
        if (sc.card > m[z]) {
            s.repl[z].push_back(static_cast<uint32_t>(subs.size()));
            s.back.push_back(z);
            subs.push_back({sc.cls, sc.stat, sc.card - m[z]});
        }
    }
    for (size_t i = 0; i < of.size(); i++) s.y.push_back(first[of[i]] + k[i] - 1);
    return s;
}

bool guard_holds_symbolic(const SymbolicContext& ctx, const ModeSplit& s, uint32_t t, const std::vector<uint32_t>& y)
{
    return ctx.net().transitions[t].guard.eval_with([&](uint32_t a, uint32_t b) { return y[a] == y[b]; },
                                                    [&](uint32_t a) { return s.shell.subclasses[y[a]].stat; });
}

struct Consumed {
    uint32_t place;
    std::vector<uint32_t> tuple;  // over the split
    bool operator==(const Consumed&) const = default;
};

// Decided on r itself: a split entry exists iff its image in r does, and with the guard
// holding, the split commitment holds t.y iff r's commitment holds t.back(y).
bool symbolic_enabled(const SymbolicContext& ctx, const DynamicRepresentation& r, const ModeSplit& s, uint32_t t,
                      const std::vector<uint32_t>& y, bool commit, std::vector<Consumed>* consumed)
{
    const auto& net = ctx.net();
    if (net.input_arcs(t).empty()) return false;
    SymInstance inst{t, {}};
    for (auto z : y) inst.args.push_back(s.back[z]);
    for (auto a : net.input_arcs(t)) {
        const auto& arc = net.arcs[a];
        for (const auto& [x, cnt] : ctx.eval(s.shell, arc.expr, y)) {
            if (cnt != 1) return false;
            std::vector<uint32_t> xo;
            for (auto z : x) xo.push_back(s.back[z]);
            const DynEntry* e = find_entry(r, arc.place, xo);
            if (!e) return false;
            if (commit && (e->top || !std::binary_search(e->commitment.begin(), e->commitment.end(), inst))) return false;
            if (consumed) consumed->push_back({arc.place, x});
        }
    }
    return true;
}

} // namespace

SymbolicContext::SymbolicContext(const PTGame& game) : game_(game)
{
    const auto& net = game.hl->net;
    post_transitions_.resize(net.places.size());
    env_transition_.assign(net.transitions.size(), false);
    input_arc_.assign(net.places.size(), std::vector<int32_t>(net.transitions.size(), -1));
    for (uint32_t i = 0; i < net.arcs.size(); i++) {
        const auto& a = net.arcs[i];
        if (!a.input) continue;
        input_arc_[a.place][a.transition] = static_cast<int32_t>(i);
        auto& v = post_transitions_[a.place];
        if (std::find(v.begin(), v.end(), a.transition) == v.end()) v.push_back(a.transition);
        if (game.hl->kinds[a.place] == PlaceKind::Env && !a.expr.tuples.empty()) env_transition_[a.transition] = true;
    }
    for (auto& v : post_transitions_) std::sort(v.begin(), v.end());
}

bool SymbolicContext::possibly_in_post(const DynamicRepresentation& r, uint32_t p, const std::vector<uint32_t>& x,
                                       const SymInstance& inst) const
{
    const auto& net = this->net();
    const int32_t ai = input_arc_[p][inst.transition];
    if (ai < 0) return false;
    const Arc* arc = &net.arcs[ai];
    // items: tuple positions, then parameter slots
    std::vector<uint32_t> items = x;
    items.insert(items.end(), inst.args.begin(), inst.args.end());
    std::vector<uint32_t> local(items.size());
    std::vector<uint32_t> seen;
    std::string& key = key_buf_;
    key.clear();
    auto put = [&](uint32_t w) { key.append(reinterpret_cast<const char*>(&w), sizeof w); };
    put(p);
    put(inst.transition);
    for (size_t i = 0; i < items.size(); i++) {
        auto it = std::find(seen.begin(), seen.end(), items[i]);
        local[i] = static_cast<uint32_t>(it - seen.begin());
        if (it == seen.end()) seen.push_back(items[i]);
        put(local[i]);
    }
    std::vector<uint32_t> cap(seen.size());
    for (size_t s = 0; s < seen.size(); s++) {
        const auto& sc = r.subclasses[seen[s]];
        uint32_t n = static_cast<uint32_t>(std::count(local.begin(), local.end(), s));
        cap[s] = std::min(sc.card, n);
        put(cap[s]);
        put(sc.stat);
    }
    auto hit = post_cache_.find(std::string_view(key));
    if (hit != post_cache_.end()) return hit->second;

    const auto& tr = net.transitions[inst.transition];
    const size_t a = x.size();
    std::vector<uint32_t> color(items.size());
    std::vector<uint32_t> used(seen.size(), 0);
    auto check = [&]() {
        auto same = [&](size_t i, size_t j) { return local[i] == local[j] && color[i] == color[j]; };
        bool support = false;
        for (const auto& tuple : arc->expr.tuples) {
            bool ok = true;
            for (size_t k = 0; ok && k < tuple.size(); k++) {
                if (tuple[k].kind == Term::Var) ok = same(k, a + tuple[k].index);
            }
            if (ok) {
                support = true;
                break;
            }
        }
        if (!support) return false;
        return tr.guard.eval_with([&](uint32_t u, uint32_t v) { return same(a + u, a + v); },
                                  [&](uint32_t u) { return r.subclasses[items[a + u]].stat; });
    };
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == items.size()) return check();
        uint32_t s = local[i];
        for (uint32_t c = 0; c <= used[s] && c < cap[s]; c++) {
            color[i] = c;
            bool fresh = c == used[s];
            if (fresh) used[s]++;
            bool found = rec(i + 1);
            if (fresh) used[s]--;
            if (found) return true;
        }
        return false;
    };
    bool result = rec(0);
    post_cache_.emplace(key, result);
    return result;
}

std::vector<SymInstance> SymbolicContext::symbolic_post(const DynamicRepresentation& r, uint32_t p,
                                                        const std::vector<uint32_t>& x) const
{
    std::vector<SymInstance> out;
    for (auto t : post_transitions_[p]) {
        const auto& classes = net().transitions[t].var_classes;
        std::vector<std::vector<uint32_t>> members;
        for (auto c : classes) members.push_back(members_of_class(r, c));
        std::vector<size_t> ctr(classes.size(), 0);
        bool empty = false;
        for (const auto& m : members) empty = empty || m.empty();
        if (empty) continue;
        while (true) {
            SymInstance inst{t, std::vector<uint32_t>(classes.size())};
            for (size_t k = 0; k < classes.size(); k++) inst.args[k] = members[k][ctr[k]];
            if (possibly_in_post(r, p, x, inst)) out.push_back(std::move(inst));
            size_t k = ctr.size();
            while (k > 0) {
                if (++ctr[k - 1] < members[k - 1].size()) break;
                ctr[k - 1] = 0;
                k--;
            }
            if (k == 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void SymbolicContext::normalize(DynamicRepresentation& r) const
{
    for (auto& e : r.entries) {
        if (e.top) {
            e.commitment.clear();
            continue;
        }
        std::sort(e.commitment.begin(), e.commitment.end());
        e.commitment.erase(std::unique(e.commitment.begin(), e.commitment.end()), e.commitment.end());
        std::vector<SymInstance> kept;
        for (auto& i : e.commitment) {
            if (possibly_in_post(r, e.place, e.tuple, i)) kept.push_back(std::move(i));
        }
        e.commitment = std::move(kept);
    }
    std::sort(r.entries.begin(), r.entries.end(), entry_less);
    for (size_t i = 1; i < r.entries.size(); i++) {
        if (r.entries[i].place == r.entries[i - 1].place && r.entries[i].tuple == r.entries[i - 1].tuple)
            throw Error(ErrorKind::UnsafeNet, "two entries on one symbolic place instance");
    }
}

std::map<std::vector<uint32_t>, uint32_t> SymbolicContext::eval(const DynamicRepresentation& r, const ArcExpr& e,
                                                                const std::vector<uint32_t>& y) const
{
    std::map<std::vector<uint32_t>, uint32_t> out;
    for (const auto& tuple : e.tuples) {
        std::vector<std::vector<uint32_t>> choices(tuple.size());
        for (size_t k = 0; k < tuple.size(); k++) {
            if (tuple[k].kind == Term::All) {
                choices[k] = members_of_class(r, tuple[k].index);
            } else {
                choices[k] = {y[tuple[k].index]};
            }
        }
        std::vector<size_t> ctr(tuple.size(), 0);
        while (true) {
            std::vector<uint32_t> x(tuple.size());
            for (size_t k = 0; k < tuple.size(); k++) x[k] = choices[k][ctr[k]];
            out[x]++;
            size_t k = ctr.size();
            while (k > 0) {
                if (++ctr[k - 1] < choices[k - 1].size()) break;
                ctr[k - 1] = 0;
                k--;
            }
            if (k == 0) break;
        }
    }
    return out;
}

ValidAssignment lift_assignment(const ColorUniverse& u)
{
    ValidAssignment va;
    uint32_t offset = 0;
    for (const auto& c : u.classes()) {
        std::vector<uint32_t> m(c.size());
        for (uint32_t x = 0; x < c.size(); x++) m[x] = offset + x;
        va.of.push_back(std::move(m));
        offset += c.size();
    }
    return va;
}

DynamicRepresentation lift(const SymbolicContext& ctx, const DecisionSet& d)
{
    const auto& u = ctx.universe();
    const auto& pt = ctx.game().net;
    DynamicRepresentation r;
    for (uint32_t i = 0; i < u.num_classes(); i++) {
        for (uint32_t x = 0; x < u.cls(i).size(); x++) r.subclasses.push_back({i, u.cls(i).stat_of(x), 1});
    }
    const auto va = lift_assignment(u);
    const auto& net = ctx.net();
    for (auto e : d) {
        const auto& pl = pt.places[e.place];
        DynEntry n{pl.hl, {}, e.top, {}};
        for (size_t k = 0; k < pl.colors.size(); k++) n.tuple.push_back(va.of[net.places[pl.hl].type[k]][pl.colors[k]]);
        for (auto p = e.begin; p != e.end; ++p) {
            const auto& tr = pt.transitions[*p];
            SymInstance inst{tr.hl, {}};
            for (size_t k = 0; k < tr.mode.size(); k++) inst.args.push_back(va.of[net.transitions[tr.hl].var_classes[k]][tr.mode[k]]);
            n.commitment.push_back(std::move(inst));
        }
        r.entries.push_back(std::move(n));
    }
    ctx.normalize(r);
    return r;
}

std::vector<std::vector<uint32_t>> context(const DynamicRepresentation& r, uint32_t z)
{
    if (z >= r.subclasses.size()) throw Error(ErrorKind::UnknownSubclass, "subclass " + std::to_string(z));
    std::vector<std::vector<uint32_t>> out;
    for (const auto& e : r.entries) {
        std::vector<uint32_t> w;
        std::vector<size_t> pos;
        w.push_back(e.place);
        for (auto x : e.tuple) {
            if (x == z) pos.push_back(w.size());
            w.push_back(x);
        }
        if (e.top) {
            w.push_back(DecisionSet::kTop);
        } else {
            w.push_back(static_cast<uint32_t>(e.commitment.size()));
            for (const auto& i : e.commitment) {
                w.push_back(i.transition);
                for (auto x : i.args) {
                    if (x == z) pos.push_back(w.size());
                    w.push_back(x);
                }
            }
        }
        for (auto p : pos) {
            auto c = w;
            c[p] = kNabla;
            out.push_back(std::move(c));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DynamicRepresentation substitute(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                 const std::vector<DynamicSubclass>& subclasses,
                                 const std::vector<std::vector<uint32_t>>& repl)
{
    DynamicRepresentation out;
    if (!substitute_into(ctx, r, subclasses, repl, out))
        throw Error(ErrorKind::UnsafeNet, "substitution maps two decisions onto one place instance");
    return out;
}

bool mergeable(const SymbolicContext& ctx, const DynamicRepresentation& r, uint32_t a, uint32_t b)
{
    const auto& sa = r.subclasses[a];
    const auto& sb = r.subclasses[b];
    if (a == b || sa.cls != sb.cls || sa.stat != sb.stat) return false;
    const uint32_t n = static_cast<uint32_t>(r.subclasses.size());
    std::vector<uint32_t> swap(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[a], swap[b]);
    if (rename(r.entries, swap) != r.entries) return false;

    std::vector<std::vector<uint32_t>> repl(n);
    for (uint32_t z = 0; z < n; z++) repl[z] = {z};
    repl[b] = {a};
    auto merged_subs = r.subclasses;
    merged_subs[a].card += merged_subs[b].card;
    merged_subs[b].card = 0;
    DynamicRepresentation merged;
    if (!substitute_into(ctx, r, merged_subs, repl, merged)) return false;
    repl[b] = {b};
    repl[a] = {a, b};
    DynamicRepresentation back;
    if (!substitute_into(ctx, merged, r.subclasses, repl, back)) return false;
    return back.entries == r.entries;
}

DynamicRepresentation merge_minimal(const SymbolicContext& ctx, const DynamicRepresentation& r, std::vector<uint32_t>* map)
{
    DynamicRepresentation cur = r;
    std::vector<uint32_t> total(r.subclasses.size());
    std::iota(total.begin(), total.end(), 0);
    while (true) {
        const uint32_t n = static_cast<uint32_t>(cur.subclasses.size());
        std::vector<std::vector<std::vector<uint32_t>>> sig(n);
        for (uint32_t z = 0; z < n; z++) sig[z] = signature(cur, z);
        UnionFind uf(n);
        bool any = false;
        for (uint32_t a = 0; a < n; a++) {
            for (uint32_t b = a + 1; b < n; b++) {
                const auto& sa = cur.subclasses[a];
                const auto& sb = cur.subclasses[b];
                if (sa.cls != sb.cls || sa.stat != sb.stat) continue;
                if (uf.find(a) == uf.find(b) || sig[a] != sig[b]) continue;
                if (mergeable(ctx, cur, a, b)) {
                    uf.unite(a, b);
                    any = true;
                }
            }
        }
        if (!any) break;
        std::vector<DynamicSubclass> subs;
        std::vector<uint32_t> to(n);
        for (uint32_t z = 0; z < n; z++) {
            if (uf.find(z) == z) {
                to[z] = static_cast<uint32_t>(subs.size());
                subs.push_back({cur.subclasses[z].cls, cur.subclasses[z].stat, 0});
            }
        }
        std::vector<std::vector<uint32_t>> repl(n);
        for (uint32_t z = 0; z < n; z++) {
            to[z] = to[uf.find(z)];
            subs[to[z]].card += cur.subclasses[z].card;
            repl[z] = {to[z]};
        }
        DynamicRepresentation next;
        if (!substitute_into(ctx, cur, subs, repl, next))
            throw Error(ErrorKind::AssignmentMismatch, "merge produced conflicting decisions");
        cur = std::move(next);
        for (auto& x : total) x = to[x];
    }
    if (map) *map = total;
    return cur;
}

std::vector<uint32_t> encode(const DynamicRepresentation& r, const ColorUniverse& u)
{
    std::vector<uint32_t> w;
    w.push_back(kEncodingVersion);
    w.push_back(u.num_classes());
    for (uint32_t i = 0; i < u.num_classes(); i++) {
        auto m = members_of_class(r, i);
        w.push_back(static_cast<uint32_t>(m.size()));
        for (auto z : m) {
            w.push_back(r.subclasses[z].stat);
            w.push_back(r.subclasses[z].card);
        }
    }
    w.push_back(static_cast<uint32_t>(r.entries.size()));
    for (const auto& e : r.entries) encode_entry(e, w);
    return w;
}

CanonicalRepresentation order_representation(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                             std::vector<uint32_t>* map)
{
    for (uint32_t a = 0; a < r.subclasses.size(); a++) {
        for (uint32_t b = a + 1; b < r.subclasses.size(); b++) {
            if (mergeable(ctx, r, a, b))
                throw Error(ErrorKind::NotMinimal, subclass_name(r, a) + " and " + subclass_name(r, b) + " can merge");
        }
    }
    return order_unchecked(ctx, r, map);
}

CanonicalRepresentation canonicalize(const SymbolicContext& ctx, const DynamicRepresentation& r, std::vector<uint32_t>* map)
{
    std::vector<uint32_t> m1, m2;
    auto merged = merge_minimal(ctx, r, map ? &m1 : nullptr);
    auto out = order_unchecked(ctx, merged, map ? &m2 : nullptr);
    if (map) {
        map->resize(m1.size());
        for (size_t i = 0; i < m1.size(); i++) (*map)[i] = m2[m1[i]];
    }
    return out;
}

CanonicalRepresentation canon(const SymbolicContext& ctx, const DecisionSet& d) { return canonicalize(ctx, lift(ctx, d)); }

DecisionSet realize(const SymbolicContext& ctx, const DynamicRepresentation& r, const ValidAssignment& va)
{
    const auto& u = ctx.universe();
    const auto& net = ctx.net();
    const auto& pt = ctx.game().net;
    if (va.of.size() != u.num_classes()) throw Error(ErrorKind::InvalidAssignment, "class count");
    std::vector<std::vector<uint32_t>> colors(r.subclasses.size());
    for (uint32_t i = 0; i < u.num_classes(); i++) {
        if (va.of[i].size() != u.cls(i).size()) throw Error(ErrorKind::InvalidAssignment, "class size");
        for (uint32_t x = 0; x < va.of[i].size(); x++) {
            uint32_t z = va.of[i][x];
            if (z >= r.subclasses.size() || r.subclasses[z].cls != i || r.subclasses[z].stat != u.cls(i).stat_of(x))
                throw Error(ErrorKind::InvalidAssignment, "color mapped outside its class or static subclass");
            colors[z].push_back(x);
        }
    }
    for (uint32_t z = 0; z < r.subclasses.size(); z++) {
        if (colors[z].size() != r.subclasses[z].card) throw Error(ErrorKind::InvalidAssignment, "cardinality violated");
    }
    DecisionSetBuilder b;
    for (const auto& e : r.entries) {
        const auto& type = net.places[e.place].type;
        std::vector<size_t> ctr(e.tuple.size(), 0);
        while (true) {
            ColorTuple c(e.tuple.size());
            for (size_t k = 0; k < c.size(); k++) c[k] = colors[e.tuple[k]][ctr[k]];
            uint32_t p = pt.place_index(e.place, c);
            if (e.top) {
                b.add_top(p);
            } else {
                std::vector<uint32_t> commit;
                for (auto t : pt.place_post[p]) {
                    const auto& tr = pt.transitions[t];
                    SymInstance inst{tr.hl, std::vector<uint32_t>(tr.mode.size())};
                    for (size_t k = 0; k < tr.mode.size(); k++) inst.args[k] = va.of[net.transitions[tr.hl].var_classes[k]][tr.mode[k]];
                    if (std::binary_search(e.commitment.begin(), e.commitment.end(), inst)) commit.push_back(t);
                }
                b.add(p, std::move(commit));
            }
            (void)type;
            size_t k = ctr.size();
            while (k > 0) {
                if (++ctr[k - 1] < colors[e.tuple[k - 1]].size()) break;
                ctr[k - 1] = 0;
                k--;
            }
            if (k == 0) break;
        }
    }
    return b.build();
}

std::vector<ValidAssignment> assignments(const DynamicRepresentation& r, const ColorUniverse& u)
{
    std::vector<ValidAssignment> out;
    ValidAssignment va;
    for (const auto& c : u.classes()) va.of.emplace_back(c.size(), 0);
    std::vector<uint32_t> left(r.subclasses.size());
    for (uint32_t z = 0; z < r.subclasses.size(); z++) left[z] = r.subclasses[z].card;
    // colors in global order; each picks a subclass of its class and stat with room left
    std::vector<std::pair<uint32_t, uint32_t>> colors;
    for (uint32_t i = 0; i < u.num_classes(); i++) {
        for (uint32_t x = 0; x < u.cls(i).size(); x++) colors.push_back({i, x});
    }
    std::function<void(size_t)> rec = [&](size_t n) {
        if (n == colors.size()) {
            out.push_back(va);
            return;
        }
        auto [i, x] = colors[n];
        uint32_t q = u.cls(i).stat_of(x);
        for (uint32_t z = 0; z < r.subclasses.size(); z++) {
            if (r.subclasses[z].cls != i || r.subclasses[z].stat != q || left[z] == 0) continue;
            left[z]--;
            va.of[i][x] = z;
            rec(n + 1);
            left[z]++;
        }
    };
    rec(0);
    return out;
}

std::vector<SymbolicSuccessor> symbolic_transition_successors(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                                              bool system_only)
{
    std::vector<SymbolicSuccessor> out;
    const auto& net = ctx.net();
    for (uint32_t t = 0; t < net.transitions.size(); t++) {
        if (system_only && ctx.env_transition(t)) continue;
        for_each_symbolic_mode(r, net.transitions[t].var_classes, [&](const std::vector<uint32_t>& of, const std::vector<uint32_t>& k) {
            ModeSplit split = split_for_mode(r, of, k);
            if (!guard_holds_symbolic(ctx, split, t, split.y)) return;
            std::vector<Consumed> consumed;
            if (!symbolic_enabled(ctx, r, split, t, split.y, true, &consumed)) return;
            DynamicRepresentation rs = substitute(ctx, r, split.shell.subclasses, split.repl);
            DynamicRepresentation fired;
            fired.subclasses = rs.subclasses;
            for (const auto& e : rs.entries) {
                bool gone = false;
                for (const auto& c : consumed) gone = gone || (c.place == e.place && c.tuple == e.tuple);
                if (!gone) fired.entries.push_back(e);
            }
            std::sort(fired.entries.begin(), fired.entries.end(), entry_less);
            std::vector<DynEntry> added;
            for (auto a : net.output_arcs(t)) {
                const auto& arc = net.arcs[a];
                for (const auto& [x, cnt] : ctx.eval(rs, arc.expr, split.y)) {
                    if (cnt != 1 || find_entry(fired, arc.place, x))
                        throw Error(ErrorKind::UnsafeNet, "firing " + net.transitions[t].name + " marks a place twice");
                    for (const auto& d : added) {
                        if (d.place == arc.place && d.tuple == x)
                            throw Error(ErrorKind::UnsafeNet, "firing " + net.transitions[t].name + " marks a place twice");
                    }
                    DynEntry n{arc.place, x, !ctx.env_place(arc.place), {}};
                    if (!n.top) n.commitment = ctx.symbolic_post(fired, arc.place, x);
                    added.push_back(std::move(n));
                }
            }
            for (auto& e : added) fired.entries.push_back(std::move(e));
            ctx.normalize(fired);
            uint64_t env_tokens = 0;
            for (const auto& e : fired.entries) {
                if (!ctx.env_place(e.place)) continue;
                uint64_t n = 1;
                for (auto z : e.tuple) n *= fired.subclasses[z].card;
                env_tokens += n;
            }
            if (env_tokens > 1)
                throw Error(ErrorKind::MultipleEnvironmentTokens, "after firing " + net.transitions[t].name);
            out.push_back({SymInstance{t, split.y}, of, k, canonicalize(ctx, fired)});
        });
    }
    return out;
}

DynamicRepresentation refine_to_singletons(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                           std::vector<std::vector<uint32_t>>* map)
{
    std::vector<DynamicSubclass> subs;
    std::vector<std::vector<uint32_t>> repl(r.subclasses.size());
    for (uint32_t z = 0; z < r.subclasses.size(); z++) {
        for (uint32_t i = 0; i < r.subclasses[z].card; i++) {
            repl[z].push_back(static_cast<uint32_t>(subs.size()));
            subs.push_back({r.subclasses[z].cls, r.subclasses[z].stat, 1});
        }
    }
    if (map) *map = repl;
    return substitute(ctx, r, subs, repl);
}

uint64_t for_each_top_choice(const SymbolicContext& ctx, const DynamicRepresentation& r,
                             const std::function<void(const TopChoice&)>& fn)
{
    DynamicRepresentation rf = refine_to_singletons(ctx, r);
    std::vector<size_t> tops;
    std::vector<std::vector<SymInstance>> posts;
    size_t bits = 0;
    for (size_t i = 0; i < rf.entries.size(); i++) {
        if (!rf.entries[i].top) continue;
        tops.push_back(i);
        posts.push_back(ctx.symbolic_post(rf, rf.entries[i].place, rf.entries[i].tuple));
        bits += posts.back().size();
        if (bits > kMaxTopChoiceBits)
            throw Error(ErrorKind::BoundExceeded, "more than 2^" + std::to_string(kMaxTopChoiceBits) + " ⊤-resolutions");
    }
    if (tops.empty()) throw Error(ErrorKind::NoTop, "representation without ⊤");
    std::vector<uint64_t> mask(tops.size(), 0);
    uint64_t count = 0;
    TopChoice choice;
    while (true) {
        choice.resolved = rf;
        for (size_t k = 0; k < tops.size(); k++) {
            auto& e = choice.resolved.entries[tops[k]];
            e.top = false;
            for (size_t i = 0; i < posts[k].size(); i++) {
                if ((mask[k] >> i) & 1) e.commitment.push_back(posts[k][i]);
            }
        }
        choice.target = canonicalize(ctx, choice.resolved);
        fn(choice);
        count++;
        size_t i = mask.size();
        while (i > 0) {
            if (++mask[i - 1] < (uint64_t(1) << posts[i - 1].size())) break;
            mask[i - 1] = 0;
            i--;
        }
        if (i == 0) break;
    }
    return count;
}

std::vector<CanonicalRepresentation> symbolic_top_successors(const SymbolicContext& ctx, const DynamicRepresentation& r)
{
    std::vector<CanonicalRepresentation> out;
    std::unordered_map<std::string, bool> seen;
    for_each_top_choice(ctx, r, [&](const TopChoice& c) {
        if (seen.emplace(c.target.key, true).second) out.push_back(c.target);
    });
    return out;
}

StateFlags properties_rep(const SymbolicContext& ctx, const DynamicRepresentation& r)
{
    const auto& net = ctx.net();
    StateFlags f;
    bool top = false;
    for (const auto& e : r.entries) {
        top = top || e.top;
        f.bad = f.bad || ctx.bad_place(e.place);
    }
    bool any_marking = false;
    bool any_enabled = false;
    bool all_env = true;
    // per transition, the entries of r its enabled instances consume
    std::vector<std::vector<Consumed>> touched(net.transitions.size());
    for (uint32_t t = 0; t < net.transitions.size(); t++) {
        for_each_symbolic_mode(r, net.transitions[t].var_classes, [&](const std::vector<uint32_t>& of, const std::vector<uint32_t>& k) {
            ModeSplit split = split_for_mode(r, of, k);
            if (!guard_holds_symbolic(ctx, split, t, split.y)) return;
            if (!any_marking && symbolic_enabled(ctx, r, split, t, split.y, false, nullptr)) any_marking = true;
            std::vector<Consumed> consumed;
            if (!symbolic_enabled(ctx, r, split, t, split.y, true, &consumed)) return;
            any_enabled = true;
            all_env = all_env && ctx.env_transition(t);
            for (auto& c : consumed) {
                if (ctx.env_place(c.place)) continue;
                for (auto& z : c.tuple) z = split.back[z];
                touched[t].push_back(std::move(c));
            }
        });
    }
    f.terminating = !any_marking;
    if (!top) {
        f.env_dependent = !any_enabled || all_env;
        f.deadlock = any_marking && !any_enabled;
    }
    // two distinct concrete instances sharing a system place, decided on a joint split
    for (uint32_t t1 = 0; t1 < net.transitions.size() && !f.nondet; t1++) {
        for (uint32_t t2 = t1; t2 < net.transitions.size() && !f.nondet; t2++) {
            bool candidate = false;
            for (const auto& a : touched[t1]) {
                for (const auto& b : touched[t2]) candidate = candidate || a == b;
            }
            if (!candidate) continue;
            auto classes = net.transitions[t1].var_classes;
            const size_t n1 = classes.size();
            classes.insert(classes.end(), net.transitions[t2].var_classes.begin(), net.transitions[t2].var_classes.end());
            for_each_symbolic_mode(r, classes, [&](const std::vector<uint32_t>& of, const std::vector<uint32_t>& k) {
                if (f.nondet) return;
                ModeSplit split = split_for_mode(r, of, k);
                std::vector<uint32_t> y1(split.y.begin(), split.y.begin() + n1);
                std::vector<uint32_t> y2(split.y.begin() + n1, split.y.end());
                if (t1 == t2 && y1 == y2) return;
                if (!guard_holds_symbolic(ctx, split, t1, y1) || !guard_holds_symbolic(ctx, split, t2, y2)) return;
                std::vector<Consumed> c1, c2;
                if (!symbolic_enabled(ctx, r, split, t1, y1, true, &c1)) return;
                if (!symbolic_enabled(ctx, r, split, t2, y2, true, &c2)) return;
                for (const auto& a : c1) {
                    if (ctx.env_place(a.place)) continue;
                    for (const auto& b : c2) f.nondet = f.nondet || a == b;
                }
            });
        }
    }
    return f;
}

std::string subclass_name(const DynamicRepresentation& r, uint32_t z)
{
    uint32_t j = 0;
    for (uint32_t x = 0; x < z; x++) j += r.subclasses[x].cls == r.subclasses[z].cls ? 1 : 0;
    return "Z" + std::to_string(r.subclasses[z].cls + 1) + "^" + std::to_string(j + 1);
}

std::string instance_name(const SymbolicContext& ctx, const DynamicRepresentation& r, const SymInstance& inst)
{
    std::string s = ctx.net().transitions[inst.transition].name;
    if (inst.args.empty()) return s;
    s += inst.args.size() == 1 ? "." : ".(";
    for (size_t k = 0; k < inst.args.size(); k++) s += (k ? "," : "") + subclass_name(r, inst.args[k]);
    return inst.args.size() == 1 ? s : s + ")";
}

std::string to_string(const SymbolicContext& ctx, const DynamicRepresentation& r)
{
    const auto& net = ctx.net();
    std::string s = "C = {";
    for (uint32_t z = 0; z < r.subclasses.size(); z++) {
        if (z) s += ", ";
        s += "|" + subclass_name(r, z) + "|=" + std::to_string(r.subclasses[z].card);
        if (ctx.universe().cls(r.subclasses[z].cls).num_static() > 1) s += "@" + std::to_string(r.subclasses[z].stat + 1);
    }
    s += "}, D = {";
    for (size_t i = 0; i < r.entries.size(); i++) {
        const auto& e = r.entries[i];
        if (i) s += ", ";
        s += "(" + net.places[e.place].name;
        if (!e.tuple.empty()) {
            s += e.tuple.size() == 1 ? "." : ".(";
            for (size_t k = 0; k < e.tuple.size(); k++) s += (k ? "," : "") + subclass_name(r, e.tuple[k]);
            if (e.tuple.size() > 1) s += ")";
        }
        s += ", ";
        if (e.top) {
            s += "⊤";
        } else {
            s += "{";
            for (size_t k = 0; k < e.commitment.size(); k++) s += (k ? "," : "") + instance_name(ctx, r, e.commitment[k]);
            s += "}";
        }
        s += ")";
    }
    return s + "}";
}

} // namespace pgsynth
