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

#include "pgsynth/net.hpp"

#include <algorithm>

#include "pgsynth/error.hpp"

namespace pgsynth {

std::optional<uint32_t> HLNet::find_place(const std::string& name) const
{
    for (uint32_t i = 0; i < places.size(); i++) {
        if (places[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<uint32_t> HLNet::find_transition(const std::string& name) const
{
    for (uint32_t i = 0; i < transitions.size(); i++) {
        if (transitions[i].name == name) return i;
    }
    return std::nullopt;
}

void HLNet::index_arcs()
{
    inputs_.assign(transitions.size(), {});
    outputs_.assign(transitions.size(), {});
    from_place_.assign(places.size(), {});
    for (uint32_t a = 0; a < arcs.size(); a++) {
        if (arcs[a].input) {
            inputs_[arcs[a].transition].push_back(a);
            from_place_[arcs[a].place].push_back(a);
        } else {
            outputs_[arcs[a].transition].push_back(a);
        }
    }
}

bool guard_holds(const HLNet& net, uint32_t t, const Mode& v)
{
    const auto& tr = net.transitions[t];
    return tr.guard.eval_with([&](uint32_t x, uint32_t y) { return v[x] == v[y]; },
                              [&](uint32_t x) { return net.universe.cls(tr.var_classes[x]).stat_of(v[x]); });
}

Multiset eval_expression(const ColorUniverse& u, const ArcExpr& expr, const Mode& v)
{
    Multiset out;
    for (const auto& tuple : expr.tuples) {
        // odometer over the broadcast components
        std::vector<uint32_t> sizes(tuple.size(), 1);
        for (size_t k = 0; k < tuple.size(); k++) {
            if (tuple[k].kind == Term::All) {
                sizes[k] = u.cls(tuple[k].index).size();
            } else if (tuple[k].index >= v.size()) {
                throw Error(ErrorKind::UnboundVariable, "slot " + std::to_string(tuple[k].index));
            }
        }
        ColorTuple c(tuple.size(), 0);
        std::vector<uint32_t> ctr(tuple.size(), 0);
        while (true) {
            for (size_t k = 0; k < tuple.size(); k++) c[k] = tuple[k].kind == Term::All ? ctr[k] : v[tuple[k].index];
            out[c]++;
            size_t k = tuple.size();
            while (k > 0) {
                if (++ctr[k - 1] < sizes[k - 1]) break;
                ctr[k - 1] = 0;
                k--;
            }
            if (k == 0) break;
        }
    }
    return out;
}

uint64_t mode_count(const ColorUniverse& u, const HLTransition& t)
{
    uint64_t n = 1;
    for (auto c : t.var_classes) n *= u.cls(c).size();
    return n;
}

std::vector<Mode> modes(const ColorUniverse& u, const HLTransition& t)
{
    std::vector<Mode> out;
    out.reserve(mode_count(u, t));
    Mode v(t.var_classes.size(), 0);
    while (true) {
        out.push_back(v);
        size_t k = v.size();
        while (k > 0) {
            if (++v[k - 1] < u.cls(t.var_classes[k - 1]).size()) break;
            v[k - 1] = 0;
            k--;
        }
        if (k == 0) break;
    }
    return out;
}

bool enabled_hl(const HLNet& net, const HLMarking& m, uint32_t t, const Mode& v)
{
    if (!guard_holds(net, t, v)) return false;
    std::vector<Multiset> need(net.places.size());
    for (auto a : net.input_arcs(t)) {
        for (const auto& [c, k] : eval_expression(net.universe, net.arcs[a].expr, v)) need[net.arcs[a].place][c] += k;
    }
    for (uint32_t p = 0; p < need.size(); p++) {
        for (const auto& [c, k] : need[p]) {
            auto it = m.tokens[p].find(c);
            if (it == m.tokens[p].end() || it->second < k) return false;
        }
    }
    return true;
}

HLMarking fire_hl(const HLNet& net, const HLMarking& m, uint32_t t, const Mode& v)
{
    if (!guard_holds(net, t, v)) throw Error(ErrorKind::GuardFalse, net.transitions[t].name);
    if (!enabled_hl(net, m, t, v)) throw Error(ErrorKind::NotEnabled, net.transitions[t].name);
    HLMarking out = m;
    for (auto a : net.input_arcs(t)) {
        auto& ms = out.tokens[net.arcs[a].place];
        for (const auto& [c, k] : eval_expression(net.universe, net.arcs[a].expr, v)) {
            auto it = ms.find(c);
            it->second -= k;
            if (it->second == 0) ms.erase(it);
        }
    }
    for (auto a : net.output_arcs(t)) {
        auto& ms = out.tokens[net.arcs[a].place];
        for (const auto& [c, k] : eval_expression(net.universe, net.arcs[a].expr, v)) ms[c] += k;
    }
    return out;
}

static void validate_guard(const HLNet& net, const HLTransition& t, const Guard& g)
{
    auto slot = [&](uint32_t x) {
        if (x >= t.var_classes.size())
            throw Error(ErrorKind::UnboundVariable, "guard of " + t.name + " uses slot " + std::to_string(x));
    };
    switch (g.kind) {
    case Guard::True: break;
    case Guard::Eq:
    case Guard::Neq:
        slot(g.a);
        slot(g.b);
        if (t.var_classes[g.a] != t.var_classes[g.b])
            throw Error(ErrorKind::ValidationError, "guard of " + t.name + " compares different classes");
        break;
    case Guard::In:
        slot(g.a);
        if (g.b >= net.universe.cls(t.var_classes[g.a]).num_static())
            throw Error(ErrorKind::ValidationError, "guard of " + t.name + " names a missing static subclass");
        break;
    default:
        for (const auto& k : g.kids) validate_guard(net, t, k);
    }
}

void validate_net(const HLNet& net, const HLMarking& m0)
{
    for (const auto& arc : net.arcs) {
        if (arc.place >= net.places.size() || arc.transition >= net.transitions.size())
            throw Error(ErrorKind::IllTypedArc, "arc endpoint out of range");
        const auto& p = net.places[arc.place];
        const auto& t = net.transitions[arc.transition];
        for (const auto& tuple : arc.expr.tuples) {
            if (tuple.size() != p.type.size())
                throw Error(ErrorKind::IllTypedArc, "arity mismatch between " + p.name + " and " + t.name);
            for (size_t k = 0; k < tuple.size(); k++) {
                uint32_t cls;
                if (tuple[k].kind == Term::All) {
                    cls = tuple[k].index;
                } else {
                    if (tuple[k].index >= t.var_classes.size())
                        throw Error(ErrorKind::UnboundVariable, "arc of " + t.name + " uses an undeclared slot");
                    cls = t.var_classes[tuple[k].index];
                }
                if (cls != p.type[k])
                    throw Error(ErrorKind::IllTypedArc, "class mismatch between " + p.name + " and " + t.name);
            }
        }
    }
    for (const auto& t : net.transitions) validate_guard(net, t, t.guard);
    if (m0.tokens.size() != net.places.size()) throw Error(ErrorKind::ValidationError, "marking size");
    for (uint32_t p = 0; p < net.places.size(); p++) {
        for (const auto& [c, k] : m0.tokens[p]) {
            bool ok = c.size() == net.places[p].type.size();
            for (size_t i = 0; ok && i < c.size(); i++) ok = c[i] < net.universe.cls(net.places[p].type[i]).size();
            if (!ok) throw Error(ErrorKind::ValidationError, "ill-typed token on " + net.places[p].name);
        }
    }
    // adjacent transpositions inside static subclasses generate the group
    const Symmetry id = Symmetry::identity(net.universe);
    for (uint32_t i = 0; i < net.universe.num_classes(); i++) {
        const auto& cls = net.universe.cls(i);
        for (uint32_t x = 0; x + 1 < cls.size(); x++) {
            if (cls.stat_of(x) != cls.stat_of(x + 1)) continue;
            auto perms = id.perms();
            std::swap(perms[i][x], perms[i][x + 1]);
            if (!(apply(Symmetry::unchecked(std::move(perms)), net, m0) == m0))
                throw Error(ErrorKind::NonSymmetricInitialMarking,
                            "swapping " + cls.colors[x] + " and " + cls.colors[x + 1] + " changes M0");
        }
    }
}

HLMarking apply(const Symmetry& s, const HLNet& net, const HLMarking& m)
{
    HLMarking out;
    out.tokens.resize(m.tokens.size());
    for (uint32_t p = 0; p < m.tokens.size(); p++) {
        for (const auto& [c, k] : m.tokens[p]) out.tokens[p][s.apply(net.places[p].type, c)] += k;
    }
    return out;
}

Mode apply_mode(const Symmetry& s, const HLTransition& t, const Mode& v) { return s.apply(t.var_classes, v); }

uint64_t tuple_rank(const ColorUniverse& u, const std::vector<uint32_t>& classes, const ColorTuple& c)
{
    uint64_t r = 0;
    for (size_t k = 0; k < c.size(); k++) r = r * u.cls(classes[k]).size() + c[k];
    return r;
}

std::string tuple_name(const ColorUniverse& u, const std::vector<uint32_t>& classes, const ColorTuple& c)
{
    if (c.empty()) return "";
    if (c.size() == 1) return u.cls(classes[0]).colors[c[0]];
    std::string s = "(";
    for (size_t k = 0; k < c.size(); k++) {
        if (k) s += ",";
        s += u.cls(classes[k]).colors[c[k]];
    }
    return s + ")";
}

uint32_t PTNet::place_index(uint32_t hl, const ColorTuple& c) const
{
    return place_offset_[hl] + static_cast<uint32_t>(tuple_rank(hl_->universe, hl_->places[hl].type, c));
}

std::optional<uint32_t> PTNet::transition_index(uint32_t hl, const Mode& v) const
{
    int32_t i = trans_index_[hl][tuple_rank(hl_->universe, hl_->transitions[hl].var_classes, v)];
    if (i < 0) return std::nullopt;
    return static_cast<uint32_t>(i);
}

std::string PTNet::place_name(uint32_t p) const
{
    const auto& pl = places[p];
    const auto& hp = hl_->places[pl.hl];
    auto t = tuple_name(hl_->universe, hp.type, pl.colors);
    return t.empty() ? hp.name : hp.name + "." + t;
}

std::string PTNet::transition_name(uint32_t t) const
{
    const auto& tr = transitions[t];
    const auto& ht = hl_->transitions[tr.hl];
    auto s = tuple_name(hl_->universe, ht.var_classes, tr.mode);
    return s.empty() ? ht.name : ht.name + "." + s;
}

PTNet expand(const HLNet& net, const HLMarking& m0)
{
    PTNet pt;
    pt.hl_ = &net;
    const auto& u = net.universe;
    for (uint32_t p = 0; p < net.places.size(); p++) {
        pt.place_offset_.push_back(static_cast<uint32_t>(pt.places.size()));
        HLTransition shape{"", {}, net.places[p].type, {}};
        for (auto& c : modes(u, shape)) pt.places.push_back({p, std::move(c)});
    }
    pt.m0.assign(pt.places.size(), 0);
    for (uint32_t p = 0; p < net.places.size(); p++) {
        for (const auto& [c, k] : m0.tokens[p]) pt.m0[pt.place_index(p, c)] += k;
    }
    pt.trans_index_.resize(net.transitions.size());
    for (uint32_t t = 0; t < net.transitions.size(); t++) {
        pt.trans_index_[t].assign(mode_count(u, net.transitions[t]), -1);
        uint32_t rank = 0;
        for (auto& v : modes(u, net.transitions[t])) {
            if (guard_holds(net, t, v)) {
                PTTransition tr{t, v, {}, {}};
                std::map<uint32_t, uint32_t> pre, post;
                for (auto a : net.input_arcs(t)) {
                    for (const auto& [c, k] : eval_expression(u, net.arcs[a].expr, v)) pre[pt.place_index(net.arcs[a].place, c)] += k;
                }
                for (auto a : net.output_arcs(t)) {
                    for (const auto& [c, k] : eval_expression(u, net.arcs[a].expr, v)) post[pt.place_index(net.arcs[a].place, c)] += k;
                }
                tr.pre.assign(pre.begin(), pre.end());
                tr.post.assign(post.begin(), post.end());
                pt.trans_index_[t][rank] = static_cast<int32_t>(pt.transitions.size());
                pt.transitions.push_back(std::move(tr));
            }
            rank++;
        }
    }
    pt.place_post.assign(pt.places.size(), {});
    pt.place_pre.assign(pt.places.size(), {});
    for (uint32_t t = 0; t < pt.transitions.size(); t++) {
        for (auto [p, k] : pt.transitions[t].pre) pt.place_post[p].push_back(t);
        for (auto [p, k] : pt.transitions[t].post) pt.place_pre[p].push_back(t);
    }
    return pt;
}

PTPermutation permutation_on(const PTNet& pt, const Symmetry& s)
{
    const auto& net = pt.hl();
    PTPermutation out;
    out.place.resize(pt.places.size());
    out.transition.resize(pt.transitions.size());
    for (uint32_t p = 0; p < pt.places.size(); p++) {
        const auto& pl = pt.places[p];
        out.place[p] = pt.place_index(pl.hl, s.apply(net.places[pl.hl].type, pl.colors));
    }
    for (uint32_t t = 0; t < pt.transitions.size(); t++) {
        const auto& tr = pt.transitions[t];
        out.transition[t] = *pt.transition_index(tr.hl, s.apply(net.transitions[tr.hl].var_classes, tr.mode));
    }
    return out;
}

} // namespace pgsynth
