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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgsynth/color.hpp"

namespace pgsynth {

using Mode = std::vector<uint32_t>;
using Multiset = std::map<ColorTuple, uint32_t>;

// A tuple component: a parameter slot of the transition, or all(C_i).
struct Term {
    enum Kind { Var, All } kind;
    uint32_t index;
    bool operator==(const Term&) const = default;
};

using ArcTuple = std::vector<Term>;

// Multiset sum of tuples.
struct ArcExpr {
    std::vector<ArcTuple> tuples;
    bool operator==(const ArcExpr&) const = default;
};

struct Guard {
    enum Kind { True, Eq, Neq, In, And, Or, Not } kind = True;
    uint32_t a = 0;  // variable slot
    uint32_t b = 0;  // variable slot (Eq/Neq) or static subclass (In)
    std::vector<Guard> kids;

    static Guard truth() { return Guard{}; }
    static Guard eq(uint32_t x, uint32_t y) { return Guard{Eq, x, y, {}}; }
    static Guard neq(uint32_t x, uint32_t y) { return Guard{Neq, x, y, {}}; }
    static Guard in(uint32_t x, uint32_t q) { return Guard{In, x, q, {}}; }

    // same(x, y) decides slot equality; stat(x) yields the static subclass of slot x.
    template <class SameFn, class StatFn>
    bool eval_with(const SameFn& same, const StatFn& stat) const
    {
        switch (kind) {
        case True: return true;
        case Eq: return same(a, b);
        case Neq: return !same(a, b);
        case In: return stat(a) == b;
        case And:
            for (const auto& k : kids) {
                if (!k.eval_with(same, stat)) return false;
            }
            return true;
        case Or:
            for (const auto& k : kids) {
                if (k.eval_with(same, stat)) return true;
            }
            return false;
        case Not: return !kids[0].eval_with(same, stat);
        }
        return false;
    }

    bool operator==(const Guard&) const = default;
};

struct HLPlace {
    std::string name;
    std::vector<uint32_t> type;  // class index per tuple component
    bool operator==(const HLPlace&) const = default;
};

struct HLTransition {
    std::string name;
    std::vector<std::string> var_names;
    std::vector<uint32_t> var_classes;
    Guard guard;
    bool operator==(const HLTransition&) const = default;
};

struct Arc {
    uint32_t place;
    uint32_t transition;
    bool input;  // place -> transition
    ArcExpr expr;
    bool operator==(const Arc&) const = default;
};

class HLNet
{
public:
    ColorUniverse universe;
    std::vector<HLPlace> places;
    std::vector<HLTransition> transitions;
    std::vector<Arc> arcs;

    std::optional<uint32_t> find_place(const std::string& name) const;
    std::optional<uint32_t> find_transition(const std::string& name) const;

    // Arc indices into `arcs`, filled by index_arcs().
    const std::vector<uint32_t>& input_arcs(uint32_t t) const { return inputs_[t]; }
    const std::vector<uint32_t>& output_arcs(uint32_t t) const { return outputs_[t]; }
    const std::vector<uint32_t>& arcs_from_place(uint32_t p) const { return from_place_[p]; }
    void index_arcs();

    bool operator==(const HLNet& o) const
    {
        return universe == o.universe && places == o.places && transitions == o.transitions && arcs == o.arcs;
    }

private:
    std::vector<std::vector<uint32_t>> inputs_, outputs_, from_place_;
};

struct HLMarking {
    std::vector<Multiset> tokens;  // per place
    bool operator==(const HLMarking&) const = default;
};

bool guard_holds(const HLNet& net, uint32_t t, const Mode& v);
Multiset eval_expression(const ColorUniverse& u, const ArcExpr& expr, const Mode& v);
std::vector<Mode> modes(const ColorUniverse& u, const HLTransition& t);
uint64_t mode_count(const ColorUniverse& u, const HLTransition& t);

bool enabled_hl(const HLNet& net, const HLMarking& m, uint32_t t, const Mode& v);
HLMarking fire_hl(const HLNet& net, const HLMarking& m, uint32_t t, const Mode& v);

// Throws IllTypedArc, UnboundVariable or NonSymmetricInitialMarking.
void validate_net(const HLNet& net, const HLMarking& m0);

HLMarking apply(const Symmetry& s, const HLNet& net, const HLMarking& m);
Mode apply_mode(const Symmetry& s, const HLTransition& t, const Mode& v);

struct PTPlace {
    uint32_t hl;
    ColorTuple colors;
};

struct PTTransition {
    uint32_t hl;
    Mode mode;
    std::vector<std::pair<uint32_t, uint32_t>> pre, post;  // (place, weight), sorted by place
};

class PTNet
{
public:
    std::vector<PTPlace> places;
    std::vector<PTTransition> transitions;
    std::vector<std::vector<uint32_t>> place_post;  // transitions consuming from a place, ascending
    std::vector<std::vector<uint32_t>> place_pre;
    std::vector<uint32_t> m0;  // multiplicity per place

    uint32_t place_index(uint32_t hl, const ColorTuple& c) const;
    std::optional<uint32_t> transition_index(uint32_t hl, const Mode& v) const;
    std::string place_name(uint32_t p) const;
    std::string transition_name(uint32_t t) const;

    const HLNet& hl() const { return *hl_; }

private:
    friend PTNet expand(const HLNet&, const HLMarking&);
    const HLNet* hl_ = nullptr;
    std::vector<uint32_t> place_offset_;
    std::vector<std::vector<int32_t>> trans_index_;  // per hl transition, by mode rank
};

// The returned net keeps a pointer to `net`, which must outlive it.
PTNet expand(const HLNet& net, const HLMarking& m0);

uint64_t tuple_rank(const ColorUniverse& u, const std::vector<uint32_t>& classes, const ColorTuple& c);
std::string tuple_name(const ColorUniverse& u, const std::vector<uint32_t>& classes, const ColorTuple& c);

// Image of a symmetry on instance indices of an expanded net.
struct PTPermutation {
    std::vector<uint32_t> place;
    std::vector<uint32_t> transition;
};

PTPermutation permutation_on(const PTNet& pt, const Symmetry& s);

} // namespace pgsynth
