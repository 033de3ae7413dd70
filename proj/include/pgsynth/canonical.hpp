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

#include <compare>
#include <functional>
#include <map>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pgsynth/decision_set.hpp"
#include "pgsynth/game.hpp"

namespace pgsynth {

struct DynamicSubclass {
    uint32_t cls;
    uint32_t stat;
    uint32_t card;
    bool operator==(const DynamicSubclass&) const = default;
};

// A transition with one subclass reference per parameter slot.
struct SymInstance {
    uint32_t transition;
    std::vector<uint32_t> args;
    auto operator<=>(const SymInstance&) const = default;
    bool operator==(const SymInstance&) const = default;
};

struct DynEntry {
    uint32_t place;
    std::vector<uint32_t> tuple;  // subclass references
    bool top = false;
    std::vector<SymInstance> commitment;  // sorted, only instances that can lie in the postset
    bool operator==(const DynEntry&) const = default;
};

// Subclass references index `subclasses`, which is grouped by (class, stat).
struct DynamicRepresentation {
    std::vector<DynamicSubclass> subclasses;
    std::vector<DynEntry> entries;  // sorted by (place, tuple)
    bool operator==(const DynamicRepresentation&) const = default;
};

struct CanonicalRepresentation {
    DynamicRepresentation rep;
    std::string key;  // canonical encoding
    bool operator==(const CanonicalRepresentation& o) const { return key == o.key; }
};

// Per class, the subclass reference of every color.
struct ValidAssignment {
    std::vector<std::vector<uint32_t>> of;
    bool operator==(const ValidAssignment&) const = default;
};

struct CanonStats {
    uint64_t canonicalizations = 0;
    uint64_t orderings = 0;          // permutation encodings evaluated
    uint64_t max_orderings = 0;      // largest count in one canonicalization
};

// Net data shared by the symbolic operations, plus a cache of postset feasibility.
class SymbolicContext
{
public:
    explicit SymbolicContext(const PTGame& game);

    const PTGame& game() const { return game_; }
    const HLNet& net() const { return game_.hl->net; }
    const ColorUniverse& universe() const { return game_.hl->net.universe; }
    bool env_place(uint32_t p) const { return game_.hl->kinds[p] == PlaceKind::Env; }
    bool bad_place(uint32_t p) const { return game_.hl->kinds[p] == PlaceKind::Bad; }
    bool env_transition(uint32_t t) const { return env_transition_[t]; }
    const std::vector<uint32_t>& post_transitions(uint32_t p) const { return post_transitions_[p]; }

    // Whether some realization puts a concrete instance of `inst` into the postset of some
    // concrete instance of p.X.
    bool possibly_in_post(const DynamicRepresentation& r, uint32_t p, const std::vector<uint32_t>& x,
                          const SymInstance& inst) const;
    std::vector<SymInstance> symbolic_post(const DynamicRepresentation& r, uint32_t p, const std::vector<uint32_t>& x) const;

    // Filters commitments, sorts everything; throws UnsafeNet on duplicate (place, tuple).
    void normalize(DynamicRepresentation& r) const;

    // Symbolic evaluation of an arc expression; all(C_i) ranges over the subclasses of C_i.
    std::map<std::vector<uint32_t>, uint32_t> eval(const DynamicRepresentation& r, const ArcExpr& e,
                                                   const std::vector<uint32_t>& y) const;

    mutable CanonStats stats;

private:
    const PTGame& game_;
    std::vector<bool> env_transition_;
    std::vector<std::vector<uint32_t>> post_transitions_;
    std::vector<std::vector<int32_t>> input_arc_;  // [place][transition], -1 if none
    struct KeyHash {
        using is_transparent = void;
        size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    mutable std::unordered_map<std::string, bool, KeyHash, std::equal_to<>> post_cache_;
    mutable std::string key_buf_;
};

DynamicRepresentation lift(const SymbolicContext& ctx, const DecisionSet& d);

// Entry shapes with one occurrence of z replaced by kNabla; sorted and unique.
constexpr uint32_t kNabla = 0xFFFFFFFEu;
std::vector<std::vector<uint32_t>> context(const DynamicRepresentation& r, uint32_t z);

// Merging preserves the realized set exactly. `map` receives old -> new subclass references.
DynamicRepresentation merge_minimal(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                    std::vector<uint32_t>* map = nullptr);
bool mergeable(const SymbolicContext& ctx, const DynamicRepresentation& r, uint32_t a, uint32_t b);

// Throws NotMinimal if two subclasses could still merge.
CanonicalRepresentation order_representation(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                             std::vector<uint32_t>* map = nullptr);
CanonicalRepresentation canonicalize(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                     std::vector<uint32_t>* map = nullptr);
CanonicalRepresentation canon(const SymbolicContext& ctx, const DecisionSet& d);

// Encoding of an arbitrary representation under its current subclass order.
std::vector<uint32_t> encode(const DynamicRepresentation& r, const ColorUniverse& u);

// Throws InvalidAssignment.
DecisionSet realize(const SymbolicContext& ctx, const DynamicRepresentation& r, const ValidAssignment& va);
std::vector<ValidAssignment> assignments(const DynamicRepresentation& r, const ColorUniverse& u);
// The assignment lift() induces: color k of class i maps to the k-th singleton of that class.
ValidAssignment lift_assignment(const ColorUniverse& u);

// Replaces each occurrence of subclass i by every element of repl[i]; then normalizes.
DynamicRepresentation substitute(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                 const std::vector<DynamicSubclass>& subclasses,
                                 const std::vector<std::vector<uint32_t>>& repl);

struct SymbolicSuccessor {
    SymInstance instance;  // over the split representation's singletons
    std::vector<uint32_t> split_of;  // per parameter slot: the subclass of r it was taken from
    std::vector<uint32_t> k;         // per parameter slot: instance number within that subclass
    CanonicalRepresentation target;
};

// One element per enabled normalized symbolic mode, in enumeration order.
std::vector<SymbolicSuccessor> symbolic_transition_successors(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                                              bool system_only = false);

struct TopChoice {
    DynamicRepresentation resolved;  // over singletons, before canonicalization
    CanonicalRepresentation target;
};

// Refines every subclass to singletons, then resolves each ⊤ with every subset of its
// symbolic postset. Successors are deduplicated by encoding; first occurrence wins.
std::vector<CanonicalRepresentation> symbolic_top_successors(const SymbolicContext& ctx, const DynamicRepresentation& r);
// Same enumeration, streaming every resolution before deduplication.
uint64_t for_each_top_choice(const SymbolicContext& ctx, const DynamicRepresentation& r,
                             const std::function<void(const TopChoice&)>& fn);
// The all-singleton refinement used by the ⊤ enumeration; `map` receives, per original
// subclass, its singletons in order.
DynamicRepresentation refine_to_singletons(const SymbolicContext& ctx, const DynamicRepresentation& r,
                                           std::vector<std::vector<uint32_t>>* map = nullptr);

StateFlags properties_rep(const SymbolicContext& ctx, const DynamicRepresentation& r);

std::string subclass_name(const DynamicRepresentation& r, uint32_t z);
std::string to_string(const SymbolicContext& ctx, const DynamicRepresentation& r);
std::string instance_name(const SymbolicContext& ctx, const DynamicRepresentation& r, const SymInstance& inst);

} // namespace pgsynth
