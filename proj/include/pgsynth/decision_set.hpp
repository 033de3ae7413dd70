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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pgsynth/game.hpp"

namespace pgsynth {

// Flat sorted encoding: per entry `place, n, t_1..t_n` with n = kTop for ⊤.
class DecisionSet
{
public:
    static constexpr uint32_t kTop = 0xFFFFFFFFu;

    struct Entry {
        uint32_t place;
        bool top;
        const uint32_t* begin;
        const uint32_t* end;
        uint32_t size() const { return static_cast<uint32_t>(end - begin); }
        bool contains(uint32_t t) const;
    };

    class Iterator
    {
    public:
        Iterator(const uint32_t* p) : p_(p) {}
        Entry operator*() const
        {
            bool top = p_[1] == kTop;
            uint32_t n = top ? 0 : p_[1];
            return {p_[0], top, p_ + 2, p_ + 2 + n};
        }
        Iterator& operator++()
        {
            p_ += 2 + (p_[1] == kTop ? 0 : p_[1]);
            return *this;
        }
        bool operator!=(const Iterator& o) const { return p_ != o.p_; }

    private:
        const uint32_t* p_;
    };

    DecisionSet() = default;

    Iterator begin() const { return Iterator(data_.data()); }
    Iterator end() const { return Iterator(data_.data() + data_.size()); }

    const std::vector<uint32_t>& data() const { return data_; }
    bool empty() const { return data_.empty(); }
    bool has_top() const;
    std::optional<Entry> find(uint32_t place) const;

    bool operator==(const DecisionSet& o) const { return data_ == o.data_; }
    bool operator<(const DecisionSet& o) const { return data_ < o.data_; }
    size_t hash() const;

    friend class DecisionSetBuilder;

private:
    std::vector<uint32_t> data_;
};

struct DecisionSetHash {
    size_t operator()(const DecisionSet& d) const { return d.hash(); }
};

class DecisionSetBuilder
{
public:
    void add_top(uint32_t place);
    // `commitment` need not be sorted.
    void add(uint32_t place, std::vector<uint32_t> commitment);
    void add(const DecisionSet::Entry& e);
    // Throws UnsafeNet when a place appears twice.
    DecisionSet build();

private:
    struct Item {
        uint32_t place;
        bool top;
        std::vector<uint32_t> c;
    };
    std::vector<Item> items_;
};

struct StateFlags {
    bool env_dependent = false;
    bool bad = false;
    bool deadlock = false;
    bool terminating = false;
    bool nondet = false;

    bool sink() const { return bad || deadlock || terminating || nondet; }
    bool accepting() const { return (terminating || env_dependent) && !(deadlock || nondet || bad); }
    bool operator==(const StateFlags&) const = default;
};

std::string to_string(const StateFlags& f);

DecisionSet initial_decision_set(const PTGame& g);

// Transitions enabled by commitments (requires no ⊤ to be meaningful), ascending.
std::vector<uint32_t> enabled_transitions(const DecisionSet& d, const PTGame& g);
// Transitions enabled in the underlying marking, ascending.
std::vector<uint32_t> marking_enabled(const DecisionSet& d, const PTGame& g);

// Bound on the postset instances summed over the ⊤ entries of one state; ⊤-resolution
// throws BoundExceeded beyond it.
constexpr size_t kMaxTopChoiceBits = 24;

// Streams every choice function; returns the number of successors.
uint64_t for_each_top_successor(const DecisionSet& d, const PTGame& g,
                                 const std::function<void(const DecisionSet&)>& fn);
std::vector<DecisionSet> top_successors(const DecisionSet& d, const PTGame& g);

DecisionSet fire_ds(const DecisionSet& d, uint32_t t, const PTGame& g);

StateFlags properties_ds(const DecisionSet& d, const PTGame& g);

DecisionSet apply_symmetry_ds(const PTPermutation& s, const DecisionSet& d);

std::string to_string(const DecisionSet& d, const PTGame& g);

} // namespace pgsynth
