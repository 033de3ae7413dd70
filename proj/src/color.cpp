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

#include "pgsynth/color.hpp"

#include <algorithm>
#include <set>

#include "pgsynth/error.hpp"

namespace pgsynth {

uint32_t ColorClass::stat_of(uint32_t color) const
{
    auto it = std::upper_bound(bounds.begin(), bounds.end(), color);
    return static_cast<uint32_t>(it - bounds.begin()) - 1;
}

ColorUniverse::ColorUniverse(std::vector<ColorClass> classes) : classes_(std::move(classes))
{
    std::set<std::string> class_names;
    std::set<std::string> color_names;
    for (const auto& c : classes_) {
        if (!class_names.insert(c.name).second) throw Error(ErrorKind::InvalidUniverse, "duplicate class " + c.name);
        if (c.colors.empty()) throw Error(ErrorKind::InvalidUniverse, "empty class " + c.name);
        if (c.bounds.size() < 2 || c.bounds.front() != 0 || c.bounds.back() != c.size())
            throw Error(ErrorKind::InvalidUniverse, "static subclasses of " + c.name + " do not cover the class");
        for (size_t q = 0; q + 1 < c.bounds.size(); q++) {
            if (c.bounds[q] >= c.bounds[q + 1])
                throw Error(ErrorKind::InvalidUniverse, "empty static subclass in " + c.name);
        }
        for (const auto& col : c.colors) {
            if (!color_names.insert(col).second) throw Error(ErrorKind::InvalidUniverse, "duplicate color " + col);
        }
    }
}

std::optional<uint32_t> ColorUniverse::find_class(const std::string& name) const
{
    for (uint32_t i = 0; i < classes_.size(); i++) {
        if (classes_[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<uint32_t> ColorUniverse::find_color(uint32_t cls, const std::string& name) const
{
    const auto& colors = classes_[cls].colors;
    for (uint32_t i = 0; i < colors.size(); i++) {
        if (colors[i] == name) return i;
    }
    return std::nullopt;
}

Symmetry::Symmetry(const ColorUniverse& u, std::vector<std::vector<uint32_t>> perms) : perms_(std::move(perms))
{
    if (perms_.size() != u.num_classes()) throw Error(ErrorKind::UniverseMismatch, "class count differs");
    for (uint32_t i = 0; i < u.num_classes(); i++) {
        const auto& c = u.cls(i);
        const auto& p = perms_[i];
        if (p.size() != c.size()) throw Error(ErrorKind::UniverseMismatch, "class size differs for " + c.name);
        std::vector<bool> seen(p.size(), false);
        for (uint32_t x = 0; x < p.size(); x++) {
            if (p[x] >= p.size() || seen[p[x]]) throw Error(ErrorKind::InvalidUniverse, "not a permutation on " + c.name);
            seen[p[x]] = true;
            if (c.stat_of(x) != c.stat_of(p[x]))
                throw Error(ErrorKind::InvalidUniverse, "permutation leaves a static subclass of " + c.name);
        }
    }
}

Symmetry Symmetry::identity(const ColorUniverse& u)
{
    std::vector<std::vector<uint32_t>> perms;
    for (const auto& c : u.classes()) {
        std::vector<uint32_t> p(c.size());
        for (uint32_t x = 0; x < p.size(); x++) p[x] = x;
        perms.push_back(std::move(p));
    }
    return Symmetry(u, std::move(perms));
}

Symmetry Symmetry::unchecked(std::vector<std::vector<uint32_t>> perms)
{
    Symmetry s;
    s.perms_ = std::move(perms);
    return s;
}

ColorTuple Symmetry::apply(const std::vector<uint32_t>& classes, const ColorTuple& tuple) const
{
    ColorTuple out(tuple.size());
    for (size_t k = 0; k < tuple.size(); k++) out[k] = perms_[classes[k]][tuple[k]];
    return out;
}

bool Symmetry::is_identity() const
{
    for (const auto& p : perms_) {
        for (uint32_t x = 0; x < p.size(); x++) {
            if (p[x] != x) return false;
        }
    }
    return true;
}

bool Symmetry::same_shape(const Symmetry& other) const
{
    if (perms_.size() != other.perms_.size()) return false;
    for (size_t i = 0; i < perms_.size(); i++) {
        if (perms_[i].size() != other.perms_[i].size()) return false;
    }
    return true;
}

Symmetry compose(const Symmetry& s1, const Symmetry& s2)
{
    if (!s1.same_shape(s2)) throw Error(ErrorKind::UniverseMismatch, "compose over different universes");
    auto perms = s2.perms();
    for (size_t i = 0; i < perms.size(); i++) {
        for (auto& x : perms[i]) x = s1.perms()[i][x];
    }
    return Symmetry::unchecked(std::move(perms));
}

Symmetry invert(const Symmetry& s)
{
    auto perms = s.perms();
    for (size_t i = 0; i < perms.size(); i++) {
        for (uint32_t x = 0; x < perms[i].size(); x++) perms[i][s.perms()[i][x]] = x;
    }
    return Symmetry::unchecked(std::move(perms));
}

uint64_t symmetry_count(const ColorUniverse& u)
{
    uint64_t n = 1;
    for (const auto& c : u.classes()) {
        for (uint32_t q = 0; q < c.num_static(); q++) {
            for (uint32_t k = 2; k <= c.static_size(q); k++) n *= k;
        }
    }
    return n;
}

std::vector<Symmetry> enumerate_symmetries(const ColorUniverse& u)
{
    // One factor per (class, static subclass); odometer over their permutations.
    struct Factor {
        uint32_t cls;
        uint32_t begin;
        std::vector<uint32_t> perm;
    };
    std::vector<Factor> factors;
    for (uint32_t i = 0; i < u.num_classes(); i++) {
        const auto& c = u.cls(i);
        for (uint32_t q = 0; q < c.num_static(); q++) {
            Factor f{i, c.static_begin(q), {}};
            for (uint32_t x = c.static_begin(q); x < c.static_end(q); x++) f.perm.push_back(x);
            factors.push_back(std::move(f));
        }
    }
    std::vector<Symmetry> out;
    out.reserve(symmetry_count(u));
    const Symmetry id = Symmetry::identity(u);
    while (true) {
        auto perms = id.perms();
        for (const auto& f : factors) {
            for (size_t k = 0; k < f.perm.size(); k++) perms[f.cls][f.begin + k] = f.perm[k];
        }
        out.push_back(Symmetry(u, std::move(perms)));
        // advance the last factor first so the sequence is lexicographic
        size_t k = factors.size();
        while (k > 0) {
            auto& p = factors[k - 1].perm;
            if (std::next_permutation(p.begin(), p.end())) break;
            k--;
        }
        if (k == 0) break;
    }
    return out;
}

} // namespace pgsynth
