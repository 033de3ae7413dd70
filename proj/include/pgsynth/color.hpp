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
#include <optional>
#include <string>
#include <vector>

namespace pgsynth {

// A basic color class. Static subclass q covers color indices [bounds[q], bounds[q+1]).
struct ColorClass {
    std::string name;
    std::vector<std::string> colors;
    std::vector<uint32_t> bounds;

    uint32_t size() const { return static_cast<uint32_t>(colors.size()); }
    uint32_t num_static() const { return static_cast<uint32_t>(bounds.size()) - 1; }
    uint32_t static_begin(uint32_t q) const { return bounds[q]; }
    uint32_t static_end(uint32_t q) const { return bounds[q + 1]; }
    uint32_t static_size(uint32_t q) const { return bounds[q + 1] - bounds[q]; }
    uint32_t stat_of(uint32_t color) const;

    bool operator==(const ColorClass&) const = default;
};

class ColorUniverse
{
public:
    ColorUniverse() = default;
    explicit ColorUniverse(std::vector<ColorClass> classes);

    const std::vector<ColorClass>& classes() const { return classes_; }
    const ColorClass& cls(uint32_t i) const { return classes_[i]; }
    uint32_t num_classes() const { return static_cast<uint32_t>(classes_.size()); }

    std::optional<uint32_t> find_class(const std::string& name) const;
    std::optional<uint32_t> find_color(uint32_t cls, const std::string& name) const;

    bool operator==(const ColorUniverse&) const = default;

private:
    std::vector<ColorClass> classes_;
};

struct Color {
    uint32_t cls;
    uint32_t idx;
    bool operator==(const Color&) const = default;
};

// Tuples store color indices only; the classes come from the owning signature.
using ColorTuple = std::vector<uint32_t>;

class Symmetry
{
public:
    Symmetry() = default;
    // Throws InvalidUniverse if a permutation is malformed or leaves a static subclass.
    Symmetry(const ColorUniverse& u, std::vector<std::vector<uint32_t>> perms);

    static Symmetry identity(const ColorUniverse& u);
    // No validation; the caller guarantees a subclass-preserving permutation per class.
    static Symmetry unchecked(std::vector<std::vector<uint32_t>> perms);

    uint32_t apply(uint32_t cls, uint32_t color) const { return perms_[cls][color]; }
    Color apply(Color c) const { return {c.cls, perms_[c.cls][c.idx]}; }
    ColorTuple apply(const std::vector<uint32_t>& classes, const ColorTuple& tuple) const;

    const std::vector<std::vector<uint32_t>>& perms() const { return perms_; }
    bool is_identity() const;
    bool same_shape(const Symmetry& other) const;

    bool operator==(const Symmetry&) const = default;

private:
    std::vector<std::vector<uint32_t>> perms_;
};

// compose(s1, s2) applies s2 first.
Symmetry compose(const Symmetry& s1, const Symmetry& s2);
Symmetry invert(const Symmetry& s);

// All symmetries, identity first, in lexicographic order of the permutation arrays.
std::vector<Symmetry> enumerate_symmetries(const ColorUniverse& u);
uint64_t symmetry_count(const ColorUniverse& u);

} // namespace pgsynth
