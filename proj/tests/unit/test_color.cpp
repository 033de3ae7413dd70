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

#include <catch_amalgamated.hpp>

#include <set>

#include "pgsynth/color.hpp"
#include "pgsynth/error.hpp"

using namespace pgsynth;

namespace {

ColorUniverse universe(std::vector<ColorClass> classes) { return ColorUniverse(std::move(classes)); }

ColorClass cls(std::string name, std::vector<std::string> colors, std::vector<uint32_t> bounds)
{
    return {std::move(name), std::move(colors), std::move(bounds)};
}

} // namespace

TEST_CASE("symmetry count is the product of static subclass factorials")
{
    CHECK(symmetry_count(universe({cls("C", {"a", "b", "c"}, {0, 3})})) == 6);
    CHECK(symmetry_count(universe({cls("C", {"a", "b", "c", "d", "e"}, {0, 2, 5})})) == 12);
    CHECK(symmetry_count(universe({cls("C", {"a", "b"}, {0, 2}), cls("D", {"x", "y", "z"}, {0, 3})})) == 12);
}

TEST_CASE("enumeration lists every symmetry once, identity first")
{
    const auto u = universe({cls("C", {"a", "b", "c", "d"}, {0, 1, 4}), cls("D", {"x", "y"}, {0, 2})});
    const auto all = enumerate_symmetries(u);
    REQUIRE(all.size() == symmetry_count(u));
    CHECK(all.front().is_identity());
    std::set<std::vector<std::vector<uint32_t>>> seen;
    for (const auto& s : all) {
        CHECK(seen.insert(s.perms()).second);
        CHECK(s.apply(0, 0) == 0);  // a is alone in its static subclass
    }
}

TEST_CASE("symmetries form a group under composition")
{
    const auto u = universe({cls("C", {"a", "b", "c"}, {0, 3}), cls("D", {"x", "y"}, {0, 2})});
    const auto all = enumerate_symmetries(u);
    for (const auto& s : all) {
        CHECK(compose(s, invert(s)).is_identity());
        CHECK(compose(invert(s), s).is_identity());
        for (const auto& t : all) {
            const auto st = compose(s, t);
            for (uint32_t c = 0; c < 3; c++) CHECK(st.apply(0, c) == s.apply(0, t.apply(0, c)));
            for (const auto& r : all) CHECK(compose(compose(s, t), r) == compose(s, compose(t, r)));
        }
    }
}

TEST_CASE("malformed universes and symmetries are rejected")
{
    CHECK_THROWS_AS(universe({cls("C", {"a"}, {0, 1}), cls("C", {"b"}, {0, 1})}), Error);
    CHECK_THROWS_AS(universe({cls("C", {}, {0, 0})}), Error);
    CHECK_THROWS_AS(universe({cls("C", {"a", "b"}, {0, 3})}), Error);
    const auto u = universe({cls("C", {"a", "b", "c"}, {0, 1, 3})});
    try {
        Symmetry(u, {{1, 0, 2}});
        FAIL("a permutation leaving a static subclass was accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidUniverse);
    }
    CHECK_NOTHROW(Symmetry(u, {{0, 2, 1}}));
    const auto v = universe({cls("C", {"a", "b"}, {0, 2})});
    try {
        compose(Symmetry::identity(u), Symmetry::identity(v));
        FAIL("composition across universes was accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UniverseMismatch);
    }
}

TEST_CASE("tuples are permuted componentwise")
{
    const auto u = universe({cls("C", {"a", "b", "c"}, {0, 3}), cls("D", {"x", "y"}, {0, 2})});
    const Symmetry s(u, {{1, 2, 0}, {1, 0}});
    CHECK(s.apply({0, 1, 0}, {0, 1, 2}) == ColorTuple{1, 0, 0});
}
