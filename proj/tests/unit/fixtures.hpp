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

#include <memory>
#include <string>

#include "pgsynth/model.hpp"

namespace pgsynth::testing {

inline std::shared_ptr<const HLGame> cs_game(unsigned n)
{
    return std::make_shared<const HLGame>(parse_model(generate_cs(n)));
}

inline std::shared_ptr<const HLGame> model_game(const std::string& name)
{
    return std::make_shared<const HLGame>(parse_model(read_file(std::string(PGSYNTH_SOURCE_DIR) + "/tests/models/" + name)));
}

} // namespace pgsynth::testing
