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

#include "pgsynth/game.hpp"

namespace pgsynth {

// Throws SyntaxError with "line L, column C" or ValidationError.
HLGame parse_model(const std::string& text);
std::string serialize_model(const HLGame& g);

// Client/Server family with n computers.
std::string generate_cs(unsigned n);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace pgsynth
