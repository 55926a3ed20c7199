/*
 * Copyright 2026 The Trailmap Authors
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
#include <string>
#include <string_view>

namespace trailmap::hash {

// 64-bit FNV-1a, optionally seeded by folding `seed` into the offset basis.
// Stable across platforms; used for feature hashing and screenshot ids.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0) noexcept;

// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

std::string to_hex(std::uint64_t value);

} // namespace trailmap::hash
