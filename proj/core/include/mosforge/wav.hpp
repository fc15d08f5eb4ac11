// Copyright 2026 The mosforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOSFORGE_WAV_HPP_
#define MOSFORGE_WAV_HPP_

#include <string>
#include <vector>

namespace mosforge::wav {

// Mono 16-bit PCM little-endian only. Samples are linear in [-1, 1).
void write_wav(const std::string& path, const std::vector<double>& samples,
               int sample_rate);

// Returns samples scaled by 1/32768; throws IoError on malformed files or
// unsupported encodings.
std::vector<double> read_wav(const std::string& path, int* sample_rate);

}  // namespace mosforge::wav

#endif  // MOSFORGE_WAV_HPP_
