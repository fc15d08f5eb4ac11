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

#include "mosforge/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "mosforge/errors.hpp"

namespace mosforge::wav {

namespace {

void put_u32(std::string& out, uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

uint32_t get_u32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t get_u16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

void write_wav(const std::string& path, const std::vector<double>& samples,
               int sample_rate) {
  const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
  std::string buf;
  buf.reserve(44 + data_bytes);
  buf += "RIFF";
  put_u32(buf, 36 + data_bytes);
  buf += "WAVE";
  buf += "fmt ";
  put_u32(buf, 16);
  put_u16(buf, 1);  // PCM
  put_u16(buf, 1);  // mono
  put_u32(buf, static_cast<uint32_t>(sample_rate));
  put_u32(buf, static_cast<uint32_t>(sample_rate * 2));
  put_u16(buf, 2);   // block align
  put_u16(buf, 16);  // bits per sample
  buf += "data";
  put_u32(buf, data_bytes);
  for (double s : samples) {
    double scaled = std::nearbyint(s * 32767.0);
    if (scaled > 32767.0) scaled = 32767.0;
    if (scaled < -32768.0) scaled = -32768.0;
    put_u16(buf, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!f) throw IoError("short write: " + path);
}

std::vector<double> read_wav(const std::string& path, int* sample_rate) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string raw((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
  if (raw.size() < 44 || std::memcmp(p, "RIFF", 4) != 0 ||
      std::memcmp(p + 8, "WAVE", 4) != 0) {
    throw IoError("not a RIFF/WAVE file: " + path);
  }
  size_t pos = 12;
  int rate = 0;
  int bits = 0;
  int channels = 0;
  bool have_fmt = false;
  std::vector<double> samples;
  while (pos + 8 <= raw.size()) {
    uint32_t chunk_size = get_u32(p + pos + 4);
    const bool is_fmt = std::memcmp(p + pos, "fmt ", 4) == 0;
    const bool is_data = std::memcmp(p + pos, "data", 4) == 0;
    const size_t body = pos + 8;
    if (body + chunk_size > raw.size()) throw IoError("truncated chunk in " + path);
    if (is_fmt) {
      if (chunk_size < 16) throw IoError("short fmt chunk in " + path);
      if (get_u16(p + body) != 1) throw IoError("non-PCM wav unsupported: " + path);
      channels = get_u16(p + body + 2);
      rate = static_cast<int>(get_u32(p + body + 4));
      bits = get_u16(p + body + 14);
      have_fmt = true;
    } else if (is_data) {
      if (!have_fmt) throw IoError("data chunk before fmt in " + path);
      if (channels != 1 || bits != 16)
        throw IoError("only mono 16-bit PCM supported: " + path);
      samples.resize(chunk_size / 2);
      for (size_t i = 0; i < samples.size(); ++i) {
        int16_t v = static_cast<int16_t>(get_u16(p + body + 2 * i));
        samples[i] = static_cast<double>(v) / 32768.0;
      }
      if (sample_rate) *sample_rate = rate;
      return samples;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }
  throw IoError("no data chunk in " + path);
}

}  // namespace mosforge::wav
