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

#include "mosforge/dsp.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>

#include "mosforge/errors.hpp"

namespace mosforge::dsp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// In-place iterative radix-2 Cooley-Tukey. n must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -kTwoPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k)
    w[k] = 0.5 * (1.0 - std::cos(kTwoPi * k / static_cast<double>(n)));
  return w;
}

Spectrogram stft_magnitude(const Waveform& w, int fft_size, int hop) {
  if (!is_pow2(fft_size)) throw ValidationError("fft_size must be a power of two");
  if (hop < 1) throw ValidationError("hop must be >= 1");
  const int64_t n = static_cast<int64_t>(w.samples.size());
  if (n < fft_size)
    throw ValidationError("waveform shorter than one frame (" +
                          std::to_string(n) + " < " + std::to_string(fft_size) + ")");
  for (double s : w.samples)
    if (!std::isfinite(s)) throw ValidationError("non-finite sample in waveform");

  const int64_t frames = (n - fft_size) / hop + 1;
  const int64_t bins = fft_size / 2 + 1;
  const std::vector<double> win = hann_window(fft_size);

  Spectrogram out;
  out.frames = frames;
  out.bins = bins;
  out.fft_size = fft_size;
  out.hop = hop;
  out.values.resize(static_cast<size_t>(frames * bins));

  std::vector<std::complex<double>> buf(fft_size);
  for (int64_t t = 0; t < frames; ++t) {
    const double* x = w.samples.data() + t * hop;
    for (int k = 0; k < fft_size; ++k) buf[k] = {x[k] * win[k], 0.0};
    fft_radix2(buf);
    double* row = out.values.data() + t * bins;
    for (int64_t k = 0; k < bins; ++k) row[k] = std::abs(buf[k]);
  }
  return out;
}

void dump_spectrogram(const Spectrogram& s, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  auto put_i64 = [&f](int64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    f.write(reinterpret_cast<char*>(b), 8);
  };
  put_i64(s.frames);
  put_i64(s.bins);
  for (double v : s.values) {
    float fv = static_cast<float>(v);
    uint32_t u;
    std::memcpy(&u, &fv, 4);
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
    f.write(reinterpret_cast<char*>(b), 4);
  }
  if (!f) throw IoError("short write: " + path);
}

Spectrogram load_spectrogram_dump(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  auto get_i64 = [&f, &path]() {
    unsigned char b[8];
    f.read(reinterpret_cast<char*>(b), 8);
    if (!f) throw IoError("truncated spectrogram dump: " + path);
    int64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<int64_t>(b[i]) << (8 * i);
    return v;
  };
  Spectrogram s;
  s.frames = get_i64();
  s.bins = get_i64();
  if (s.frames < 1 || s.bins < 1) throw IoError("bad spectrogram header: " + path);
  s.values.resize(static_cast<size_t>(s.frames * s.bins));
  for (auto& v : s.values) {
    unsigned char b[4];
    f.read(reinterpret_cast<char*>(b), 4);
    if (!f) throw IoError("truncated spectrogram dump: " + path);
    uint32_t u = 0;
    for (int i = 0; i < 4; ++i) u |= static_cast<uint32_t>(b[i]) << (8 * i);
    float fv;
    std::memcpy(&fv, &u, 4);
    v = static_cast<double>(fv);
  }
  return s;
}

}  // namespace mosforge::dsp
