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

#ifndef MOSFORGE_DSP_HPP_
#define MOSFORGE_DSP_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace mosforge::dsp {

struct Waveform {
  std::vector<double> samples;  // linear amplitude
  int sample_rate = 0;
};

// Magnitude time-frequency matrix, frame-major. bins = fft_size/2 + 1.
struct Spectrogram {
  int64_t frames = 0;
  int64_t bins = 0;
  int fft_size = 0;
  int hop = 0;
  std::vector<double> values;  // frames x bins, row-major

  double at(int64_t t, int64_t k) const { return values[t * bins + k]; }
};

// Hann-windowed magnitude STFT. No padding: frame t covers
// samples[t*hop, t*hop + fft_size); T = floor((n - fft_size)/hop) + 1.
// Throws ValidationError if the waveform is shorter than one frame.
Spectrogram stft_magnitude(const Waveform& w, int fft_size = 512, int hop = 256);

// Periodic Hann window of length n: 0.5*(1 - cos(2*pi*k/n)).
std::vector<double> hann_window(int n);

// Binary dump: int64 T, int64 bins, then T*bins little-endian float32.
void dump_spectrogram(const Spectrogram& s, const std::string& path);
Spectrogram load_spectrogram_dump(const std::string& path);

}  // namespace mosforge::dsp

#endif  // MOSFORGE_DSP_HPP_
