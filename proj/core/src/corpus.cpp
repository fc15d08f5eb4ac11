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

#include "mosforge/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mosforge/errors.hpp"
#include "mosforge/rng.hpp"
#include "mosforge/util.hpp"
#include "mosforge/wav.hpp"

namespace fs = std::filesystem;

namespace mosforge::corpus {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kHarmonics = 5;
constexpr double kBaseAmplitude = 0.2;

double mean_of(const std::vector<int>& v) {
  double s = 0.0;
  for (int x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Harmonic tone with per-frame (10 ms) multiplicative jitter on f0 and
// shimmer on amplitude, plus white noise at noise_floor.
std::vector<double> synthesize(const SpoofingTypeSpec& spec, int n_samples,
                               int sample_rate, Rng& rng) {
  std::vector<double> x(n_samples);
  const int frame_len = std::max(1, sample_rate / 100);
  double phase = 0.0;
  double f0 = spec.base_f0;
  double amp = kBaseAmplitude;
  for (int i = 0; i < n_samples; ++i) {
    if (i % frame_len == 0) {
      f0 = spec.base_f0 * std::max(0.05, 1.0 + spec.jitter * rng.gaussian());
      amp = kBaseAmplitude * std::max(0.05, 1.0 + spec.shimmer * rng.gaussian());
    }
    phase += kTwoPi * f0 / sample_rate;
    if (phase > kTwoPi) phase -= kTwoPi;
    double s = 0.0;
    for (int h = 1; h <= kHarmonics; ++h) s += amp / h * std::sin(h * phase);
    x[i] = s + spec.noise_floor * rng.gaussian();
  }
  return x;
}

std::string make_utt_id(int type_id, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "t%02d_u%03d", type_id, index);
  return buf;
}

std::string specs_path_for(const std::string& manifest_path) {
  fs::path p(manifest_path);
  fs::path q = p.parent_path() / (p.stem().string() + ".specs.tsv");
  return q.string();
}

void save_specs(const std::vector<SpoofingTypeSpec>& specs,
                const std::string& path) {
  std::ostringstream out;
  out << "type_id\tis_human\tbase_f0\tjitter\tshimmer\tnoise_floor\tlatent_quality\n";
  for (const auto& s : specs) {
    out << s.type_id << '\t' << (s.is_human ? 1 : 0) << '\t'
        << fmt_double(s.base_f0) << '\t' << fmt_double(s.jitter) << '\t'
        << fmt_double(s.shimmer) << '\t' << fmt_double(s.noise_floor) << '\t'
        << fmt_double(s.latent_quality) << '\n';
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << out.str();
}

std::vector<SpoofingTypeSpec> load_specs(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty specs file: " + path);
  std::vector<SpoofingTypeSpec> specs;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 7) throw IoError("bad specs row in " + path + ": " + line);
    SpoofingTypeSpec s;
    s.type_id = std::stoi(cols[0]);
    s.is_human = cols[1] == "1";
    s.base_f0 = std::stod(cols[2]);
    s.jitter = std::stod(cols[3]);
    s.shimmer = std::stod(cols[4]);
    s.noise_floor = std::stod(cols[5]);
    s.latent_quality = std::stod(cols[6]);
    specs.push_back(s);
  }
  return specs;
}

}  // namespace

void validate_specs(const std::vector<SpoofingTypeSpec>& specs) {
  if (specs.empty()) throw ValidationError("spec list is empty");
  std::vector<bool> seen(specs.size(), false);
  bool any_human = false;
  for (const auto& s : specs) {
    if (s.type_id < 0 || s.type_id >= static_cast<int>(specs.size()) ||
        seen[s.type_id])
      throw ValidationError("type_ids must be unique and contiguous in [0, M)");
    seen[s.type_id] = true;
    if (s.base_f0 <= 0.0) throw ValidationError("base_f0 must be positive");
    if (s.jitter < 0.0) throw ValidationError("jitter must be >= 0");
    if (s.shimmer < 0.0) throw ValidationError("shimmer must be >= 0");
    if (s.noise_floor < 0.0) throw ValidationError("noise_floor must be >= 0");
    if (s.latent_quality < 1.0 || s.latent_quality > 5.0)
      throw ValidationError("latent_quality must be in [1, 5]");
    if (s.is_human) {
      any_human = true;
      if (s.latent_quality < 4.0)
        throw ValidationError("human specs require latent_quality >= 4.0");
    }
  }
  if (!any_human) throw ValidationError("at least one spec must be human");
}

void validate_manifest(const Manifest& m) {
  validate_specs(m.specs);
  for (const auto& u : m.utterances) {
    if (u.type_id < 0 || u.type_id >= static_cast<int>(m.specs.size()))
      throw ValidationError("utterance " + u.utt_id + " references unknown type_id");
    const auto& spec = m.specs[u.type_id];
    if (spec.type_id != u.type_id)
      throw ValidationError("spec table not indexed by type_id");
    if (u.is_human != spec.is_human)
      throw ValidationError("utterance " + u.utt_id + " sd_label disagrees with spec");
    if (u.rater_scores.empty())
      throw ValidationError("utterance " + u.utt_id + " has no rater scores");
    for (int s : u.rater_scores)
      if (s < 1 || s > 5)
        throw ValidationError("utterance " + u.utt_id + " has score outside [1,5]");
    if (std::abs(u.gt_mos - mean_of(u.rater_scores)) >= 1e-12)
      throw ValidationError("utterance " + u.utt_id + " gt_mos != mean(rater_scores)");
  }
}

Manifest generate_corpus(const std::vector<SpoofingTypeSpec>& specs,
                         const std::vector<RaterSpec>& raters,
                         int utts_per_type, int raters_per_utt,
                         double duration_s, int sample_rate, uint64_t seed,
                         const std::string& out_dir, int threads) {
  validate_specs(specs);
  if (raters.empty()) throw ValidationError("rater list is empty");
  for (const auto& r : raters)
    if (r.noise_sd < 0.0) throw ValidationError("rater noise_sd must be >= 0");
  if (utts_per_type < 1) throw ValidationError("utts_per_type must be >= 1");
  if (raters_per_utt < 1) throw ValidationError("raters_per_utt must be >= 1");
  if (raters_per_utt > static_cast<int>(raters.size()))
    throw ValidationError("raters_per_utt exceeds the rater pool");
  if (sample_rate < 8000) throw ValidationError("sample_rate must be >= 8000");
  if (duration_s <= 0.0) throw ValidationError("duration_s must be positive");

  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "wav", ec);
  if (ec) throw IoError("cannot create " + out_dir + "/wav: " + ec.message());

  // Spec-major order; a spec table sorted by type_id keeps ids == indices.
  std::vector<SpoofingTypeSpec> sorted = specs;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.type_id < b.type_id; });

  Manifest m;
  m.corpus_id = "synthetic_seed" + std::to_string(seed);
  m.specs = sorted;
  const int n_utts = static_cast<int>(sorted.size()) * utts_per_type;
  m.utterances.resize(n_utts);

  const int n_samples = static_cast<int>(std::lround(duration_s * sample_rate));
  parallel_for(n_utts, threads, [&](int64_t i) {
    const auto& spec = sorted[i / utts_per_type];
    const int index = static_cast<int>(i % utts_per_type);
    Utterance u;
    u.utt_id = make_utt_id(spec.type_id, index);
    u.type_id = spec.type_id;
    u.is_human = spec.is_human;
    u.audio_path = "wav/" + u.utt_id + ".wav";

    Rng rng(mix_seed(seed, u.utt_id));
    auto samples = synthesize(spec, n_samples, sample_rate, rng);
    wav::write_wav((fs::path(out_dir) / u.audio_path).string(), samples,
                   sample_rate);

    // raters_per_utt raters chosen uniformly without replacement.
    std::vector<int> pool(raters.size());
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < raters_per_utt; ++k) {
      int pick = static_cast<int>(
          rng.uniform_int(k, static_cast<int64_t>(pool.size()) - 1));
      std::swap(pool[k], pool[pick]);
      const auto& r = raters[pool[k]];
      double raw = spec.latent_quality + r.bias + rng.gaussian(0.0, r.noise_sd);
      int score = static_cast<int>(std::lround(raw));
      u.rater_scores.push_back(std::clamp(score, 1, 5));
    }
    u.gt_mos = mean_of(u.rater_scores);
    m.utterances[i] = std::move(u);
  });

  validate_manifest(m);
  return m;
}

SplitResult split_manifest(const Manifest& m, int train_n, int val_n,
                           int test_n, uint64_t seed) {
  if (train_n < 0 || val_n < 0 || test_n < 0)
    throw ValidationError("split sizes must be >= 0");
  const int64_t total = train_n + static_cast<int64_t>(val_n) + test_n;
  if (total > static_cast<int64_t>(m.utterances.size()))
    throw ValidationError("split sizes exceed corpus size (" +
                          std::to_string(total) + " > " +
                          std::to_string(m.utterances.size()) + ")");
  std::vector<int> order(m.utterances.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(seed, "split"));
  rng.shuffle(order);

  auto take = [&](int offset, int count, const char* tag) {
    Manifest out;
    out.corpus_id = m.corpus_id + ":" + tag;
    out.specs = m.specs;
    out.utterances.reserve(count);
    for (int i = 0; i < count; ++i)
      out.utterances.push_back(m.utterances[order[offset + i]]);
    return out;
  };
  SplitResult r;
  r.train = take(0, train_n, "train");
  r.val = take(train_n, val_n, "val");
  r.test = take(train_n + val_n, test_n, "test");
  return r;
}

std::map<int, double> system_mos(const Manifest& m) {
  if (m.utterances.empty()) throw ValidationError("manifest is empty");
  std::map<int, double> sums;
  std::map<int, int> counts;
  for (const auto& u : m.utterances) {
    sums[u.type_id] += u.gt_mos;
    counts[u.type_id] += 1;
  }
  std::map<int, double> out;
  for (const auto& [tid, s] : sums) out[tid] = s / counts[tid];
  return out;
}

void save_manifest(const Manifest& m, const std::string& path) {
  std::ostringstream out;
  out << "utt_id\ttype_id\tis_human\trater_scores\tgt_mos\taudio_path\n";
  for (const auto& u : m.utterances) {
    out << u.utt_id << '\t' << u.type_id << '\t' << (u.is_human ? 1 : 0) << '\t';
    for (size_t i = 0; i < u.rater_scores.size(); ++i) {
      if (i) out << ';';
      out << u.rater_scores[i];
    }
    out << '\t' << fmt_double(u.gt_mos) << '\t' << u.audio_path << '\n';
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << out.str();
  if (!f) throw IoError("short write: " + path);
  save_specs(m.specs, specs_path_for(path));
}

Manifest load_manifest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty manifest: " + path);

  Manifest m;
  m.corpus_id = fs::path(path).stem().string();
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 6) throw IoError("bad manifest row in " + path + ": " + line);
    Utterance u;
    u.utt_id = cols[0];
    u.type_id = std::stoi(cols[1]);
    u.is_human = cols[2] == "1";
    for (const auto& s : split(cols[3], ';')) u.rater_scores.push_back(std::stoi(s));
    u.gt_mos = std::stod(cols[4]);
    u.audio_path = cols[5];
    // Text round-trip may lose the last ulp; the in-memory invariant is exact.
    u.gt_mos = mean_of(u.rater_scores);
    m.utterances.push_back(std::move(u));
  }

  const std::string spath = specs_path_for(path);
  if (fs::exists(spath)) {
    m.specs = load_specs(spath);
  } else {
    // Minimal reconstruction: one spec per referenced type.
    std::map<int, std::pair<bool, std::pair<double, int>>> agg;
    for (const auto& u : m.utterances) {
      auto& a = agg[u.type_id];
      a.first = u.is_human;
      a.second.first += u.gt_mos;
      a.second.second += 1;
    }
    for (const auto& [tid, a] : agg) {
      SpoofingTypeSpec s;
      s.type_id = tid;
      s.is_human = a.first;
      double mean = a.second.first / a.second.second;
      s.latent_quality = std::clamp(s.is_human ? std::max(4.0, mean) : mean, 1.0, 5.0);
      m.specs.push_back(s);
    }
  }
  validate_manifest(m);
  return m;
}

std::vector<SpoofingTypeSpec> default_specs(int num_types, int num_human,
                                            uint64_t spec_seed) {
  if (num_types < 2) throw ValidationError("num_types must be >= 2");
  if (num_human < 1 || num_human >= num_types)
    throw ValidationError("num_human must be in [1, num_types)");
  Rng rng(mix_seed(spec_seed, "specs"));
  std::vector<SpoofingTypeSpec> specs;
  for (int t = 0; t < num_types; ++t) {
    SpoofingTypeSpec s;
    s.type_id = t;
    s.is_human = t < num_human;
    if (s.is_human) {
      s.base_f0 = rng.uniform(100.0, 220.0);
      s.jitter = rng.uniform(0.002, 0.01);
      s.shimmer = rng.uniform(0.005, 0.02);
      s.noise_floor = rng.uniform(0.0005, 0.002);
      s.latent_quality = rng.uniform(4.2, 4.9);
    } else {
      s.base_f0 = rng.uniform(90.0, 300.0);
      s.jitter = rng.uniform(0.005, 0.08);
      s.shimmer = rng.uniform(0.01, 0.12);
      s.noise_floor = rng.uniform(0.001, 0.05);
      // Latent quality reflects the acoustic degradations so that MOS is
      // predictable from the waveform, mirroring a plausible quality scale.
      double q = 4.45 - 14.0 * s.jitter - 7.0 * s.shimmer -
                 9.0 * std::sqrt(s.noise_floor) + rng.uniform(-0.15, 0.15);
      s.latent_quality = std::clamp(q, 1.3, 4.3);
    }
    specs.push_back(s);
  }
  return specs;
}

std::vector<RaterSpec> default_raters(int num_raters, uint64_t rater_seed,
                                      double bias_range, double noise_lo,
                                      double noise_hi) {
  if (num_raters < 1) throw ValidationError("num_raters must be >= 1");
  Rng rng(mix_seed(rater_seed, "raters"));
  std::vector<RaterSpec> raters;
  for (int i = 0; i < num_raters; ++i) {
    RaterSpec r;
    r.rater_id = i;
    r.bias = rng.uniform(-bias_range, bias_range);
    r.noise_sd = rng.uniform(noise_lo, noise_hi);
    raters.push_back(r);
  }
  return raters;
}

}  // namespace mosforge::corpus
