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

#ifndef MOSFORGE_CORPUS_HPP_
#define MOSFORGE_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mosforge::corpus {

// One audio source: a generation system or a human speaker. Sources are
// collectively the STC classes; type_ids are contiguous in [0, M).
struct SpoofingTypeSpec {
  int type_id = 0;
  bool is_human = false;
  double base_f0 = 150.0;       // Hz
  double jitter = 0.0;          // relative per-frame f0 perturbation, >= 0
  double shimmer = 0.0;         // relative per-frame amplitude perturbation, >= 0
  double noise_floor = 0.0;     // linear additive white-noise amplitude, >= 0
  double latent_quality = 3.0;  // in [1, 5]
};

struct RaterSpec {
  int rater_id = 0;
  double bias = 0.0;      // score offset
  double noise_sd = 0.0;  // score noise standard deviation, >= 0
};

struct Utterance {
  std::string utt_id;
  int type_id = 0;
  bool is_human = false;  // SD label: human = (1,0), spoofing = (0,1)
  std::vector<int> rater_scores;  // each in {1..5}
  double gt_mos = 0.0;            // arithmetic mean of rater_scores
  std::string audio_path;         // relative to the manifest directory
};

struct Manifest {
  std::string corpus_id;
  std::vector<SpoofingTypeSpec> specs;
  std::vector<Utterance> utterances;

  int num_types() const { return static_cast<int>(specs.size()); }
};

// Throws ValidationError on violated invariants (negative parameters,
// non-contiguous type ids, no human type, gt_mos mismatch, ...).
void validate_specs(const std::vector<SpoofingTypeSpec>& specs);
void validate_manifest(const Manifest& m);

// Synthesizes harmonic audio per spec, writes WAVs under out_dir/wav/, and
// simulates rater scores. Deterministic given seed; per-utterance randomness
// is derived from (seed, utt_id) so generation order does not matter.
Manifest generate_corpus(const std::vector<SpoofingTypeSpec>& specs,
                         const std::vector<RaterSpec>& raters,
                         int utts_per_type, int raters_per_utt,
                         double duration_s, int sample_rate, uint64_t seed,
                         const std::string& out_dir, int threads = 1);

// Disjoint random subsets of the requested sizes.
struct SplitResult {
  Manifest train, val, test;
};
SplitResult split_manifest(const Manifest& m, int train_n, int val_n,
                           int test_n, uint64_t seed);

// Per-type arithmetic mean of gt_mos; types with no utterances are absent.
std::map<int, double> system_mos(const Manifest& m);

// Manifest text format: UTF-8 TSV, header row, one utterance per row,
// rater scores semicolon-joined. specs are stored in a sibling
// <stem>.specs.tsv so a manifest file round-trips completely.
void save_manifest(const Manifest& m, const std::string& path);
Manifest load_manifest(const std::string& path);

// Default desk-scale corpus: M types (num_human of them human), parameters
// drawn deterministically from spec_seed. Human types have latent_quality
// >= 4.2 and near-clean acoustics; spoofing types tie latent quality to the
// degradation parameters so MOS is learnable from audio.
std::vector<SpoofingTypeSpec> default_specs(int num_types, int num_human,
                                            uint64_t spec_seed);
std::vector<RaterSpec> default_raters(int num_raters, uint64_t rater_seed,
                                      double bias_range = 0.4,
                                      double noise_lo = 0.2,
                                      double noise_hi = 0.6);

}  // namespace mosforge::corpus

#endif  // MOSFORGE_CORPUS_HPP_
