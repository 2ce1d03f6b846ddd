// tests/test_mix.cc

#include <cmath>
#include <filesystem>
#include <numbers>

#include "base/rng.h"
#include "doctest.h"
#include "dsp/wav_io.h"
#include "mix/gain.h"
#include "mix/manifest.h"
#include "mix/mixture.h"
#include "mix/synth.h"
#include "mix/triplet.h"
#include "testing/oracles.h"

using namespace tase;
using dsp::Waveform;

namespace {

Waveform Sine(size_t n, double freq, double amp) {
  Waveform w;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    w.samples[i] = static_cast<float>(
        amp * std::sin(2.0 * std::numbers::pi * freq * i / 16000.0));
  return w;
}

Waveform RandomWave(size_t n, uint64_t seed, double amp = 0.3) {
  Rng rng = MakeRng(seed);
  Waveform w;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    w.samples[i] = static_cast<float>(UniformReal(rng, -amp, amp));
  return w;
}

// In-memory toy corpus of synthetic speakers.
mix::SpeakerCorpus ToyCorpus(int speakers, int utts, double dur_s,
                             uint64_t seed) {
  mix::SpeakerCorpus corpus;
  for (int s = 0; s < speakers; ++s) {
    Rng rng = MakeRng(seed, s);
    mix::SpeakerUtterances spk;
    spk.speaker_id = "spk" + std::to_string(s);
    mix::VoiceProfile voice = mix::SampleVoice(rng);
    for (int u = 0; u < utts; ++u)
      spk.utterances.push_back(mix::SynthUtterance(voice, dur_s, rng));
    corpus.speakers.push_back(std::move(spk));
  }
  return corpus;
}

}  // namespace

TEST_CASE("scale_to_sir: equal power at 0 dB keeps the signal") {
  Waveform t = Sine(8000, 440, 0.5), i = Sine(8000, 557, 0.5);
  Waveform scaled = mix::ScaleToSir(t, i, 0.0);
  const double ratio = mix::MeasureRatioDb(t, scaled);
  CHECK(std::abs(ratio) < 0.01);
}

TEST_CASE("scale_to_sir: infinite SIR silences the interferer") {
  Waveform t = Sine(8000, 440, 0.5), i = RandomWave(6000, 1);
  Waveform scaled = mix::ScaleToSir(t, i, mix::kInfDb);
  CHECK(scaled.size() == i.size());
  for (double s : scaled.samples) CHECK(s == 0.0f);
}

TEST_CASE("scale_to_sir: 6 dB gain against the power-ratio oracle") {
  Waveform t = Sine(16000, 440, 0.5), i = Sine(16000, 557, 0.5);
  Waveform scaled = mix::ScaleToSir(t, i, 6.0);
  // Equal-power inputs: expected amplitude gain 10^(-6/20).
  const double expected_gain = std::pow(10.0, -6.0 / 20.0);
  CHECK(scaled.samples[500] / i.samples[500] ==
        doctest::Approx(expected_gain).epsilon(1e-5));
  CHECK(mix::MeasureRatioDb(t, scaled) == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("scale_to_sir: zero-power interferer rejected at finite SIR") {
  Waveform t = Sine(8000, 440, 0.5);
  Waveform zero;
  zero.samples.assign(8000, 0.0f);
  CHECK_THROWS_AS(mix::ScaleToSir(t, zero, 6.0), std::invalid_argument);
}

TEST_CASE("add_noise_at_snr: 30 dB gain and re-measurement") {
  Waveform s = Sine(16000, 300, 0.4), n = Sine(16000, 1234, 0.4);
  Waveform out = mix::AddNoiseAtSnr(s, n, 30.0);
  // out - s is the scaled noise; re-measure the ratio.
  Waveform resid;
  resid.samples.resize(out.size());
  for (size_t i = 0; i < out.size(); ++i)
    resid.samples[i] = out.samples[i] - s.samples[i];
  CHECK(mix::MeasureRatioDb(s, resid) == doctest::Approx(30.0).epsilon(1e-3));
  const double expected_gain = std::pow(10.0, -30.0 / 20.0);
  CHECK(resid.samples[100] / n.samples[100] ==
        doctest::Approx(expected_gain).epsilon(1e-4));
}

TEST_CASE("add_noise_at_snr: coherent same-signal case doubles the output") {
  Waveform s = Sine(8000, 500, 0.3);
  Waveform out = mix::AddNoiseAtSnr(s, s, 0.0);
  for (size_t i = 0; i < out.size(); i += 97)
    CHECK(out.samples[i] == doctest::Approx(2.0 * s.samples[i]).epsilon(1e-5));
}

TEST_CASE("add_noise_at_snr: random pairs re-measure within 0.01 dB") {
  Rng rng = MakeRng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Waveform s = RandomWave(9000, 100 + trial);
    Waveform n = RandomWave(4000, 200 + trial);  // shorter: exercises looping
    const double snr = UniformReal(rng, 0.0, 30.0);
    Waveform out = mix::AddNoiseAtSnr(s, n, snr);
    Waveform resid;
    resid.samples.resize(out.size());
    for (size_t i = 0; i < out.size(); ++i)
      resid.samples[i] = out.samples[i] - s.samples[i];
    CHECK(std::abs(mix::MeasureRatioDb(s, resid) - snr) < 0.01);
  }
}

TEST_CASE("make_mixture: single-speaker branch has no interference") {
  mix::MixtureSpec spec{1, mix::kInfDb, 30.0};
  Waveform t = Sine(8000, 440, 0.4);
  Rng rng = MakeRng(3);
  mix::MixtureResult r =
      mix::MakeMixture(spec, t, {}, mix::SynthNoise(8000, rng), rng);
  for (double v : r.interference.samples) CHECK(v == 0.0f);
  CHECK(r.MeasuredSnrDb() == doctest::Approx(30.0).epsilon(1e-3));
  CHECK(r.mixture.size() == t.size());
}

TEST_CASE("make_mixture: three speakers at 0 dB SIR balance power") {
  mix::MixtureSpec spec{3, 0.0, 30.0};
  Waveform t = Sine(16000, 200, 0.4);
  std::vector<Waveform> interferers = {Sine(12000, 315, 0.5),
                                       Sine(20000, 477, 0.2)};
  Rng rng = MakeRng(8);
  mix::MixtureResult r =
      mix::MakeMixture(spec, t, interferers, mix::SynthNoise(16000, rng), rng);
  CHECK(std::abs(r.MeasuredSirDb() - 0.0) < 0.01);
  CHECK(std::abs(r.MeasuredSnrDb() - 30.0) < 0.01);
}

TEST_CASE("make_mixture: deterministic under a fixed seed") {
  mix::MixtureSpec spec{2, 6.0, 12.0};
  Waveform t = RandomWave(9000, 31);
  std::vector<Waveform> interferers = {RandomWave(7000, 32)};
  Waveform noise = RandomWave(5000, 33, 0.1);
  Rng rng1 = MakeRng(55), rng2 = MakeRng(55);
  mix::MixtureResult a = mix::MakeMixture(spec, t, interferers, noise, rng1);
  mix::MixtureResult b = mix::MakeMixture(spec, t, interferers, noise, rng2);
  CHECK(a.mixture.samples == b.mixture.samples);
}

TEST_CASE("null_reference: sigma, mean, and seeding behavior") {
  Rng rng = MakeRng(17);
  Waveform n = mix::NullReference(100000, rng);
  const double mean = dsp::SampleMean(n);
  double var = 0.0;
  for (double v : n.samples) var += (double(v) - mean) * (double(v) - mean);
  var /= n.size();
  const double sigma = std::sqrt(var);
  CHECK(sigma >= 0.9e-6);
  CHECK(sigma <= 1.1e-6);
  CHECK(std::abs(mean) < 1e-7);

  Rng a = MakeRng(1), b = MakeRng(1), c = MakeRng(2);
  CHECK(mix::NullReference(64, a).samples == mix::NullReference(64, b).samples);
  Rng a2 = MakeRng(1);
  CHECK(mix::NullReference(64, a2).samples !=
        mix::NullReference(64, c).samples);
}

TEST_CASE("triplet sampler: label frequency matches the 11:1 ratio") {
  mix::SpeakerCorpus corpus = ToyCorpus(6, 4, 1.0, 9);
  Rng rng = MakeRng(2024);
  int nontarget = 0;
  for (int i = 0; i < 12000; ++i) {
    mix::TripletPlan plan = mix::SampleTripletPlan(corpus, rng);
    nontarget += plan.label == mix::TripletLabel::kNontarget;
  }
  // Binomial(12000, 1/12): mean 1000, sd ~30.3; +-2.576 sd is [922, 1078].
  CHECK(nontarget >= 922);
  CHECK(nontarget <= 1078);
}

TEST_CASE("triplet sampler: speaker count and SIR grids are uniform") {
  mix::SpeakerCorpus corpus = ToyCorpus(8, 4, 1.0, 10);
  Rng rng = MakeRng(31337);
  std::vector<int> spk_counts(3, 0), sir_counts(4, 0);
  for (int i = 0; i < 6000; ++i) {
    mix::TripletPlan plan = mix::SampleTripletPlan(corpus, rng);
    spk_counts[plan.spec.n_speakers - 1]++;
    for (size_t j = 0; j < mix::kSirGridDb.size(); ++j)
      if (plan.spec.sir_db == mix::kSirGridDb[j] ||
          (std::isinf(plan.spec.sir_db) && std::isinf(mix::kSirGridDb[j])))
        sir_counts[j]++;
  }
  CHECK(testing::Chi2Uniform(spk_counts) < testing::Chi2Crit99(2));
  CHECK(testing::Chi2Uniform(sir_counts) < testing::Chi2Crit99(3));
}

TEST_CASE("triplet sampler: label semantics") {
  mix::SpeakerCorpus corpus = ToyCorpus(5, 4, 1.0, 11);
  Rng rng = MakeRng(4242);
  int seen_nontarget = 0, seen_target = 0;
  for (int i = 0; i < 60; ++i) {
    mix::TripletSamplerOptions opts;
    opts.nontarget_ratio = 1.0;  // force frequent nontargets
    opts.mix_samples = 8000;
    mix::TrainingTriplet t = mix::SampleTriplet(corpus, rng, opts);
    if (t.label == mix::TripletLabel::kNontarget) {
      ++seen_nontarget;
      for (int s : t.mixture_speakers) CHECK(s != t.enrolled_speaker);
      CHECK(t.reference.empty());
    } else {
      ++seen_target;
      CHECK(t.mixture_speakers[0] == t.enrolled_speaker);
      REQUIRE_FALSE(t.reference.empty());
      // Reference equals the clean pre-mix target component.
      CHECK(t.reference.samples == t.parts.reference.samples);
    }
  }
  CHECK(seen_nontarget > 0);
  CHECK(seen_target > 0);
}

TEST_CASE("triplet sampler: rejects single-speaker corpora") {
  mix::SpeakerCorpus corpus = ToyCorpus(1, 3, 1.0, 12);
  Rng rng = MakeRng(1);
  CHECK_THROWS_AS(mix::SampleTripletPlan(corpus, rng), std::invalid_argument);
}

TEST_CASE("triplet sampler: emitted mixtures re-measure within 0.01 dB") {
  mix::SpeakerCorpus corpus = ToyCorpus(6, 4, 1.2, 13);
  Rng rng = MakeRng(606);
  mix::TripletSamplerOptions opts;
  opts.mix_samples = 12000;
  for (int i = 0; i < 40; ++i) {
    mix::TrainingTriplet t = mix::SampleTriplet(corpus, rng, opts);
    if (!(std::isinf(t.spec.sir_db)) && t.spec.n_speakers > 1)
      CHECK(std::abs(t.parts.MeasuredSirDb() - t.spec.sir_db) < 0.01);
    CHECK(std::abs(t.parts.MeasuredSnrDb() - t.spec.snr_db) < 0.01);
  }
}

TEST_CASE("manifest: write/read round trip and determinism") {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "tase_mix_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp / "speakers");

  mix::SpeakerCorpus corpus = ToyCorpus(4, 3, 1.0, 14);
  for (auto &spk : corpus.speakers) {
    fs::create_directories(tmp / "speakers" / spk.speaker_id);
    for (size_t u = 0; u < spk.utterances.size(); ++u) {
      const std::string rel = spk.speaker_id + "/utt" + std::to_string(u) + ".wav";
      dsp::WriteWav((tmp / "speakers" / rel).string(), spk.utterances[u]);
      spk.utterance_ids.push_back(rel);
    }
  }

  mix::SimulateOptions opts;
  opts.n_triplets = 12;
  opts.seed = 77;
  opts.mix_samples = 8000;
  mix::CorpusManifest manifest = mix::SimulateCorpus(
      corpus, (tmp / "speakers").string(), (tmp / "out").string(), opts);

  mix::CorpusManifest readback =
      mix::ReadManifest((tmp / "out" / "manifest.tsv").string());
  CHECK(readback.seed == 77);
  REQUIRE(readback.entries.size() == manifest.entries.size());
  for (size_t i = 0; i < readback.entries.size(); ++i) {
    const auto &a = readback.entries[i], &b = manifest.entries[i];
    CHECK(a.id == b.id);
    CHECK(a.label == b.label);
    CHECK(a.enroll_paths == b.enroll_paths);
    CHECK(a.mix_path == b.mix_path);
    CHECK(a.ref_path == b.ref_path);
    CHECK(a.n_speakers == b.n_speakers);
    CHECK((a.sir_db == b.sir_db ||
           (std::isinf(a.sir_db) && std::isinf(b.sir_db))));
    CHECK(a.snr_db == b.snr_db);
    CHECK(a.speaker_ids == b.speaker_ids);
    // Every referenced file exists.
    for (const std::string &p : a.enroll_paths) CHECK(fs::exists(p));
    CHECK(fs::exists(tmp / "out" / a.mix_path));
    if (!a.ref_path.empty()) CHECK(fs::exists(tmp / "out" / a.ref_path));
  }

  // Rebuilding a triplet from (seed, id) reproduces the emitted audio.
  mix::TrainingTriplet again = mix::RebuildTriplet(corpus, opts, opts.seed, 3);
  Waveform emitted =
      dsp::ReadWav((tmp / "out" / manifest.entries[3].mix_path).string());
  REQUIRE(emitted.size() == again.test_mixture.size());
  for (size_t i = 0; i < emitted.size(); ++i)
    CHECK(std::abs(emitted.samples[i] - again.test_mixture.samples[i]) <=
          0.5f / 32768.0f + 1e-7f);
  fs::remove_all(tmp);
}
