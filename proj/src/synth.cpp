#include "eegval/synth.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "eegval/eeg_io.hpp"
#include "eegval/features.hpp"
#include "eegval/rng.hpp"

namespace eegval {

void SynthConfig::validate() const {
    if (n_subjects_per_class < 1) throw InvalidConfig("need at least one subject per class");
    if (trials_per_subject < 1) throw InvalidConfig("need at least one trial per subject");
    if (n_samples < 2) throw InvalidConfig("n_samples must be >= 2");
    if (fs_hz <= 0.0) throw InvalidConfig("sampling rate must be positive");
    if (beta_boost_alcoholic < 1.0) throw InvalidConfig("beta boost must be >= 1");
    if (subject_effect_sd < 0.0) throw InvalidConfig("subject effect sd must be >= 0");
    if (noise_sd_uv < 0.0) throw InvalidConfig("noise sd must be >= 0");
    for (const auto& [band, amp] : base_band_amps_uv)
        if (amp < 0.0) throw InvalidConfig("band amplitude for " + band + " must be >= 0");
    for (const auto& [band, amp] : base_band_amps_uv) {
        bool known = false;
        for (const auto& b : default_bands()) known |= b.name == band;
        if (!known) throw InvalidConfig("unknown band name " + band);
    }
}

std::vector<std::string> SynthConfig::resolved_channels() const {
    return channels.empty() ? default_channel_subset() : channels;
}

namespace {

struct BandSpec {
    std::string name;
    double f_low, f_high;
    double base_amp;
};

std::vector<BandSpec> band_table(const SynthConfig& cfg) {
    std::vector<BandSpec> out;
    for (const auto& b : default_bands()) {
        auto it = cfg.base_band_amps_uv.find(b.name);
        double amp = it == cfg.base_band_amps_uv.end() ? 0.0 : it->second;
        out.push_back({b.name, b.f_low_hz, b.f_high_hz, amp});
    }
    return out;
}

} // namespace

Dataset generate_corpus(const SynthConfig& cfg) {
    cfg.validate();
    const auto chans = cfg.resolved_channels();
    const auto bands = band_table(cfg);
    constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

    Dataset out;
    for (int label : {kLabelControl, kLabelAlcoholic}) {
        for (int s = 0; s < cfg.n_subjects_per_class; ++s) {
            std::ostringstream sid;
            sid << "sy" << (label == kLabelAlcoholic ? 'a' : 'c') << std::setw(3)
                << std::setfill('0') << s;
            const std::string subject_id = sid.str();

            // per-subject multiplicative effects, shared by all of the
            // subject's trials; the substream depends only on (label, s)
            Rng subject_rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(label),
                                                   static_cast<std::uint64_t>(s)}));
            std::vector<double> subject_mult(bands.size());
            for (std::size_t b = 0; b < bands.size(); ++b)
                subject_mult[b] = std::exp(cfg.subject_effect_sd * subject_rng.normal());

            for (int tr = 0; tr < cfg.trials_per_subject; ++tr) {
                Rng trial_rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(label),
                                                     static_cast<std::uint64_t>(s),
                                                     static_cast<std::uint64_t>(tr)}));
                EegTrial trial;
                trial.subject_id = subject_id;
                trial.class_label = label;
                trial.channels = chans;
                trial.sampling_rate_hz = cfg.fs_hz;
                trial.trial_id = subject_id + "_t" + std::to_string(tr);
                trial.samples = Matrix(chans.size(), cfg.n_samples);

                for (std::size_t c = 0; c < chans.size(); ++c) {
                    auto row = trial.samples.row(c);
                    for (std::size_t b = 0; b < bands.size(); ++b) {
                        double amp = bands[b].base_amp * subject_mult[b];
                        if (label == kLabelAlcoholic && bands[b].name == "beta")
                            amp *= cfg.beta_boost_alcoholic;
                        double freq = trial_rng.uniform(bands[b].f_low, bands[b].f_high);
                        double phase = trial_rng.uniform(0.0, kTwoPi);
                        if (amp == 0.0) continue;
                        for (int t = 0; t < cfg.n_samples; ++t)
                            row[t] += amp * std::sin(kTwoPi * freq * t / cfg.fs_hz + phase);
                    }
                    if (cfg.noise_sd_uv > 0.0)
                        for (int t = 0; t < cfg.n_samples; ++t)
                            row[t] += trial_rng.normal(0.0, cfg.noise_sd_uv);
                }
                out.trials.push_back(std::move(trial));
            }
        }
    }
    out.validate();
    return out;
}

std::string describe_generator(const SynthConfig& cfg) {
    cfg.validate();
    std::ostringstream out;
    out << "synthetic EEG corpus generator\n";
    out << "  subjects_per_class=" << cfg.n_subjects_per_class
        << " trials_per_subject=" << cfg.trials_per_subject << "\n";
    out << "  channels=" << cfg.resolved_channels().size() << " n_samples=" << cfg.n_samples
        << " fs_hz=" << cfg.fs_hz << "\n";
    out << "  beta_boost_alcoholic=" << cfg.beta_boost_alcoholic
        << " subject_effect_sd=" << cfg.subject_effect_sd << " noise_sd_uv=" << cfg.noise_sd_uv
        << "\n";
    out << "  base_band_amps_uv={";
    bool first = true;
    for (const auto& [band, amp] : cfg.base_band_amps_uv) {
        if (!first) out << ", ";
        out << band << "=" << amp;
        first = false;
    }
    out << "}\n";
    out << "  seed=" << cfg.seed << "\n";
    return out.str();
}

} // namespace eegval
