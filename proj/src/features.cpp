#include "eegval/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eegval/errors.hpp"

namespace eegval {

const std::vector<BandDefinition>& default_bands() {
    static const std::vector<BandDefinition> bands = {
        {"delta", 0.5, 4.0},
        {"theta", 4.0, 8.0},
        {"alpha", 8.0, 13.0},
        {"beta", 13.0, 30.0},
    };
    return bands;
}

void validate_bands(const std::vector<BandDefinition>& bands) {
    if (bands.empty()) throw InvalidConfig("band list is empty");
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto& b = bands[i];
        if (b.f_low_hz < 0.0 || b.f_low_hz >= b.f_high_hz)
            throw InvalidConfig("band " + b.name + " needs 0 <= low < high");
        if (i > 0 && bands[i - 1].f_high_hz > b.f_low_hz)
            throw InvalidConfig("bands must be non-overlapping and ascending");
    }
}

std::vector<double> normalize_maxabs(std::span<const double> signal) {
    if (signal.empty()) throw EmptyInput("empty signal");
    double peak = 0.0;
    for (double x : signal) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) throw AllZeroSignal("max |x| = 0");
    std::vector<double> out(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) out[i] = signal[i] / peak;
    return out;
}

StatFeatures stat_features(std::span<const double> signal) {
    if (signal.size() < 2) throw EmptyInput("need at least 2 samples");
    const double n = static_cast<double>(signal.size());

    StatFeatures f;
    f.mean = std::accumulate(signal.begin(), signal.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : signal) ss += (x - f.mean) * (x - f.mean);
    f.std_dev = std::sqrt(ss / n);
    if (f.std_dev == 0.0) throw ZeroVariance("kurtosis undefined for a constant signal");
    double s4 = 0.0;
    for (double x : signal) {
        double z = (x - f.mean) / f.std_dev;
        s4 += z * z * z * z;
    }
    f.kurtosis = s4 / n;
    return f;
}

std::vector<double> spectrum_energy_full(std::span<const double> signal) {
    const std::size_t n = signal.size();
    if (n < 2) throw EmptyInput("need at least 2 samples");

    // exact unit roots, indexed modulo N, so there is no phase drift
    std::vector<double> cos_tab(n), sin_tab(n);
    for (std::size_t k = 0; k < n; ++k) {
        double angle = -2.0 * 3.14159265358979323846 * static_cast<double>(k) / static_cast<double>(n);
        cos_tab[k] = std::cos(angle);
        sin_tab[k] = std::sin(angle);
    }

    std::vector<double> energy(n);
    for (std::size_t f = 0; f < n; ++f) {
        double re = 0.0, im = 0.0;
        std::size_t idx = 0;
        for (std::size_t t = 0; t < n; ++t) {
            re += signal[t] * cos_tab[idx];
            im += signal[t] * sin_tab[idx];
            idx += f;
            if (idx >= n) idx -= n;
        }
        energy[f] = re * re + im * im;
    }
    return energy;
}

std::vector<SpectrumBin> spectrum_energy(std::span<const double> signal, double fs_hz) {
    if (fs_hz <= 0.0) throw InvalidConfig("sampling rate must be positive");
    const std::size_t n = signal.size();
    std::vector<double> full = spectrum_energy_full(signal);

    std::vector<SpectrumBin> bins(n / 2 + 1);
    for (std::size_t f = 0; f < bins.size(); ++f) {
        bins[f].frequency_hz = static_cast<double>(f) * fs_hz / static_cast<double>(n);
        bins[f].energy = full[f];
    }
    return bins;
}

std::map<std::string, double> band_energies(const std::vector<SpectrumBin>& spectrum,
                                            const std::vector<BandDefinition>& bands) {
    validate_bands(bands);
    std::map<std::string, double> out;
    for (const auto& b : bands) out[b.name] = 0.0;
    for (const auto& bin : spectrum) {
        if (bin.frequency_hz == 0.0) continue; // DC carries no oscillatory content
        for (const auto& b : bands)
            if (bin.frequency_hz >= b.f_low_hz && bin.frequency_hz < b.f_high_hz)
                out[b.name] += bin.energy;
    }
    return out;
}

std::map<std::string, double> normalize_band_energies(const std::map<std::string, double>& energies) {
    double total = 0.0;
    for (const auto& [name, e] : energies) total += e;
    if (total <= 0.0) throw ZeroTotalBandEnergy("sum of band energies is zero");
    std::map<std::string, double> out;
    for (const auto& [name, e] : energies) out[name] = e / total;
    return out;
}

double band_ratio(double e_theta, double e_alpha, double epsilon) {
    if (e_theta < 0.0 || e_alpha < 0.0) throw InvalidParam("band energies must be nonnegative");
    if (epsilon <= 0.0) throw InvalidParam("epsilon must be positive");
    return e_theta / (e_alpha + epsilon);
}

FeatureVector extract_features(const EegTrial& trial, const FeatureExtractionConfig& cfg) {
    trial.validate();
    const auto& bands = cfg.bands.empty() ? default_bands() : cfg.bands;
    validate_bands(bands);
    bool has_theta = false, has_alpha = false;
    for (const auto& b : bands) {
        has_theta |= b.name == "theta";
        has_alpha |= b.name == "alpha";
    }
    if (!has_theta || !has_alpha)
        throw InvalidConfig("feature extraction needs theta and alpha bands for the ratio");

    FeatureVector fv;
    fv.values.reserve(trial.channel_count() * kFeaturesPerChannel);
    fv.names.reserve(trial.channel_count() * kFeaturesPerChannel);

    for (std::size_t c = 0; c < trial.channel_count(); ++c) {
        const std::string& chan = trial.channels[c];
        try {
            std::vector<double> normalized = normalize_maxabs(trial.samples.row(c));
            StatFeatures stats =
                stat_features(cfg.stats_on_normalized
                                  ? std::span<const double>(normalized)
                                  : std::span<const double>(trial.samples.row(c)));
            auto spectrum = spectrum_energy(normalized, trial.sampling_rate_hz);
            auto raw_band = band_energies(spectrum, bands);
            auto norm_band = normalize_band_energies(raw_band);

            fv.values.push_back(stats.mean);
            fv.names.push_back(chan + "_mean");
            fv.values.push_back(stats.std_dev);
            fv.names.push_back(chan + "_std");
            fv.values.push_back(stats.kurtosis);
            fv.names.push_back(chan + "_kurt");
            for (const auto& b : bands) {
                fv.values.push_back(norm_band.at(b.name));
                fv.names.push_back(chan + "_nE_" + b.name);
            }
            // the ratio uses raw (un-normalized) band energies
            fv.values.push_back(band_ratio(raw_band.at("theta"), raw_band.at("alpha"), cfg.epsilon));
            fv.names.push_back(chan + "_ratio_theta_alpha");
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " [channel " + chan + "]");
        }
    }
    for (double v : fv.values)
        if (!std::isfinite(v)) throw NonFiniteFeature("non-finite feature value");
    return fv;
}

FeatureMatrix extract_feature_matrix(const Dataset& dataset, const FeatureExtractionConfig& cfg) {
    dataset.validate();
    if (dataset.trials.empty()) throw EmptyInput("dataset has no trials");

    FeatureMatrix fm;
    FeatureVector first = extract_features(dataset.trials.front(), cfg);
    fm.feature_names = first.names;
    fm.values = Matrix(dataset.trials.size(), first.values.size());

    for (std::size_t i = 0; i < dataset.trials.size(); ++i) {
        const EegTrial& t = dataset.trials[i];
        FeatureVector fv = i == 0 ? std::move(first) : extract_features(t, cfg);
        if (fv.values.size() != fm.cols())
            throw DimensionMismatch("inconsistent feature count across trials");
        std::copy(fv.values.begin(), fv.values.end(), fm.values.row(i).begin());
        fm.subject_ids.push_back(t.subject_id);
        fm.labels.push_back(t.class_label);
        fm.trial_ids.push_back(t.trial_id);
    }
    return fm;
}

namespace {

struct ColumnMoments {
    std::vector<double> mean, sd; // population sd
};

ColumnMoments column_moments(const Matrix& m) {
    const std::size_t n = m.rows(), d = m.cols();
    ColumnMoments out;
    out.mean.assign(d, 0.0);
    out.sd.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) out.mean[j] += m(i, j);
    for (std::size_t j = 0; j < d; ++j) out.mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double delta = m(i, j) - out.mean[j];
            out.sd[j] += delta * delta;
        }
    for (std::size_t j = 0; j < d; ++j) out.sd[j] = std::sqrt(out.sd[j] / static_cast<double>(n));
    return out;
}

} // namespace

SelectionMask fit_selector(const FeatureMatrix& train, double threshold) {
    train.check_consistent();
    if (threshold <= 0.0 || threshold > 1.0)
        throw InvalidParam("correlation threshold must lie in (0,1]");
    const std::size_t n = train.rows(), d = train.cols();
    if (n < 2) throw EmptyInput("selector needs at least 2 training rows");

    ColumnMoments mom = column_moments(train.values);

    std::vector<bool> dropped(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        if (dropped[i] || mom.sd[i] == 0.0) continue;
        for (std::size_t j = i + 1; j < d; ++j) {
            if (dropped[j] || mom.sd[j] == 0.0) continue;
            double cov = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                cov += (train.values(r, i) - mom.mean[i]) * (train.values(r, j) - mom.mean[j]);
            cov /= static_cast<double>(n);
            double r = cov / (mom.sd[i] * mom.sd[j]);
            if (std::abs(r) > threshold) dropped[j] = true;
        }
    }

    SelectionMask mask;
    mask.threshold = threshold;
    for (std::size_t j = 0; j < d; ++j)
        if (!dropped[j]) mask.kept_indices.push_back(j);
    return mask;
}

FeatureMatrix apply_selector(const SelectionMask& mask, const FeatureMatrix& matrix) {
    matrix.check_consistent();
    for (std::size_t idx : mask.kept_indices)
        if (idx >= matrix.cols()) throw DimensionMismatch("selector index out of range");

    FeatureMatrix out;
    out.values = Matrix(matrix.rows(), mask.kept_indices.size());
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t k = 0; k < mask.kept_indices.size(); ++k)
            out.values(i, k) = matrix.values(i, mask.kept_indices[k]);
    for (std::size_t idx : mask.kept_indices)
        out.feature_names.push_back(matrix.feature_names[idx]);
    out.subject_ids = matrix.subject_ids;
    out.labels = matrix.labels;
    out.trial_ids = matrix.trial_ids;
    return out;
}

Standardizer fit_standardizer(const FeatureMatrix& train) {
    train.check_consistent();
    if (train.rows() == 0) throw EmptyInput("standardizer needs training rows");
    ColumnMoments mom = column_moments(train.values);
    return {std::move(mom.mean), std::move(mom.sd)};
}

FeatureMatrix apply_standardizer(const Standardizer& s, const FeatureMatrix& matrix) {
    matrix.check_consistent();
    if (s.means.size() != matrix.cols())
        throw DimensionMismatch("standardizer fitted for a different column count");

    FeatureMatrix out = matrix;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out.values(i, j) =
                s.sds[j] == 0.0 ? 0.0 : (matrix.values(i, j) - s.means[j]) / s.sds[j];
    return out;
}

} // namespace eegval
