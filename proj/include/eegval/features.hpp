#ifndef EEGVAL_FEATURES_HPP
#define EEGVAL_FEATURES_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "eegval/matrix.hpp"
#include "eegval/trial.hpp"

namespace eegval {

struct BandDefinition {
    std::string name;
    double f_low_hz = 0.0;
    double f_high_hz = 0.0;
};

/// Clinical-convention band edges: delta 0.5-4, theta 4-8, alpha 8-13,
/// beta 13-30 Hz. Intervals are half-open [low, high).
const std::vector<BandDefinition>& default_bands();

/// Throws InvalidConfig unless bands are non-overlapping, ascending, and each
/// has 0 <= low < high.
void validate_bands(const std::vector<BandDefinition>& bands);

constexpr double kDefaultRatioEpsilon = 1e-10;
constexpr std::size_t kFeaturesPerChannel = 8;

struct StatFeatures {
    double mean = 0.0;
    double std_dev = 0.0;
    double kurtosis = 0.0;
};

struct SpectrumBin {
    double frequency_hz = 0.0;
    double energy = 0.0;
};

/// x / max|x|. The output's max absolute value is exactly 1.
std::vector<double> normalize_maxabs(std::span<const double> signal);

/// Population (1/N) mean and standard deviation; kurtosis is the raw fourth
/// standardized moment (Gaussian -> 3, no excess correction).
StatFeatures stat_features(std::span<const double> signal);

/// Plain DFT energies |X(f)|^2 for the non-redundant bins 0..floor(N/2),
/// with frequency_hz = f * fs / N. No windowing or detrending.
std::vector<SpectrumBin> spectrum_energy(std::span<const double> signal, double fs_hz);

/// Energies of all N DFT bins (used for Parseval-style checks).
std::vector<double> spectrum_energy_full(std::span<const double> signal);

/// Sums bin energies with f_low <= frequency < f_high. The f=0 bin is
/// excluded everywhere so results reflect oscillatory content only.
std::map<std::string, double> band_energies(const std::vector<SpectrumBin>& spectrum,
                                            const std::vector<BandDefinition>& bands);

/// E_b / sum_b E_b; outputs sum to 1.
std::map<std::string, double> normalize_band_energies(const std::map<std::string, double>& energies);

/// theta / (alpha + epsilon).
double band_ratio(double e_theta, double e_alpha, double epsilon = kDefaultRatioEpsilon);

struct FeatureVector {
    std::vector<double> values;
    std::vector<std::string> names;
};

struct FeatureExtractionConfig {
    std::vector<BandDefinition> bands; // empty -> default_bands()
    double epsilon = kDefaultRatioEpsilon;
    /// Statistical features are computed on the max-abs normalized signal by
    /// default, which makes the whole feature vector scale invariant.
    bool stats_on_normalized = true;
};

/// Per channel: normalize -> stats -> spectrum -> band energies -> normalized
/// band energies -> theta/alpha ratio (on raw band energies). Eight features
/// per channel, named `<CHAN>_<feat>`, concatenated in channel order.
FeatureVector extract_features(const EegTrial& trial,
                               const FeatureExtractionConfig& cfg = {});

/// Runs extract_features over every trial of the dataset.
FeatureMatrix extract_feature_matrix(const Dataset& dataset,
                                     const FeatureExtractionConfig& cfg = {});

/// Surviving feature columns after correlation-based redundancy removal.
struct SelectionMask {
    std::vector<std::size_t> kept_indices; // strictly increasing
    double threshold = 0.0;
};

/// Pairwise |Pearson r| over training rows only; scans pairs in index order
/// and drops the later-indexed feature of any pair with |r| > threshold.
/// Constant columns never trigger removal.
SelectionMask fit_selector(const FeatureMatrix& train, double threshold);

FeatureMatrix apply_selector(const SelectionMask& mask, const FeatureMatrix& matrix);

/// Per-feature affine map fitted on training rows: (x - mean) / sd.
/// Constant columns (sd = 0) map to 0.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> sds; // population sd; 0 marks a constant column
};

Standardizer fit_standardizer(const FeatureMatrix& train);

FeatureMatrix apply_standardizer(const Standardizer& s, const FeatureMatrix& matrix);

} // namespace eegval

#endif
