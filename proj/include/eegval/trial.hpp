#ifndef EEGVAL_TRIAL_HPP
#define EEGVAL_TRIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "eegval/errors.hpp"
#include "eegval/matrix.hpp"

namespace eegval {

constexpr int kLabelControl = 0;
constexpr int kLabelAlcoholic = 1;

/// One subject-trial: C channels x N samples of voltage in microvolts.
struct EegTrial {
    std::string subject_id;
    int class_label = kLabelControl;
    std::vector<std::string> channels;
    Matrix samples; // C x N, microvolts
    double sampling_rate_hz = 256.0;
    std::string trial_id;

    std::size_t channel_count() const { return channels.size(); }
    std::size_t sample_count() const { return samples.cols(); }

    /// Throws InvalidTrial on any broken invariant (duplicate channel names,
    /// N < 2, non-positive sampling rate, row/name count mismatch).
    void validate() const;
};

struct Dataset {
    std::vector<EegTrial> trials;

    std::map<int, std::size_t> class_counts() const {
        std::map<int, std::size_t> out;
        for (const auto& t : trials) ++out[t.class_label];
        return out;
    }

    /// All trials must share channel set and sampling rate; trial ids unique.
    void validate() const;
};

} // namespace eegval

#endif
