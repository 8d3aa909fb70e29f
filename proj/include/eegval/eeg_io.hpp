#ifndef EEGVAL_EEG_IO_HPP
#define EEGVAL_EEG_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "eegval/trial.hpp"

namespace eegval {

/// Quality-control thresholds. Defaults follow the artifact configuration:
/// reject on |sample| > 100 uV, non-finite samples, or 32+ identical
/// consecutive samples (125 ms at 256 Hz).
struct QcConfig {
    double amplitude_limit_uv = 100.0;
    int flatline_min_run = 32;
    bool reject_nonfinite = true;
};

enum class QcRule { nonfinite, amplitude_exceeded, flatline };

struct QcReason {
    QcRule rule;
    std::string channel;

    std::string to_string() const;
    bool operator==(const QcReason&) const = default;
};

struct QcVerdict {
    bool accepted = true;
    std::vector<QcReason> reasons; // empty iff accepted
};

/// Subject-id prefix -> class label. The UCI files encode group membership in
/// the filename stem; there is no labeling rule inside the data itself.
using ClassPrefixMap = std::vector<std::pair<std::string, int>>;

ClassPrefixMap default_class_prefixes();

/// Channel subset used throughout: 20 electrodes covering frontal, central,
/// temporal, parietal and occipital sites.
const std::vector<std::string>& default_channel_subset();

/// Parses one UCI-format trial file. Comment lines start with '#'; the first
/// comment carries the subject id; data rows are
/// `<trial_no> <channel> <sample_index> <voltage_uv>`.
EegTrial parse_trial_file(const std::string& text,
                          const ClassPrefixMap& prefixes = default_class_prefixes());

/// Inverse of parse_trial_file, used for fixtures and round-trip checks.
std::string write_trial_file(const EegTrial& trial);

/// Reads a file that may be gzip-compressed (magic bytes 0x1F 0x8B).
std::string read_text_file_maybe_gzip(const std::string& path);

QcVerdict apply_quality_control(const EegTrial& trial, const QcConfig& qc);

/// Restricts a trial to `wanted`, reordering rows to match. The input trial
/// is left untouched.
EegTrial select_channels(const EegTrial& trial, const std::vector<std::string>& wanted);

/// Seeded, deterministic subsampling: exactly `per_class_target` trials per
/// class, at most `per_subject_cap` trials from any one subject. Subjects are
/// cycled round-robin so no single individual dominates.
Dataset assemble_dataset(const std::vector<EegTrial>& trials,
                         std::size_t per_class_target,
                         std::size_t per_subject_cap,
                         std::uint64_t seed);

} // namespace eegval

#endif
