#include "eegval/eeg_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <zlib.h>

#include "eegval/rng.hpp"

namespace eegval {

void EegTrial::validate() const {
    if (channels.size() != samples.rows())
        throw InvalidTrial("channel name count does not match sample rows");
    if (sample_count() < 2) throw InvalidTrial("trials need at least 2 samples per channel");
    if (sampling_rate_hz <= 0.0) throw InvalidTrial("sampling rate must be positive");
    std::vector<std::string> sorted = channels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidTrial("duplicate channel name");
}

void Dataset::validate() const {
    if (trials.empty()) return;
    const auto& ref = trials.front();
    std::vector<std::string> ids;
    ids.reserve(trials.size());
    for (const auto& t : trials) {
        t.validate();
        if (t.channels != ref.channels || t.sampling_rate_hz != ref.sampling_rate_hz)
            throw MixedMontage("trials disagree on channel set or sampling rate");
        ids.push_back(t.trial_id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw InvalidTrial("duplicate trial_id in dataset");
}

ClassPrefixMap default_class_prefixes() {
    return {{"co2a", kLabelAlcoholic},
            {"co3a", kLabelAlcoholic},
            {"co2c", kLabelControl},
            {"co3c", kLabelControl}};
}

const std::vector<std::string>& default_channel_subset() {
    static const std::vector<std::string> chans = {
        "FP1", "FP2", "FZ", "F3", "F4", "F7", "F8", "CZ", "C3", "C4",
        "T3",  "T4",  "T5", "T6", "PZ", "P3", "P4", "OZ", "O1", "O2"};
    return chans;
}

std::string QcReason::to_string() const {
    switch (rule) {
        case QcRule::nonfinite: return "NonFinite(" + channel + ")";
        case QcRule::amplitude_exceeded: return "AmplitudeExceeded(" + channel + ")";
        case QcRule::flatline: return "Flatline(" + channel + ")";
    }
    return channel;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char ch : text) {
        if (ch == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty()) {
        if (current.back() == '\r') current.pop_back();
        lines.push_back(std::move(current));
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) fields.push_back(tok);
    return fields;
}

bool is_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == ' ' || ch == '\t') continue;
        return ch == '#';
    }
    return false;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t") == std::string::npos;
}

} // namespace

EegTrial parse_trial_file(const std::string& text, const ClassPrefixMap& prefixes) {
    std::vector<std::string> lines = split_lines(text);

    EegTrial trial;
    std::map<std::string, std::size_t> channel_index;
    std::vector<std::vector<double>> rows;
    bool saw_header = false;
    long trial_no = -1;

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string& line = lines[ln];
        if (is_blank(line)) continue;
        if (is_comment(line)) {
            std::string body = line.substr(line.find('#') + 1);
            auto fields = split_fields(body);
            if (!saw_header && !fields.empty()) {
                // first header line names the file stem, e.g. "co2a0000364.rd"
                trial.subject_id = fields.front().substr(0, fields.front().find('.'));
                saw_header = true;
            }
            // "... , trial 119" on the condition header line
            for (std::size_t i = 0; i + 1 < fields.size(); ++i)
                if (fields[i] == "trial" && trial_no < 0) {
                    try {
                        trial_no = std::stol(fields[i + 1]);
                    } catch (...) { /* not a number, ignore */
                    }
                }
            // "3.906000 msecs uV" gives the sample period
            if (fields.size() == 3 && fields[1] == "msecs" && fields[2] == "uV") {
                try {
                    double ms = std::stod(fields[0]);
                    if (ms > 0.0) {
                        double fs = 1000.0 / ms;
                        // header periods are printed rounded; snap to the integer rate
                        trial.sampling_rate_hz =
                            std::abs(fs - std::round(fs)) < 0.1 ? std::round(fs) : fs;
                    }
                } catch (...) { /* leave default */
                }
            }
            continue;
        }

        auto fields = split_fields(line);
        if (fields.size() != 4)
            throw MalformedLine("line " + std::to_string(ln + 1) + ": expected 4 fields, got " +
                                std::to_string(fields.size()));
        long row_trial;
        long sample_idx;
        double voltage;
        try {
            row_trial = std::stol(fields[0]);
            sample_idx = std::stol(fields[2]);
            voltage = std::stod(fields[3]);
        } catch (...) {
            throw MalformedLine("line " + std::to_string(ln + 1) + ": unparseable data row");
        }
        if (trial_no < 0) trial_no = row_trial;

        const std::string& chan = fields[1];
        auto [it, inserted] = channel_index.try_emplace(chan, rows.size());
        if (inserted) {
            trial.channels.push_back(chan);
            rows.emplace_back();
        }
        auto& samples = rows[it->second];
        if (sample_idx != static_cast<long>(samples.size()))
            throw MalformedLine("line " + std::to_string(ln + 1) + ": sample index " +
                                std::to_string(sample_idx) + " out of order for channel " + chan);
        samples.push_back(voltage);
    }

    if (rows.empty()) throw EmptyFile("no data rows");
    if (!saw_header || trial.subject_id.empty())
        throw MalformedLine("missing subject header line");

    const std::size_t n = rows.front().size();
    for (std::size_t c = 0; c < rows.size(); ++c)
        if (rows[c].size() != n)
            throw InconsistentSampleCount("channel " + trial.channels[c] + " has " +
                                          std::to_string(rows[c].size()) + " samples, expected " +
                                          std::to_string(n));

    trial.class_label = -1;
    for (const auto& [prefix, label] : prefixes)
        if (trial.subject_id.rfind(prefix, 0) == 0) {
            trial.class_label = label;
            break;
        }
    if (trial.class_label < 0)
        throw UnknownClassPrefix("subject id '" + trial.subject_id + "' matches no known prefix");

    trial.samples = Matrix(rows.size(), n);
    for (std::size_t c = 0; c < rows.size(); ++c)
        std::copy(rows[c].begin(), rows[c].end(), trial.samples.row(c).begin());
    trial.trial_id = trial.subject_id + "_t" + std::to_string(trial_no < 0 ? 0 : trial_no);

    trial.validate();
    return trial;
}

std::string write_trial_file(const EegTrial& trial) {
    trial.validate();
    long trial_no = 0;
    if (auto pos = trial.trial_id.rfind("_t"); pos != std::string::npos) {
        try {
            trial_no = std::stol(trial.trial_id.substr(pos + 2));
        } catch (...) {
        }
    }

    std::ostringstream out;
    out << "# " << trial.subject_id << ".rd\n";
    out << "# exported trial\n";
    char period[64];
    std::snprintf(period, sizeof(period), "%.6f", 1000.0 / trial.sampling_rate_hz);
    out << "# " << period << " msecs uV\n";
    out << "# S1 obj , trial " << trial_no << "\n";
    for (std::size_t c = 0; c < trial.channel_count(); ++c) {
        out << "# " << trial.channels[c] << " chan " << c << "\n";
        for (std::size_t t = 0; t < trial.sample_count(); ++t) {
            char value[64];
            std::snprintf(value, sizeof(value), "%.3f", trial.samples(c, t));
            out << trial_no << " " << trial.channels[c] << " " << t << " " << value << "\n";
        }
    }
    return out.str();
}

std::string read_text_file_maybe_gzip(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::data, "cannot open " + path);
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (raw.size() < 2 || static_cast<unsigned char>(raw[0]) != 0x1F ||
        static_cast<unsigned char>(raw[1]) != 0x8B)
        return raw;

    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
        throw Error(ErrorKind::data, "zlib init failed for " + path);
    std::string out;
    std::vector<char> buf(1 << 16);
    zs.next_in = reinterpret_cast<Bytef*>(raw.data());
    zs.avail_in = static_cast<uInt>(raw.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = reinterpret_cast<Bytef*>(buf.data());
        zs.avail_out = static_cast<uInt>(buf.size());
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw Error(ErrorKind::data, "gzip decompression failed for " + path);
        }
        out.append(buf.data(), buf.size() - zs.avail_out);
    }
    inflateEnd(&zs);
    return out;
}

QcVerdict apply_quality_control(const EegTrial& trial, const QcConfig& qc) {
    if (qc.amplitude_limit_uv <= 0.0) throw InvalidConfig("amplitude limit must be positive");
    if (qc.flatline_min_run < 2) throw InvalidConfig("flatline run length must be >= 2");
    trial.validate();

    QcVerdict verdict;
    for (std::size_t c = 0; c < trial.channel_count(); ++c) {
        auto row = trial.samples.row(c);
        bool nonfinite = false, amplitude = false;
        for (double v : row) {
            if (!std::isfinite(v)) nonfinite = true;
            else if (std::abs(v) > qc.amplitude_limit_uv) amplitude = true;
        }
        int run = 1, longest = 1;
        for (std::size_t t = 1; t < row.size(); ++t) {
            run = row[t] == row[t - 1] ? run + 1 : 1;
            longest = std::max(longest, run);
        }
        if (nonfinite && qc.reject_nonfinite)
            verdict.reasons.push_back({QcRule::nonfinite, trial.channels[c]});
        if (amplitude)
            verdict.reasons.push_back({QcRule::amplitude_exceeded, trial.channels[c]});
        if (longest >= qc.flatline_min_run)
            verdict.reasons.push_back({QcRule::flatline, trial.channels[c]});
    }
    verdict.accepted = verdict.reasons.empty();
    return verdict;
}

EegTrial select_channels(const EegTrial& trial, const std::vector<std::string>& wanted) {
    trial.validate();
    std::map<std::string, std::size_t> index;
    for (std::size_t c = 0; c < trial.channel_count(); ++c) index[trial.channels[c]] = c;

    EegTrial out;
    out.subject_id = trial.subject_id;
    out.class_label = trial.class_label;
    out.sampling_rate_hz = trial.sampling_rate_hz;
    out.trial_id = trial.trial_id;
    out.channels = wanted;
    out.samples = Matrix(wanted.size(), trial.sample_count());
    for (std::size_t i = 0; i < wanted.size(); ++i) {
        auto it = index.find(wanted[i]);
        if (it == index.end()) throw MissingChannel(wanted[i]);
        auto src = trial.samples.row(it->second);
        std::copy(src.begin(), src.end(), out.samples.row(i).begin());
    }
    out.validate();
    return out;
}

Dataset assemble_dataset(const std::vector<EegTrial>& trials,
                         std::size_t per_class_target,
                         std::size_t per_subject_cap,
                         std::uint64_t seed) {
    if (per_class_target == 0) throw InvalidConfig("per_class_target must be positive");
    if (per_subject_cap == 0) throw InvalidConfig("per_subject_cap must be positive");
    if (!trials.empty()) {
        const auto& ref = trials.front();
        for (const auto& t : trials)
            if (t.channels != ref.channels || t.sampling_rate_hz != ref.sampling_rate_hz)
                throw MixedMontage("input trials disagree on channel set or sampling rate");
    }

    // class -> subject -> trial indices, keys sorted for determinism
    std::map<int, std::map<std::string, std::vector<std::size_t>>> by_class;
    for (std::size_t i = 0; i < trials.size(); ++i)
        by_class[trials[i].class_label][trials[i].subject_id].push_back(i);

    Dataset out;
    for (int label : {kLabelControl, kLabelAlcoholic}) {
        auto it = by_class.find(label);
        std::size_t available = 0;
        if (it != by_class.end())
            for (const auto& [subj, idx] : it->second)
                available += std::min(idx.size(), per_subject_cap);
        if (available < per_class_target)
            throw InsufficientTrials("class " + std::to_string(label) + ": " +
                                     std::to_string(available) + " available after caps, " +
                                     std::to_string(per_class_target) + " needed");

        // seeded shuffle of subject order, then of each subject's trials
        std::vector<std::string> subjects;
        for (const auto& [subj, idx] : it->second) subjects.push_back(subj);
        Rng subject_rng(derive_seed(seed, {static_cast<std::uint64_t>(label), 0}));
        subject_rng.shuffle(subjects);

        std::vector<std::vector<std::size_t>> queues;
        for (std::size_t s = 0; s < subjects.size(); ++s) {
            std::vector<std::size_t> idx = it->second.at(subjects[s]);
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return trials[a].trial_id < trials[b].trial_id;
            });
            Rng trial_rng(derive_seed(seed, {static_cast<std::uint64_t>(label), 1, s}));
            trial_rng.shuffle(idx);
            if (idx.size() > per_subject_cap) idx.resize(per_subject_cap);
            queues.push_back(std::move(idx));
        }

        // round-robin over subjects keeps any one individual from dominating
        std::size_t taken = 0, depth = 0;
        while (taken < per_class_target) {
            bool any = false;
            for (auto& q : queues) {
                if (depth < q.size()) {
                    out.trials.push_back(trials[q[depth]]);
                    any = true;
                    if (++taken == per_class_target) break;
                }
            }
            if (!any) break;
            ++depth;
        }
    }

    std::sort(out.trials.begin(), out.trials.end(), [](const EegTrial& a, const EegTrial& b) {
        if (a.class_label != b.class_label) return a.class_label < b.class_label;
        if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
        return a.trial_id < b.trial_id;
    });
    out.validate();
    return out;
}

} // namespace eegval
