#ifndef EEGVAL_VALIDATION_HPP
#define EEGVAL_VALIDATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eegval/features.hpp"
#include "eegval/learners.hpp"
#include "eegval/matrix.hpp"

namespace eegval {

/// Grouped, stratified assignment of trials to k folds. When grouped, whole
/// subjects go to one fold so evaluation measures generalization to unseen
/// subjects.
struct FoldPlan {
    int k = 0;
    std::vector<int> fold_of; // per row, in dataset order
    bool grouped = true;
    std::uint64_t seed = 0;

    std::vector<std::size_t> test_rows(int fold) const;
    std::vector<std::size_t> train_rows(int fold) const;
};

/// Grouped mode assigns whole subjects by greedy class balance: largest
/// subject first, into the fold with the greatest deficit for that subject's
/// class, ties to the lowest fold index. Ungrouped mode deals each class
/// round-robin after a seeded shuffle.
FoldPlan make_folds(const std::vector<int>& labels,
                    const std::vector<std::string>& subjects,
                    int k, bool grouped, std::uint64_t seed);

enum class Protocol { standard_global_tuning, nested };

std::string protocol_name(Protocol p);

struct FoldOutcome {
    int fold = 0;
    Params chosen_params;
    std::vector<std::size_t> test_rows;
    std::vector<int> predictions;
    std::vector<double> scores;
    double accuracy = 0.0;
    std::vector<std::size_t> selector_kept; // mask fitted for this fold's training data
};

struct ProtocolResult {
    Protocol protocol = Protocol::nested;
    ModelFamily family = ModelFamily::knn;
    std::vector<FoldOutcome> folds;
    std::vector<int> pooled_predictions;  // indexed by dataset row
    std::vector<double> pooled_scores;    // indexed by dataset row
    double mean_fold_accuracy = 0.0;
    double std_fold_accuracy = 0.0; // sample sd across folds
    double pooled_accuracy = 0.0;
    double elapsed_seconds = 0.0; // informational; never serialized
};

struct ValidationOptions {
    double correlation_threshold = 0.95;
    int jobs = 1;
};

/// The deliberately leaky baseline: selector and standardizer are fitted once
/// on the full dataset, every grid point is scored by k-fold CV on that
/// globally transformed data, and the best grid point's maximum CV accuracy
/// is what gets reported. The leak is structural, not a bug.
ProtocolResult run_standard_cv_global_tuning(const FeatureMatrix& features,
                                             const ModelSpec& spec,
                                             const FoldPlan& plan,
                                             std::uint64_t seed,
                                             const ValidationOptions& opts = {});

/// Nested cross-validation with strictly fold-local preprocessing: per outer
/// fold, transforms are fitted on outer-training rows only, the inner loop
/// grid-searches with its own fold-local transforms, and the winning point is
/// retrained on the whole outer-training set and scored once on the held-out
/// fold.
ProtocolResult run_nested_cv(const FeatureMatrix& features,
                             const ModelSpec& spec,
                             const FoldPlan& outer_plan,
                             int k_inner,
                             std::uint64_t seed,
                             const ValidationOptions& opts = {});

struct LeakageRow {
    ModelFamily family = ModelFamily::knn;
    double standard_accuracy = 0.0;
    double nested_accuracy = 0.0;
    double difference = 0.0; // standard - nested
};

struct LeakageReport {
    std::vector<LeakageRow> rows;
    std::vector<ProtocolResult> standard_results;
    std::vector<ProtocolResult> nested_results;
};

struct CompareOptions {
    int k_outer = 5;
    int k_inner = 3;
    bool grouped = true;
    std::uint64_t seed = 42;
    ValidationOptions validation;
};

/// Runs both protocols per family on identical outer folds, so the reported
/// difference isolates protocol effects rather than fold luck.
LeakageReport compare_protocols(const FeatureMatrix& features,
                                const std::vector<ModelSpec>& specs,
                                const CompareOptions& opts);

} // namespace eegval

#endif
