#ifndef EEGVAL_STATS_HPP
#define EEGVAL_STATS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eegval/matrix.hpp"

namespace eegval {

/// Positive class is alcoholic = 1.
struct ConfusionMatrix {
    long tp = 0, tn = 0, fp = 0, fn = 0;

    long total() const { return tp + tn + fp + fn; }
};

struct ClassificationMetrics {
    double accuracy = 0.0;
    double sensitivity = 0.0; // tp / (tp + fn)
    double specificity = 0.0; // tn / (tn + fp)
    bool sensitivity_defined = true;
    bool specificity_defined = true;
};

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);

/// Rates with a zero denominator are flagged undefined and reported as 0.
ClassificationMetrics metrics(const ConfusionMatrix& cm);

/// Wald binomial interval acc +/- z*sqrt(acc(1-acc)/n), clipped to [0,1].
std::pair<double, double> wald_ci(double accuracy, long n, double z = 1.96);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points; // from (0,0) to (1,1), thresholds descending
    double auc = 0.0;
};

/// Threshold sweep over unique scores descending with ties grouped; AUC by
/// trapezoid, cross-checked internally against the rank-based pair
/// probability P(score+ > score-) + 0.5 P(tie).
RocCurve roc_and_auc(std::span<const double> scores, std::span<const int> labels);

/// Pair-counting AUC (exposed for oracles and cross-checks).
double auc_pair_probability(std::span<const double> scores, std::span<const int> labels);

struct McNemarResult {
    long b = 0, c = 0;
    double chi2 = 0.0;
    double p_value = 0.0;
};

/// Continuity-corrected statistic (|b-c|-1)^2/(b+c), floored at 0 when
/// |b-c| <= 1; p from the chi-square(1) survival function.
McNemarResult mcnemar(long b, long c);

/// b = count(A correct, B wrong), c = count(A wrong, B correct).
std::pair<long, long> discordant_counts(std::span<const int> y_true,
                                        std::span<const int> pred_a,
                                        std::span<const int> pred_b);

struct WelchResult {
    double t = 0.0;
    double dof = 0.0;
    double p_two_sided = 1.0;
};

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom. Groups whose pooled standard error is zero yield t=0, p=1 when
/// the means agree and p=0 otherwise.
WelchResult welch_t(std::span<const double> group_a, std::span<const double> group_b);

/// (mean_a - mean_b) / pooled sd, with sample (n-1) variances.
double cohens_d(std::span<const double> group_a, std::span<const double> group_b);

/// alpha / m.
double bonferroni(double alpha, long m);

enum class EffectLabel { small, medium, large };

/// |d| < 0.5 small, 0.5 <= |d| < 0.8 medium, |d| >= 0.8 large.
EffectLabel effect_label(double d);
std::string effect_label_name(EffectLabel label);

struct FeatureStat {
    std::string feature;
    double p_value = 1.0;
    double cohens_d = 0.0;
    EffectLabel effect = EffectLabel::small;
    bool significant_after_bonferroni = false;
};

/// Per-feature Welch t + Cohen's d between the two label groups, Bonferroni
/// flag with m = column count; sorted ascending by p, ties by larger |d|,
/// then by name.
std::vector<FeatureStat> rank_features(const FeatureMatrix& features, double alpha = 0.05);

/// Survival function of chi-square with 1 dof: erfc(sqrt(x/2)).
double chi2_sf_1dof(double x);

/// Two-sided p for a t statistic with `dof` degrees of freedom, via the
/// regularized incomplete beta function.
double t_two_sided_p(double t, double dof);

} // namespace eegval

#endif
