#include "eegval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "eegval/errors.hpp"

namespace eegval {

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// sample variance, (n-1) denominator
double sample_variance(std::span<const double> v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

void check_binary_labels(std::span<const int> labels) {
    for (int y : labels)
        if (y != 0 && y != 1) throw InvalidParam("labels must be 0 or 1");
}

} // namespace

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size())
        throw LengthMismatch("label vectors differ in length");
    if (y_true.empty()) throw EmptyInput("no predictions to score");
    check_binary_labels(y_true);
    check_binary_labels(y_pred);

    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1)
            (y_pred[i] == 1 ? cm.tp : cm.fn)++;
        else
            (y_pred[i] == 0 ? cm.tn : cm.fp)++;
    }
    return cm;
}

ClassificationMetrics metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw EmptyInput("empty confusion matrix");
    ClassificationMetrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    if (cm.tp + cm.fn > 0)
        m.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    else
        m.sensitivity_defined = false;
    if (cm.tn + cm.fp > 0)
        m.specificity = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp);
    else
        m.specificity_defined = false;
    return m;
}

std::pair<double, double> wald_ci(double accuracy, long n, double z) {
    if (accuracy < 0.0 || accuracy > 1.0) throw InvalidParam("accuracy outside [0,1]");
    if (n < 1) throw InvalidParam("n must be >= 1");
    double half = z * std::sqrt(accuracy * (1.0 - accuracy) / static_cast<double>(n));
    return {std::max(0.0, accuracy - half), std::min(1.0, accuracy + half)};
}

double auc_pair_probability(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw LengthMismatch("scores and labels differ in length");
    check_binary_labels(labels);

    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Mann-Whitney U via average ranks over tie groups.
    double rank_sum_pos = 0.0;
    long n_pos = 0, n_neg = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double avg_rank = 0.5 * static_cast<double>(i + 1 + j); // ranks are 1-based
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
        i = j;
    }
    for (int y : labels) (y == 1 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("need both classes for AUC");

    double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * (n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

RocCurve roc_and_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw LengthMismatch("scores and labels differ in length");
    if (scores.empty()) throw EmptyInput("no scores");
    check_binary_labels(labels);

    long n_pos = 0, n_neg = 0;
    for (int y : labels) (y == 1 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("need both classes for a ROC curve");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});

    long tp = 0, fp = 0;
    double auc = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k)
            (labels[order[k]] == 1 ? tp : fp)++;
        double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        const RocPoint& prev = curve.points.back();
        auc += (fpr - prev.fpr) * (tpr + prev.tpr) * 0.5;
        curve.points.push_back({fpr, tpr, scores[order[i]]});
        i = j;
    }
    curve.auc = auc;

    double pair_auc = auc_pair_probability(scores, labels);
    if (std::abs(pair_auc - auc) > 1e-12)
        throw Error(ErrorKind::numeric, "AUC cross-check failed: trapezoid and pair-probability routes disagree");
    return curve;
}

McNemarResult mcnemar(long b, long c) {
    if (b < 0 || c < 0) throw InvalidParam("discordant counts must be nonnegative");
    if (b + c == 0) throw NoDiscordantPairs("b + c = 0");
    McNemarResult r;
    r.b = b;
    r.c = c;
    double diff = std::abs(static_cast<double>(b - c));
    r.chi2 = diff <= 1.0 ? 0.0 : (diff - 1.0) * (diff - 1.0) / static_cast<double>(b + c);
    r.p_value = chi2_sf_1dof(r.chi2);
    return r;
}

std::pair<long, long> discordant_counts(std::span<const int> y_true,
                                        std::span<const int> pred_a,
                                        std::span<const int> pred_b) {
    if (y_true.size() != pred_a.size() || y_true.size() != pred_b.size())
        throw LengthMismatch("prediction vectors differ in length");
    long b = 0, c = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        bool a_right = pred_a[i] == y_true[i];
        bool b_right = pred_b[i] == y_true[i];
        if (a_right && !b_right) ++b;
        if (!a_right && b_right) ++c;
    }
    return {b, c};
}

WelchResult welch_t(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.size() < 2 || group_b.size() < 2)
        throw DegenerateGroup("each group needs at least 2 values");

    double na = static_cast<double>(group_a.size());
    double nb = static_cast<double>(group_b.size());
    double ma = mean_of(group_a), mb = mean_of(group_b);
    double va = sample_variance(group_a, ma), vb = sample_variance(group_b, mb);

    WelchResult r;
    double se2 = va / na + vb / nb;
    if (se2 == 0.0) {
        // both groups constant: the test degenerates to an exact comparison
        r.t = ma == mb ? 0.0 : (ma > mb ? 1.0 : -1.0) * std::numeric_limits<double>::infinity();
        r.dof = na + nb - 2.0;
        r.p_two_sided = ma == mb ? 1.0 : 0.0;
        return r;
    }
    r.t = (ma - mb) / std::sqrt(se2);
    double da = (va / na) * (va / na) / (na - 1.0);
    double db = (vb / nb) * (vb / nb) / (nb - 1.0);
    r.dof = se2 * se2 / (da + db);
    r.p_two_sided = t_two_sided_p(r.t, r.dof);
    return r;
}

double cohens_d(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.empty() || group_b.empty())
        throw DegenerateGroup("both groups must be nonempty");
    double na = static_cast<double>(group_a.size());
    double nb = static_cast<double>(group_b.size());
    if (na + nb < 3.0) throw DegenerateGroup("pooled variance needs n_a + n_b > 2");

    double ma = mean_of(group_a), mb = mean_of(group_b);
    double ssa = 0.0, ssb = 0.0;
    for (double x : group_a) ssa += (x - ma) * (x - ma);
    for (double x : group_b) ssb += (x - mb) * (x - mb);
    double pooled = std::sqrt((ssa + ssb) / (na + nb - 2.0));
    if (pooled == 0.0) throw ZeroPooledSd("pooled standard deviation is zero");
    return (ma - mb) / pooled;
}

double bonferroni(double alpha, long m) {
    if (alpha <= 0.0 || alpha >= 1.0) throw InvalidParam("alpha must lie in (0,1)");
    if (m < 1) throw InvalidParam("m must be >= 1");
    return alpha / static_cast<double>(m);
}

EffectLabel effect_label(double d) {
    double a = std::abs(d);
    if (a < 0.5) return EffectLabel::small;
    if (a < 0.8) return EffectLabel::medium;
    return EffectLabel::large;
}

std::string effect_label_name(EffectLabel label) {
    switch (label) {
        case EffectLabel::small: return "small";
        case EffectLabel::medium: return "medium";
        case EffectLabel::large: return "large";
    }
    return "small";
}

std::vector<FeatureStat> rank_features(const FeatureMatrix& features, double alpha) {
    features.check_consistent();
    const std::size_t n = features.rows(), d = features.cols();
    if (n == 0 || d == 0) throw EmptyInput("empty feature matrix");

    std::vector<std::size_t> rows_a, rows_b; // class 1, class 0
    for (std::size_t i = 0; i < n; ++i)
        (features.labels[i] == 1 ? rows_a : rows_b).push_back(i);
    if (rows_a.empty() || rows_b.empty())
        throw SingleClass("feature ranking needs both classes");

    double threshold = bonferroni(alpha, static_cast<long>(d));

    std::vector<FeatureStat> stats;
    stats.reserve(d);
    std::vector<double> ga(rows_a.size()), gb(rows_b.size());
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < rows_a.size(); ++i) ga[i] = features.values(rows_a[i], j);
        for (std::size_t i = 0; i < rows_b.size(); ++i) gb[i] = features.values(rows_b[i], j);
        FeatureStat fs;
        fs.feature = features.feature_names[j];
        fs.p_value = welch_t(ga, gb).p_two_sided;
        try {
            fs.cohens_d = cohens_d(ga, gb);
        } catch (const ZeroPooledSd&) {
            fs.cohens_d = 0.0; // constant in both groups
        }
        fs.effect = effect_label(fs.cohens_d);
        fs.significant_after_bonferroni = fs.p_value < threshold;
        stats.push_back(std::move(fs));
    }

    std::sort(stats.begin(), stats.end(), [](const FeatureStat& a, const FeatureStat& b) {
        if (a.p_value != b.p_value) return a.p_value < b.p_value;
        if (std::abs(a.cohens_d) != std::abs(b.cohens_d))
            return std::abs(a.cohens_d) > std::abs(b.cohens_d);
        return a.feature < b.feature;
    });
    return stats;
}

double chi2_sf_1dof(double x) {
    if (x < 0.0) throw InvalidParam("chi-square statistic must be nonnegative");
    return std::erfc(std::sqrt(x / 2.0));
}

namespace {

// Continued fraction for the regularized incomplete beta, modified Lentz.
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double reg_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                   a * std::log(x) + b * std::log(1.0 - x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

} // namespace

double t_two_sided_p(double t, double dof) {
    if (dof <= 0.0) throw InvalidParam("degrees of freedom must be positive");
    if (std::isinf(t)) return 0.0;
    double x = dof / (dof + t * t);
    return reg_incomplete_beta(dof / 2.0, 0.5, x);
}

} // namespace eegval
