#ifndef EEGVAL_LEARNERS_HPP
#define EEGVAL_LEARNERS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eegval/matrix.hpp"
#include "eegval/rng.hpp"

namespace eegval {

enum class ModelFamily { knn, svm_linear, svm_rbf, random_forest, adaboost };

std::string family_name(ModelFamily family);
ModelFamily family_from_name(const std::string& name);

/// Concrete or gridded hyperparameters. Integer-valued parameters (k, trees,
/// rounds, depth) are carried as doubles; max_depth 0 means unbounded.
using Params = std::map<std::string, double>;

struct ModelSpec {
    ModelFamily family = ModelFamily::knn;
    Params fixed_params;
    /// Gridded parameters in declared order; expansion enumerates the last
    /// parameter fastest.
    std::vector<std::pair<std::string, std::vector<double>>> grid;
};

/// Cartesian product of the grid merged over fixed_params, in deterministic
/// order. A spec with an empty grid expands to one point.
std::vector<Params> expand_grid(const ModelSpec& spec);

/// Documented default grids: knn k in {3,5,7,9,11}; svm C in {0.1,1,10,100}
/// (x gamma in {0.001,0.01,0.1,1} for rbf); forest trees in {50,100,200} x
/// depth in {4,8,unbounded}; adaboost rounds in {50,100,200}.
ModelSpec default_spec(ModelFamily family);
std::vector<ModelSpec> default_grids();

/// Trained binary classifier. decision_score is centered so that 0 is the
/// decision threshold; predict(x) = 1 iff score > 0, ties resolve to 0.
class Classifier {
public:
    virtual ~Classifier() = default;

    ModelFamily family() const { return family_; }
    const Params& params() const { return params_; }
    std::size_t dimension() const { return dimension_; }

    double decision_score(std::span<const double> x) const;
    int predict(std::span<const double> x) const { return decision_score(x) > 0.0 ? 1 : 0; }

    /// Self-describing JSON document (family, params, coefficients/trees).
    std::string to_json() const;

protected:
    Classifier(ModelFamily family, Params params, std::size_t dimension)
        : family_(family), params_(std::move(params)), dimension_(dimension) {}

    virtual double score_impl(std::span<const double> x) const = 0;
    virtual void describe_json(std::string& out) const = 0;

private:
    ModelFamily family_;
    Params params_;
    std::size_t dimension_;
};

/// Validates inputs (two classes present, finite features, legal params) and
/// dispatches to the family-specific trainer. Deterministic given seed.
std::unique_ptr<Classifier> fit_classifier(ModelFamily family, const Params& params,
                                           const Matrix& x, const std::vector<int>& y,
                                           std::uint64_t seed);

// --- k-nearest neighbors ---------------------------------------------------

class KnnModel final : public Classifier {
public:
    KnnModel(Params params, Matrix train_x, std::vector<int> train_y, int k);

protected:
    double score_impl(std::span<const double> x) const override;
    void describe_json(std::string& out) const override;

private:
    Matrix train_x_;
    std::vector<int> train_y_;
    int k_;
};

// --- support vector machine (SMO dual solver) --------------------------------

struct SvmDiagnostics {
    std::vector<double> alphas;     // final dual coefficients, one per training row
    std::vector<double> dual_trace; // dual objective after each pair update (if traced)
    double kkt_gap = 0.0;           // max violating-pair gap at termination
    long iterations = 0;
    bool converged = false;
};

class SvmModel final : public Classifier {
public:
    /// Trains by sequential minimal optimization over max-violating pairs.
    /// Params: C (required), gamma (rbf only), tol (default 1e-3), max_passes
    /// (default 200; the update budget is max_passes * n), trace_dual (0/1).
    static std::unique_ptr<SvmModel> fit(ModelFamily family, const Params& params,
                                         const Matrix& x, const std::vector<int>& y);

    const SvmDiagnostics& diagnostics() const { return diag_; }
    double bias() const { return bias_; }

protected:
    double score_impl(std::span<const double> x) const override;
    void describe_json(std::string& out) const override;

private:
    SvmModel(ModelFamily family, Params params, std::size_t dim)
        : Classifier(family, std::move(params), dim) {}

    double kernel(std::span<const double> a, std::span<const double> b) const;

    bool rbf_ = false;
    double gamma_ = 0.0;
    Matrix support_x_;
    std::vector<double> support_coef_; // alpha_i * y_i for support vectors
    double bias_ = 0.0;
    SvmDiagnostics diag_;
};

// --- CART tree and random forest ---------------------------------------------

struct TreeConfig {
    int max_depth = 0;        // 0 = unbounded
    int min_samples_leaf = 1;
    int feature_candidates = 0; // 0 = all features
};

/// Binary CART tree, Gini impurity, midpoint thresholds.
class DecisionTree {
public:
    void fit(const Matrix& x, const std::vector<int>& y,
             const std::vector<std::size_t>& rows, const TreeConfig& cfg, Rng& rng);
    int predict(std::span<const double> x) const;
    std::size_t node_count() const { return nodes_.size(); }

    struct Node {
        bool leaf = true;
        int label = 0;
        std::size_t feature = 0;
        double threshold = 0.0;
        std::size_t left = 0, right = 0;
    };
    const std::vector<Node>& nodes() const { return nodes_; }

private:
    std::size_t grow(const Matrix& x, const std::vector<int>& y,
                     std::vector<std::size_t>& rows, int depth,
                     const TreeConfig& cfg, Rng& rng);
    std::vector<Node> nodes_;
};

class ForestModel final : public Classifier {
public:
    /// Params: n_trees, max_depth (0 = unbounded), min_samples_leaf,
    /// bootstrap (default 1), feature_subsample (default 1 -> sqrt(d)).
    static std::unique_ptr<ForestModel> fit(const Params& params, const Matrix& x,
                                            const std::vector<int>& y, std::uint64_t seed);

    std::size_t tree_count() const { return trees_.size(); }
    const DecisionTree& tree(std::size_t i) const { return trees_[i]; }

protected:
    double score_impl(std::span<const double> x) const override;
    void describe_json(std::string& out) const override;

private:
    ForestModel(Params params, std::size_t dim)
        : Classifier(ModelFamily::random_forest, std::move(params), dim) {}
    std::vector<DecisionTree> trees_;
};

// --- AdaBoost with depth-1 stumps --------------------------------------------

struct DecisionStump {
    std::size_t feature = 0;
    double threshold = 0.0;
    int polarity = 1; // predicts +1 when polarity * (x[f] - threshold) >= 0

    int predict_pm(std::span<const double> x) const {
        double side = x[feature] >= threshold ? 1.0 : -1.0;
        return static_cast<int>(side) * polarity;
    }
};

class AdaBoostModel final : public Classifier {
public:
    /// Params: rounds (T). Discrete AdaBoost; stops early on a perfect stump
    /// (weight capped at ln 1e10) or when no stump beats error 0.5.
    static std::unique_ptr<AdaBoostModel> fit(const Params& params, const Matrix& x,
                                              const std::vector<int>& y);

    const std::vector<double>& round_errors() const { return round_errors_; }
    const std::vector<double>& round_weights() const { return round_weights_; }
    std::size_t round_count() const { return stumps_.size(); }

protected:
    double score_impl(std::span<const double> x) const override;
    void describe_json(std::string& out) const override;

private:
    AdaBoostModel(Params params, std::size_t dim)
        : Classifier(ModelFamily::adaboost, std::move(params), dim) {}

    std::vector<DecisionStump> stumps_;
    std::vector<double> round_weights_; // alpha_t
    std::vector<double> round_errors_;  // epsilon_t
};

} // namespace eegval

#endif
