#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mlc/features.hpp"

namespace mlc {

enum class ModelKind { baseline, logistic, linear_svm, gb_stumps, ensemble };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

// Binary classifier for "is this candidate edge optimal", trained separately
// for rank-1 and rank-2 edges.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual ModelKind kind() const = 0;
    virtual int dim() const = 0; // 0 accepts any input dimension
    int rank() const { return rank_; }

    // Probability in [0, 1]; throws std::invalid_argument on dimension mismatch.
    double predict(const FeatureVector& x) const;

    virtual void save(std::ostream& out) const = 0;

protected:
    explicit Classifier(int rank);
    virtual double predict_impl(const FeatureVector& x) const = 0;

private:
    int rank_;
};

struct ConfusionStats {
    long long tp = 0, fp = 0, tn = 0, fn = 0;
    long long total() const { return tp + fp + tn + fn; }
};

struct ClassifierMetrics {
    double accuracy = 0, balanced_accuracy = 0, precision = 0, tpr = 0, fpr = 0;
    ConfusionStats counts;
};

// Predicted positive iff probability > threshold. Zero denominators yield 0.
ClassifierMetrics evaluate_metrics(const Classifier& model,
                                   const std::vector<FeatureVector>& x,
                                   const std::vector<int>& y,
                                   double threshold = 0.5);

struct LogisticConfig {
    int epochs = 40;
    int batch = 64;
    double learning_rate = 0.1;
    double l2 = 1e-4;
};

struct SvmConfig {
    int epochs = 40;
    int batch = 64;
    double learning_rate = 0.05;
    double c = 4.0;
    double calibration_fraction = 0.1; // held out for probability calibration
};

struct StumpsConfig {
    int rounds = 150;
    double learning_rate = 0.2;
    double lambda = 1.0; // leaf-value regularizer
};

// All trainers are deterministic given the seed and require both classes.
std::unique_ptr<Classifier> train_logistic(const std::vector<FeatureVector>& x,
                                           const std::vector<int>& y, int rank,
                                           const LogisticConfig& cfg, std::uint64_t seed);

std::unique_ptr<Classifier> train_linear_svm(const std::vector<FeatureVector>& x,
                                             const std::vector<int>& y, int rank,
                                             const SvmConfig& cfg, std::uint64_t seed);

std::unique_ptr<Classifier> train_gb_stumps(const std::vector<FeatureVector>& x,
                                            const std::vector<int>& y, int rank,
                                            const StumpsConfig& cfg, std::uint64_t seed);

std::unique_ptr<Classifier> make_baseline(int rank, double rate);

// Soft voting: mean of member probabilities. Members must share a rank.
std::unique_ptr<Classifier> make_ensemble(std::vector<std::unique_ptr<Classifier>> members);

// Full-batch objectives backing the SGD trainers, exposed so gradients can be
// checked against finite differences.
double logistic_loss(const std::vector<double>& w, double bias,
                     const std::vector<FeatureVector>& x, const std::vector<int>& y,
                     double l2);
void logistic_gradient(const std::vector<double>& w, double bias,
                       const std::vector<FeatureVector>& x, const std::vector<int>& y,
                       double l2, std::vector<double>& gw, double& gbias);
double hinge_loss(const std::vector<double>& w, double bias,
                  const std::vector<FeatureVector>& x, const std::vector<int>& y,
                  double c);
void hinge_subgradient(const std::vector<double>& w, double bias,
                       const std::vector<FeatureVector>& x, const std::vector<int>& y,
                       double c, std::vector<double>& gw, double& gbias);
double logloss_from_scores(const std::vector<double>& scores, const std::vector<int>& y);
void logloss_score_gradient(const std::vector<double>& scores, const std::vector<int>& y,
                            std::vector<double>& grad);

// Versioned plain-text persistence; ensembles nest member blocks.
void save_model(std::ostream& out, const Classifier& model);
std::unique_ptr<Classifier> load_model(std::istream& in);
void save_model_file(const std::string& path, const Classifier& model);
std::unique_ptr<Classifier> load_model_file(const std::string& path);

} // namespace mlc
