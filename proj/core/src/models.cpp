#include "mlc/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mlc/errors.hpp"
#include "mlc/rng.hpp"

namespace mlc {

namespace {

double sigmoid(double s) {
    if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
    double e = std::exp(s);
    return e / (1.0 + e);
}

void check_training_data(const std::vector<FeatureVector>& x, const std::vector<int>& y) {
    if (x.empty() || x.size() != y.size())
        throw std::invalid_argument("training data empty or misaligned");
    const std::size_t d = x[0].size();
    if (d == 0) throw std::invalid_argument("feature dimension is zero");
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].size() != d) throw std::invalid_argument("ragged feature rows");
        if (y[i] == 1) has_pos = true;
        else if (y[i] == 0) has_neg = true;
        else throw std::invalid_argument("labels must be 0 or 1");
    }
    if (!has_pos || !has_neg)
        throw DegenerateDataError("training data contains a single class");
}

struct Standardizer {
    std::vector<double> mean, scale;

    void fit(const std::vector<FeatureVector>& x) {
        const std::size_t d = x[0].size();
        mean.assign(d, 0.0);
        scale.assign(d, 1.0);
        for (const auto& row : x)
            for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
        for (double& m : mean) m /= static_cast<double>(x.size());
        std::vector<double> var(d, 0.0);
        for (const auto& row : x)
            for (std::size_t j = 0; j < d; ++j) {
                double diff = row[j] - mean[j];
                var[j] += diff * diff;
            }
        for (std::size_t j = 0; j < d; ++j) {
            double sd = std::sqrt(var[j] / static_cast<double>(x.size()));
            scale[j] = sd > 1e-12 ? sd : 1.0;
        }
    }
};

void write_vector(std::ostream& out, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? " " : "") << v[i];
    out << "\n";
}

class BaselineModel final : public Classifier {
public:
    BaselineModel(int rank, double rate) : Classifier(rank), rate_(rate) {
        if (rate < 0.0 || rate > 1.0)
            throw std::invalid_argument("baseline rate must lie in [0, 1]");
    }
    ModelKind kind() const override { return ModelKind::baseline; }
    int dim() const override { return 0; }
    double rate() const { return rate_; }
    void save(std::ostream& out) const override {
        out << "rate " << rate_ << "\n";
    }

protected:
    double predict_impl(const FeatureVector&) const override { return rate_; }

private:
    double rate_;
};

class LinearModelBase : public Classifier {
public:
    LinearModelBase(int rank, std::vector<double> w, double bias,
                    std::vector<double> mean, std::vector<double> scale)
        : Classifier(rank), w_(std::move(w)), bias_(bias),
          mean_(std::move(mean)), scale_(std::move(scale)) {}
    int dim() const override { return static_cast<int>(w_.size()); }

    double score(const FeatureVector& x) const {
        double s = bias_;
        for (std::size_t j = 0; j < w_.size(); ++j)
            s += w_[j] * (x[j] - mean_[j]) / scale_[j];
        return s;
    }

    void save_linear(std::ostream& out) const {
        out << "dim " << w_.size() << "\n";
        out << "mean "; write_vector(out, mean_);
        out << "scale "; write_vector(out, scale_);
        out << "weights "; write_vector(out, w_);
        out << "bias " << bias_ << "\n";
    }

protected:
    std::vector<double> w_;
    double bias_;
    std::vector<double> mean_, scale_;
};

class LogisticModel final : public LinearModelBase {
public:
    using LinearModelBase::LinearModelBase;
    ModelKind kind() const override { return ModelKind::logistic; }
    void save(std::ostream& out) const override { save_linear(out); }

protected:
    double predict_impl(const FeatureVector& x) const override {
        return sigmoid(score(x));
    }
};

class SvmModel final : public LinearModelBase {
public:
    SvmModel(int rank, std::vector<double> w, double bias, std::vector<double> mean,
             std::vector<double> scale, double platt_a, double platt_b)
        : LinearModelBase(rank, std::move(w), bias, std::move(mean), std::move(scale)),
          platt_a_(platt_a), platt_b_(platt_b) {}
    ModelKind kind() const override { return ModelKind::linear_svm; }
    void save(std::ostream& out) const override {
        save_linear(out);
        out << "platt " << platt_a_ << " " << platt_b_ << "\n";
    }

protected:
    double predict_impl(const FeatureVector& x) const override {
        return sigmoid(-(platt_a_ * score(x) + platt_b_));
    }

private:
    double platt_a_, platt_b_;
};

struct Stump {
    int feature;
    double threshold;
    double left, right; // learning rate already folded in

    double value(const FeatureVector& x) const {
        return x[feature] <= threshold ? left : right;
    }
};

class StumpsModel final : public Classifier {
public:
    StumpsModel(int rank, int dim, double base, std::vector<Stump> stumps)
        : Classifier(rank), dim_(dim), base_(base), stumps_(std::move(stumps)) {}
    ModelKind kind() const override { return ModelKind::gb_stumps; }
    int dim() const override { return dim_; }

    double raw_score(const FeatureVector& x) const {
        double s = base_;
        for (const auto& st : stumps_) s += st.value(x);
        return s;
    }

    void save(std::ostream& out) const override {
        out << "dim " << dim_ << "\n";
        out << "base " << base_ << "\n";
        out << "stumps " << stumps_.size() << "\n";
        for (const auto& st : stumps_)
            out << st.feature << " " << st.threshold << " " << st.left << " "
                << st.right << "\n";
    }

protected:
    double predict_impl(const FeatureVector& x) const override {
        return sigmoid(raw_score(x));
    }

private:
    int dim_;
    double base_;
    std::vector<Stump> stumps_;
};

class EnsembleModel final : public Classifier {
public:
    EnsembleModel(int rank, std::vector<std::unique_ptr<Classifier>> members)
        : Classifier(rank), members_(std::move(members)) {}
    ModelKind kind() const override { return ModelKind::ensemble; }
    int dim() const override {
        for (const auto& m : members_)
            if (m->dim() != 0) return m->dim();
        return 0;
    }
    void save(std::ostream& out) const override {
        out << "members " << members_.size() << "\n";
        for (const auto& m : members_) save_model(out, *m);
    }

protected:
    double predict_impl(const FeatureVector& x) const override {
        double sum = 0.0;
        for (const auto& m : members_) sum += m->predict(x);
        return sum / static_cast<double>(members_.size());
    }

private:
    std::vector<std::unique_ptr<Classifier>> members_;
};

// Robust sigmoid fit to decision scores (Platt calibration, Newton with
// backtracking as in Lin, Weng and Keerthi's formulation).
std::pair<double, double> fit_platt(const std::vector<double>& scores,
                                    const std::vector<int>& y) {
    const std::size_t n = scores.size();
    double prior1 = 0, prior0 = 0;
    for (int v : y) (v == 1 ? prior1 : prior0) += 1.0;
    if (n == 0) return {-1.0, 0.0};

    const double hi = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo = 1.0 / (prior0 + 2.0);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = y[i] == 1 ? hi : lo;

    double a = 0.0, b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    auto objective = [&](double pa, double pb) {
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fApB = scores[i] * pa + pb;
            if (fApB >= 0)
                f += t[i] * fApB + std::log1p(std::exp(-fApB));
            else
                f += (t[i] - 1.0) * fApB + std::log1p(std::exp(fApB));
        }
        return f;
    };

    double fval = objective(a, b);
    const double min_step = 1e-10, sigma = 1e-12;
    for (int it = 0; it < 100; ++it) {
        double h11 = sigma, h22 = sigma, h21 = 0, g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double fApB = scores[i] * a + b;
            double p, q;
            if (fApB >= 0) {
                p = std::exp(-fApB) / (1.0 + std::exp(-fApB));
                q = 1.0 / (1.0 + std::exp(-fApB));
            } else {
                p = 1.0 / (1.0 + std::exp(fApB));
                q = std::exp(fApB) / (1.0 + std::exp(fApB));
            }
            double d2 = p * q;
            h11 += scores[i] * scores[i] * d2;
            h22 += d2;
            h21 += scores[i] * d2;
            double d1 = t[i] - p;
            g1 += scores[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

        double det = h11 * h22 - h21 * h21;
        double da = -(h22 * g1 - h21 * g2) / det;
        double db = -(-h21 * g1 + h11 * g2) / det;
        double gd = g1 * da + g2 * db;

        double step = 1.0;
        bool moved = false;
        while (step >= min_step) {
            double na = a + step * da, nb = b + step * db;
            double nf = objective(na, nb);
            if (nf < fval + 1e-4 * step * gd) {
                a = na; b = nb; fval = nf;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if (!moved) break;
    }
    return {a, b};
}

} // namespace

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::baseline: return "baseline";
        case ModelKind::logistic: return "logistic";
        case ModelKind::linear_svm: return "linear_svm";
        case ModelKind::gb_stumps: return "gb_stumps";
        case ModelKind::ensemble: return "ensemble";
    }
    throw std::invalid_argument("unknown model kind");
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "baseline") return ModelKind::baseline;
    if (name == "logistic") return ModelKind::logistic;
    if (name == "linear_svm") return ModelKind::linear_svm;
    if (name == "gb_stumps") return ModelKind::gb_stumps;
    if (name == "ensemble") return ModelKind::ensemble;
    throw std::invalid_argument("unknown model kind: " + name);
}

Classifier::Classifier(int rank) : rank_(rank) {
    if (rank != 1 && rank != 2)
        throw std::invalid_argument("classifier rank must be 1 or 2");
}

double Classifier::predict(const FeatureVector& x) const {
    if (dim() != 0 && static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("feature dimension mismatch");
    return std::clamp(predict_impl(x), 0.0, 1.0);
}

ClassifierMetrics evaluate_metrics(const Classifier& model,
                                   const std::vector<FeatureVector>& x,
                                   const std::vector<int>& y, double threshold) {
    if (x.empty() || x.size() != y.size())
        throw std::invalid_argument("evaluation data empty or misaligned");
    ClassifierMetrics m;
    for (std::size_t i = 0; i < x.size(); ++i) {
        bool pred = model.predict(x[i]) > threshold;
        bool truth = y[i] == 1;
        if (pred && truth) ++m.counts.tp;
        else if (pred && !truth) ++m.counts.fp;
        else if (!pred && truth) ++m.counts.fn;
        else ++m.counts.tn;
    }
    auto ratio = [](long long num, long long den) {
        return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    };
    const auto& c = m.counts;
    m.accuracy = ratio(c.tp + c.tn, c.total());
    m.precision = ratio(c.tp, c.tp + c.fp);
    m.tpr = ratio(c.tp, c.tp + c.fn);
    m.fpr = ratio(c.fp, c.fp + c.tn);
    m.balanced_accuracy = 0.5 * (m.tpr + 1.0 - m.fpr);
    return m;
}

double logistic_loss(const std::vector<double>& w, double bias,
                     const std::vector<FeatureVector>& x, const std::vector<int>& y,
                     double l2) {
    double loss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = bias;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[i][j];
        // -log p(y|x), stable for large |s|
        double z = y[i] == 1 ? s : -s;
        loss += z >= 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
    }
    loss /= static_cast<double>(x.size());
    double reg = 0.0;
    for (double v : w) reg += v * v;
    return loss + 0.5 * l2 * reg;
}

void logistic_gradient(const std::vector<double>& w, double bias,
                       const std::vector<FeatureVector>& x, const std::vector<int>& y,
                       double l2, std::vector<double>& gw, double& gbias) {
    gw.assign(w.size(), 0.0);
    gbias = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = bias;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[i][j];
        double err = sigmoid(s) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < w.size(); ++j) gw[j] += err * x[i][j];
        gbias += err;
    }
    double inv = 1.0 / static_cast<double>(x.size());
    for (std::size_t j = 0; j < w.size(); ++j) gw[j] = gw[j] * inv + l2 * w[j];
    gbias *= inv;
}

double hinge_loss(const std::vector<double>& w, double bias,
                  const std::vector<FeatureVector>& x, const std::vector<int>& y,
                  double c) {
    double loss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = bias;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[i][j];
        double sign = y[i] == 1 ? 1.0 : -1.0;
        loss += std::max(0.0, 1.0 - sign * s);
    }
    loss /= static_cast<double>(x.size());
    double reg = 0.0;
    for (double v : w) reg += v * v;
    return loss + 0.5 * reg / c;
}

void hinge_subgradient(const std::vector<double>& w, double bias,
                       const std::vector<FeatureVector>& x, const std::vector<int>& y,
                       double c, std::vector<double>& gw, double& gbias) {
    gw.assign(w.size(), 0.0);
    gbias = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = bias;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[i][j];
        double sign = y[i] == 1 ? 1.0 : -1.0;
        if (sign * s < 1.0) {
            for (std::size_t j = 0; j < w.size(); ++j) gw[j] -= sign * x[i][j];
            gbias -= sign;
        }
    }
    double inv = 1.0 / static_cast<double>(x.size());
    for (std::size_t j = 0; j < w.size(); ++j) gw[j] = gw[j] * inv + w[j] / c;
    gbias *= inv;
}

double logloss_from_scores(const std::vector<double>& scores, const std::vector<int>& y) {
    double loss = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        double z = y[i] == 1 ? scores[i] : -scores[i];
        loss += z >= 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
    }
    return loss / static_cast<double>(scores.size());
}

void logloss_score_gradient(const std::vector<double>& scores, const std::vector<int>& y,
                            std::vector<double>& grad) {
    grad.assign(scores.size(), 0.0);
    double inv = 1.0 / static_cast<double>(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        grad[i] = (sigmoid(scores[i]) - static_cast<double>(y[i])) * inv;
}

namespace {

std::vector<FeatureVector> standardized(const std::vector<FeatureVector>& x,
                                        const Standardizer& st) {
    std::vector<FeatureVector> z = x;
    for (auto& row : z)
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = (row[j] - st.mean[j]) / st.scale[j];
    return z;
}

// Mini-batch SGD shared by the two linear trainers; `batch_grad` accumulates
// the data term, the L2 shrink is applied multiplicatively.
template <typename BatchGrad>
void run_sgd(std::vector<double>& w, double& bias, const std::vector<FeatureVector>& z,
             int epochs, int batch, double lr, double shrink_per_step,
             std::uint64_t seed, BatchGrad batch_grad) {
    const std::size_t n = z.size();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    std::vector<double> gw(w.size());
    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(idx);
        for (std::size_t off = 0; off < n; off += batch) {
            std::size_t end = std::min(n, off + batch);
            std::fill(gw.begin(), gw.end(), 0.0);
            double gb = 0.0;
            batch_grad(idx, off, end, w, bias, gw, gb);
            double scale = lr / static_cast<double>(end - off);
            for (std::size_t j = 0; j < w.size(); ++j)
                w[j] = w[j] * shrink_per_step - scale * gw[j];
            bias -= scale * gb;
        }
    }
}

} // namespace

std::unique_ptr<Classifier> train_logistic(const std::vector<FeatureVector>& x,
                                           const std::vector<int>& y, int rank,
                                           const LogisticConfig& cfg, std::uint64_t seed) {
    check_training_data(x, y);
    Standardizer st;
    st.fit(x);
    auto z = standardized(x, st);

    std::vector<double> w(z[0].size(), 0.0);
    double bias = 0.0;
    double shrink = std::max(0.0, 1.0 - cfg.learning_rate * cfg.l2);
    run_sgd(w, bias, z, cfg.epochs, cfg.batch, cfg.learning_rate, shrink, seed,
            [&](const std::vector<int>& idx, std::size_t off, std::size_t end,
                const std::vector<double>& wc, double bc, std::vector<double>& gw,
                double& gb) {
                for (std::size_t p = off; p < end; ++p) {
                    const auto& row = z[idx[p]];
                    double s = bc;
                    for (std::size_t j = 0; j < wc.size(); ++j) s += wc[j] * row[j];
                    double err = sigmoid(s) - static_cast<double>(y[idx[p]]);
                    for (std::size_t j = 0; j < wc.size(); ++j) gw[j] += err * row[j];
                    gb += err;
                }
            });
    return std::make_unique<LogisticModel>(rank, std::move(w), bias, std::move(st.mean),
                                           std::move(st.scale));
}

std::unique_ptr<Classifier> train_linear_svm(const std::vector<FeatureVector>& x,
                                             const std::vector<int>& y, int rank,
                                             const SvmConfig& cfg, std::uint64_t seed) {
    check_training_data(x, y);
    Standardizer st;
    st.fit(x);
    auto z = standardized(x, st);
    const std::size_t n = z.size();

    // Hold out a calibration fold so the probability map is not fitted on the
    // same rows the margin was fitted on.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng fold_rng(mix_seed(seed, 0x5eedca11));
    fold_rng.shuffle(order);
    std::size_t held = n >= 20 ? static_cast<std::size_t>(
                                     std::llround(cfg.calibration_fraction * n))
                               : 0;
    held = std::min(held, n / 2);

    std::vector<FeatureVector> zt;
    std::vector<int> yt;
    zt.reserve(n - held);
    yt.reserve(n - held);
    for (std::size_t p = held; p < n; ++p) {
        zt.push_back(z[order[p]]);
        yt.push_back(y[order[p]]);
    }
    bool both = false, seen1 = false, seen0 = false;
    for (int v : yt) { (v ? seen1 : seen0) = true; both = seen1 && seen0; }
    if (!both) { // fold split starved a class; train on everything instead
        zt = z;
        yt = y;
        held = 0;
    }

    std::vector<double> w(z[0].size(), 0.0);
    double bias = 0.0;
    double shrink = std::max(0.0, 1.0 - cfg.learning_rate / cfg.c);
    run_sgd(w, bias, zt, cfg.epochs, cfg.batch, cfg.learning_rate, shrink, seed,
            [&](const std::vector<int>& idx, std::size_t off, std::size_t end,
                const std::vector<double>& wc, double bc, std::vector<double>& gw,
                double& gb) {
                for (std::size_t p = off; p < end; ++p) {
                    const auto& row = zt[idx[p]];
                    double s = bc;
                    for (std::size_t j = 0; j < wc.size(); ++j) s += wc[j] * row[j];
                    double sign = yt[idx[p]] == 1 ? 1.0 : -1.0;
                    if (sign * s < 1.0) {
                        for (std::size_t j = 0; j < wc.size(); ++j)
                            gw[j] -= sign * row[j];
                        gb -= sign;
                    }
                }
            });

    std::vector<double> cal_scores;
    std::vector<int> cal_y;
    for (std::size_t p = 0; p < held; ++p) {
        const auto& row = z[order[p]];
        double s = bias;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * row[j];
        cal_scores.push_back(s);
        cal_y.push_back(y[order[p]]);
    }
    auto [pa, pb] = fit_platt(cal_scores, cal_y);
    return std::make_unique<SvmModel>(rank, std::move(w), bias, std::move(st.mean),
                                      std::move(st.scale), pa, pb);
}

std::unique_ptr<Classifier> train_gb_stumps(const std::vector<FeatureVector>& x,
                                            const std::vector<int>& y, int rank,
                                            const StumpsConfig& cfg, std::uint64_t) {
    check_training_data(x, y);
    const std::size_t n = x.size();
    const int d = static_cast<int>(x[0].size());

    double pos = 0;
    for (int v : y) pos += v;
    double prior = std::clamp(pos / static_cast<double>(n), 1e-6, 1.0 - 1e-6);
    const double base = std::log(prior / (1.0 - prior));

    // One presort per feature; ties broken by row index for determinism.
    std::vector<std::vector<int>> sorted(d, std::vector<int>(n));
    for (int j = 0; j < d; ++j) {
        auto& ord = sorted[j];
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) {
            return x[a][j] < x[b][j] || (x[a][j] == x[b][j] && a < b);
        });
    }

    std::vector<double> scores(n, base);
    std::vector<Stump> stumps;
    stumps.reserve(cfg.rounds);
    std::vector<double> g(n), h(n);
    for (int round = 0; round < cfg.rounds; ++round) {
        double gall = 0, hall = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(scores[i]);
            g[i] = p - static_cast<double>(y[i]);
            h[i] = std::max(p * (1.0 - p), 1e-16);
            gall += g[i];
            hall += h[i];
        }
        double root_obj = gall * gall / (hall + cfg.lambda);

        double best_gain = 0.0;
        int best_feat = -1;
        double best_thr = 0.0, best_gl = 0.0, best_hl = 0.0;
        for (int j = 0; j < d; ++j) {
            const auto& ord = sorted[j];
            double gl = 0, hl = 0;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                gl += g[ord[p]];
                hl += h[ord[p]];
                double a = x[ord[p]][j], b = x[ord[p + 1]][j];
                if (a == b) continue;
                double gr = gall - gl, hr = hall - hl;
                double gain = gl * gl / (hl + cfg.lambda) + gr * gr / (hr + cfg.lambda) -
                              root_obj;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_feat = j;
                    best_thr = 0.5 * (a + b);
                    best_gl = gl;
                    best_hl = hl;
                }
            }
        }
        if (best_feat < 0) break; // no split helps any more

        double left = -cfg.learning_rate * best_gl / (best_hl + cfg.lambda);
        double right = -cfg.learning_rate * (gall - best_gl) /
                       ((hall - best_hl) + cfg.lambda);
        stumps.push_back({best_feat, best_thr, left, right});
        for (std::size_t i = 0; i < n; ++i)
            scores[i] += x[i][best_feat] <= best_thr ? left : right;
    }
    return std::make_unique<StumpsModel>(rank, d, base, std::move(stumps));
}

std::unique_ptr<Classifier> make_baseline(int rank, double rate) {
    return std::make_unique<BaselineModel>(rank, rate);
}

std::unique_ptr<Classifier> make_ensemble(std::vector<std::unique_ptr<Classifier>> members) {
    if (members.size() < 2)
        throw std::invalid_argument("ensemble needs at least two members");
    int rank = members[0]->rank();
    for (const auto& m : members)
        if (m->rank() != rank)
            throw std::invalid_argument("ensemble members have mixed ranks");
    return std::make_unique<EnsembleModel>(rank, std::move(members));
}

void save_model(std::ostream& out, const Classifier& model) {
    out << std::setprecision(17);
    out << "mlc-model v1\n";
    out << "kind " << model_kind_name(model.kind()) << "\n";
    out << "rank " << model.rank() << "\n";
    model.save(out);
    out << "end\n";
}

namespace {

std::string expect_key(std::istream& in, const std::string& key) {
    std::string tok;
    if (!(in >> tok) || tok != key)
        throw ParseError("model file: expected '" + key + "', got '" + tok + "'");
    return tok;
}

template <typename T>
T read_value(std::istream& in, const std::string& key) {
    expect_key(in, key);
    T v;
    if (!(in >> v)) throw ParseError("model file: bad value for '" + key + "'");
    return v;
}

std::vector<double> read_vector(std::istream& in, const std::string& key, int d) {
    expect_key(in, key);
    std::vector<double> v(d);
    for (double& e : v)
        if (!(in >> e)) throw ParseError("model file: truncated '" + key + "' vector");
    return v;
}

} // namespace

std::unique_ptr<Classifier> load_model(std::istream& in) {
    std::string magic, version;
    if (!(in >> magic >> version) || magic != "mlc-model")
        throw ParseError("not a model file");
    if (version != "v1") throw ParseError("unsupported model version: " + version);

    ModelKind kind;
    try {
        kind = model_kind_from_name(read_value<std::string>(in, "kind"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    int rank = read_value<int>(in, "rank");

    std::unique_ptr<Classifier> model;
    switch (kind) {
        case ModelKind::baseline: {
            double rate = read_value<double>(in, "rate");
            model = make_baseline(rank, rate);
            break;
        }
        case ModelKind::logistic: {
            int d = read_value<int>(in, "dim");
            auto mean = read_vector(in, "mean", d);
            auto scale = read_vector(in, "scale", d);
            auto w = read_vector(in, "weights", d);
            double bias = read_value<double>(in, "bias");
            model = std::make_unique<LogisticModel>(rank, std::move(w), bias,
                                                    std::move(mean), std::move(scale));
            break;
        }
        case ModelKind::linear_svm: {
            int d = read_value<int>(in, "dim");
            auto mean = read_vector(in, "mean", d);
            auto scale = read_vector(in, "scale", d);
            auto w = read_vector(in, "weights", d);
            double bias = read_value<double>(in, "bias");
            expect_key(in, "platt");
            double pa, pb;
            if (!(in >> pa >> pb)) throw ParseError("model file: bad platt pair");
            model = std::make_unique<SvmModel>(rank, std::move(w), bias, std::move(mean),
                                               std::move(scale), pa, pb);
            break;
        }
        case ModelKind::gb_stumps: {
            int d = read_value<int>(in, "dim");
            double base = read_value<double>(in, "base");
            int m = read_value<int>(in, "stumps");
            std::vector<Stump> stumps(m);
            for (auto& st : stumps)
                if (!(in >> st.feature >> st.threshold >> st.left >> st.right))
                    throw ParseError("model file: truncated stump list");
            model = std::make_unique<StumpsModel>(rank, d, base, std::move(stumps));
            break;
        }
        case ModelKind::ensemble: {
            int m = read_value<int>(in, "members");
            if (m < 2) throw ParseError("model file: ensemble needs two members");
            std::vector<std::unique_ptr<Classifier>> members;
            members.reserve(m);
            for (int i = 0; i < m; ++i) members.push_back(load_model(in));
            model = make_ensemble(std::move(members));
            break;
        }
    }
    expect_key(in, "end");
    return model;
}

void save_model_file(const std::string& path, const Classifier& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    save_model(out, model);
}

std::unique_ptr<Classifier> load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read model file: " + path);
    return load_model(in);
}

} // namespace mlc
