#include "gglab/space.hpp"

#include <algorithm>
#include <cmath>

namespace gg {

MetricSpace::MetricSpace(std::vector<std::string> labels, Matrix dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw input_error("metric space: empty");
    if (dist_.rows() != n || dist_.cols() != n)
        throw input_error("metric space: distance matrix must be " + std::to_string(n) +
                          "x" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_(i, i) != 0.0) throw input_error("metric space: nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (dist_(i, j) < 0.0) throw input_error("metric space: negative distance");
            if (i != j && dist_(i, j) == 0.0)
                throw input_error("metric space: zero distance between distinct points " +
                                  labels_[i] + ", " + labels_[j]);
            if (std::abs(dist_(i, j) - dist_(j, i)) > 1e-12)
                throw input_error("metric space: asymmetric distances");
            max_dist_ = std::max(max_dist_, dist_(i, j));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist_(i, j) > dist_(i, k) + dist_(k, j) + 1e-12)
                    throw input_error("metric space: triangle inequality fails at (" +
                                      labels_[i] + "," + labels_[j] + "," + labels_[k] + ")");
}

std::optional<std::size_t> MetricSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == name) return i;
    return std::nullopt;
}

MetricSpacePtr MetricSpace::discrete(std::vector<std::string> labels, double d) {
    const std::size_t n = labels.size();
    Matrix m(n, n, d);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
    return std::make_shared<MetricSpace>(std::move(labels), std::move(m));
}

MetricSpacePtr MetricSpace::line(std::vector<std::string> labels, std::vector<double> pos) {
    const std::size_t n = labels.size();
    if (pos.size() != n) throw input_error("metric space: position count mismatch");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = std::abs(pos[i] - pos[j]);
    return std::make_shared<MetricSpace>(std::move(labels), std::move(m));
}

MetricSpacePtr MetricSpace::cycle(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = i > j ? i - j : j - i;
            m(i, j) = static_cast<double>(std::min(k, n - k));
        }
    return std::make_shared<MetricSpace>(std::move(labels), std::move(m));
}

Distribution::Distribution(MetricSpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw input_error("distribution: null space");
    if (weights_.size() != space_->size())
        throw input_error("distribution: weight count mismatch");
    double sum = 0.0;
    for (double& w : weights_) {
        if (w < -kNormalizationTol) throw input_error("distribution: negative weight");
        if (w < 0.0) w = 0.0;
        sum += w;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol)
        throw input_error("distribution: weights sum to " + std::to_string(sum) +
                          ", not 1 (tolerance 1e-12)");
}

Distribution Distribution::dirac(MetricSpacePtr space, std::size_t i) {
    if (!space || i >= space->size()) throw input_error("dirac: index out of range");
    std::vector<double> w(space->size(), 0.0);
    w[i] = 1.0;
    return Distribution(std::move(space), std::move(w));
}

std::vector<std::size_t> Distribution::support(double tol) const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] > tol) s.push_back(i);
    return s;
}

double Distribution::l1(const Distribution& a, const Distribution& b) {
    if (a.size() != b.size()) throw input_error("l1: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a.weights_[i] - b.weights_[i]);
    return s;
}

bool Distribution::is_dirac_at(std::size_t i, double tol) const {
    return i < weights_.size() && std::abs(weights_[i] - 1.0) <= tol;
}

}  // namespace gg
