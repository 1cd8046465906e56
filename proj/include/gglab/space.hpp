#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gglab/common.hpp"

namespace gg {

class MetricSpace;
using MetricSpacePtr = std::shared_ptr<const MetricSpace>;

/// Finite labeled point set with a distance matrix. Validated at
/// construction: symmetry, zero diagonal, positivity off the diagonal and the
/// triangle inequality over every triple (O(n^3), fine at desk scale).
class MetricSpace {
public:
    MetricSpace(std::vector<std::string> labels, Matrix dist);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    double dist(std::size_t i, std::size_t j) const { return dist_(i, j); }
    const Matrix& dist_matrix() const { return dist_; }
    double max_dist() const { return max_dist_; }

    /// Discrete metric: d(x, x') = d for x != x'. The natural metric for
    /// finite state spaces without geometry (then d_KR is the L1 distance
    /// scaled by d/2).
    static MetricSpacePtr discrete(std::vector<std::string> labels, double d = 2.0);

    /// Points on a line, d(x, x') = |pos(x) - pos(x')|.
    static MetricSpacePtr line(std::vector<std::string> labels, std::vector<double> pos);

    /// n equidistant points on a cycle, d = arc length in steps.
    static MetricSpacePtr cycle(std::size_t n);

private:
    std::vector<std::string> labels_;
    Matrix dist_;
    double max_dist_ = 0.0;
};

/// Probability weights over a MetricSpace's points. Weights must be
/// nonnegative and sum to 1 within kNormalizationTol; anything else is
/// rejected rather than silently renormalized.
class Distribution {
public:
    Distribution(MetricSpacePtr space, std::vector<double> weights);

    static Distribution dirac(MetricSpacePtr space, std::size_t i);

    const MetricSpacePtr& space() const { return space_; }
    std::size_t size() const { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    /// Index set of strictly positive weights.
    std::vector<std::size_t> support(double tol = 0.0) const;

    /// L1 distance between the weight vectors; cheap support check helper.
    static double l1(const Distribution& a, const Distribution& b);

    bool is_dirac_at(std::size_t i, double tol = kNormalizationTol) const;

private:
    MetricSpacePtr space_;
    std::vector<double> weights_;
};

}  // namespace gg
