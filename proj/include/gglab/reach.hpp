#pragma once

#include <optional>
#include <vector>

#include "gglab/core.hpp"

namespace gg {

/// Convex polytope of distributions given by its vertex list.
struct DistPolytope {
    MetricSpacePtr space;
    std::vector<Distribution> vertices;
};

/// Acyclicity certificate: a potential whose affine extension is uniquely
/// maximized at the Dirac of the current state, with a positive margin.
struct Potential {
    std::vector<double> values;
    double margin = 0.0;
};

struct ImageOptions {
    std::size_t vertex_cap = 512;        // retained vertices per polytope
    std::size_t product_cap = 100000;    // exact generator-product candidates
    std::size_t sample_directions = 96;  // support-function sampling fallback
};

struct ImageResult {
    DistPolytope polytope;
    bool approximate = false;  // thinned past the cap or direction-sampled
    double thinning_gap = 0.0;
};

/// Linear extension applied to a polytope: the image
///   union over p in P of Gamma~(p),
/// where Gamma~(p) is the weighted Minkowski sum sum_x p(x) Gamma(x).
/// Exact for 3-state spaces (planar hulls) and for vertices of support at
/// most 2; beyond that, vertex candidates come from support-function sampling
/// and the result is tagged approximate. Exceeding product_cap in a situation
/// with no sampling fallback raises resource_error (use coarser generators).
ImageResult linear_extension_image(const GamblingHouse& house, const DistPolytope& p,
                                   const ImageOptions& opts = {});

struct ReachResult {
    DistPolytope polytope;
    double gap = 0.0;  // achieved Hausdorff gap of the last comparison
    bool converged = false;
    int squarings = 0;
    bool approximate = false;
};

struct ReachOptions {
    double tol = 1e-7;
    int max_squarings = 60;
    ImageOptions image;
};

/// Reachable sets Gamma^inf(x) for every state of a leavable house, computed
/// by squaring the linearly extended map: the k-th iterate covers 2^k stages,
/// so the nested sequence converges geometrically where single-step image
/// iteration creeps harmonically. Stops when the KR-Hausdorff gap between
/// consecutive iterates is at most tol for every state.
class ReachableSets {
public:
    explicit ReachableSets(const GamblingHouse& house, ReachOptions opts = {});

    std::size_t num_states() const { return results_.size(); }
    const ReachResult& at(std::size_t x) const { return results_.at(x); }
    bool all_converged() const;

private:
    std::vector<ReachResult> results_;
};

/// Single-state convenience wrapper (computes all states internally).
ReachResult reachable_set(const GamblingHouse& house, std::size_t x, double tol = 1e-7,
                          int max_squarings = 60);

struct AcyclicityReport {
    bool pass = false;
    double margin = 0.0;  // min over states of phi(x) - max off-dirac vertex
    bool dirac_member = true;
    std::optional<std::size_t> witness_state;
    std::optional<Distribution> witness_vertex;
};

/// Weak acyclicity under the given potential: delta_x in Gamma(x) and every
/// generator other than delta_x sits below phi(x) by a margin > tol.
/// (A vertex check suffices: the argmax of a linear functional over a
/// polytope is the face of maximizing vertices.)
AcyclicityReport check_weakly_acyclic(const GamblingHouse& house, const Potential& phi,
                                      double tol = kCheckTol);

/// Strong acyclicity: the same vertex test against the reachable sets.
AcyclicityReport check_strongly_acyclic(const GamblingHouse& house, const Potential& phi,
                                        double tol = kCheckTol);
AcyclicityReport check_strongly_acyclic(const GamblingHouse& house, const ReachableSets& reach,
                                        const Potential& phi, double tol = kCheckTol);

enum class AcyclicityMode { weak, strong };

/// Search for a potential by linear programming: maximize the margin t
/// subject to 0 <= phi <= 1 and phi(x) - phi~(g) >= t for every state x and
/// relevant vertex g != delta_x. Returns a certificate iff the optimum
/// exceeds tol; infeasibility at this discretization is not a proof of
/// non-acyclicity.
std::optional<Potential> synthesize_potential(const GamblingHouse& house, AcyclicityMode mode,
                                              double tol = 1e-6);
std::optional<Potential> synthesize_potential(const GamblingHouse& house,
                                              const ReachableSets* reach, AcyclicityMode mode,
                                              double tol = 1e-6);

/// Directed KR-Hausdorff distance: max over vertices of `from` of the
/// kr-distance to the polytope `to`. Exact for polytopes, no sampling.
double directed_hausdorff(const DistPolytope& from, const DistPolytope& to);

/// Symmetric Hausdorff distance (two directed passes).
double hausdorff(const DistPolytope& a, const DistPolytope& b);

/// Idempotency: Gamma composed with itself equals Gamma, i.e. for every state
/// the one-step image of Gamma(x) stays within Hausdorff tol of Gamma(x).
bool check_idempotent(const GamblingHouse& house, double tol = 1e-9);

}  // namespace gg
