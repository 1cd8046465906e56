#include "gglab/reach.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gglab/lp.hpp"

namespace gg {
namespace {

// Vertices within this L1 distance of a Dirac are treated as that Dirac in
// the acyclicity tests (finite squaring leaves specks of mass behind).
constexpr double kDiracSkipTol = 1e-7;

constexpr double kDedupeTol = 1e-12;
constexpr double kHullCrossTol = 1e-13;
constexpr std::size_t kPairProductCap = 4096;

// --- planar geometry for 3-state spaces ------------------------------------
// A distribution (w0,w1,w2) maps to the point (w1,w2); the simplex is 2-D, so
// hulls, Minkowski sums and redundancy elimination are exact and cheap.

struct P2 {
    double x, y;
};

double cross(const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; drops points within kHullCrossTol of an edge, so
// collinear chains keep only their endpoints.
std::vector<P2> hull2(std::vector<P2> pts) {
    std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const P2& a, const P2& b) {
                              return std::abs(a.x - b.x) <= kDedupeTol &&
                                     std::abs(a.y - b.y) <= kDedupeTol;
                          }),
              pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<P2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= kHullCrossTol) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= kHullCrossTol) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

// Rotate a CCW hull so it starts at the bottom-most (then left-most) point.
void canonicalize(std::vector<P2>& p) {
    if (p.empty()) return;
    std::size_t lo = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i].y < p[lo].y || (p[i].y == p[lo].y && p[i].x < p[lo].x)) lo = i;
    std::rotate(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lo), p.end());
}

// Minkowski sum of two convex CCW polygons by edge merge, O(m+n).
std::vector<P2> minkowski(std::vector<P2> p, std::vector<P2> q) {
    if (p.empty()) return q;
    if (q.empty()) return p;
    if (p.size() == 1 || q.size() == 1) {
        const auto& pt = p.size() == 1 ? p[0] : q[0];
        auto& poly = p.size() == 1 ? q : p;
        for (auto& v : poly) v = P2{v.x + pt.x, v.y + pt.y};
        return poly;
    }
    canonicalize(p);
    canonicalize(q);
    const std::size_t m = p.size(), n = q.size();
    std::vector<P2> out;
    out.reserve(m + n + 1);
    std::size_t i = 0, j = 0;
    while (i < m || j < n) {
        out.push_back(P2{p[i % m].x + q[j % n].x, p[i % m].y + q[j % n].y});
        if (j >= n) { ++i; continue; }
        if (i >= m) { ++j; continue; }
        const P2 ep{p[(i + 1) % m].x - p[i % m].x, p[(i + 1) % m].y - p[i % m].y};
        const P2 eq{q[(j + 1) % n].x - q[j % n].x, q[(j + 1) % n].y - q[j % n].y};
        const double c = ep.x * eq.y - ep.y * eq.x;
        if (c > 0.0) ++i;
        else if (c < 0.0) ++j;
        else { ++i; ++j; }
    }
    return hull2(std::move(out));  // clean up numerical slop
}

std::vector<P2> to_plane(const std::vector<Distribution>& vs) {
    std::vector<P2> pts;
    pts.reserve(vs.size());
    for (const auto& v : vs) pts.push_back(P2{v.weight(1), v.weight(2)});
    return pts;
}

std::vector<Distribution> from_plane(const MetricSpacePtr& space, const std::vector<P2>& pts) {
    std::vector<Distribution> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        double w0 = 1.0 - p.x - p.y;
        if (w0 < 0.0 && w0 > -1e-9) w0 = 0.0;
        out.emplace_back(space, std::vector<double>{w0, p.x, p.y});
    }
    return out;
}

// --- general-dimension pruning ----------------------------------------------

std::vector<Distribution> dedupe(std::vector<Distribution> vs) {
    std::sort(vs.begin(), vs.end(), [](const Distribution& a, const Distribution& b) {
        return a.weights() < b.weights();
    });
    std::vector<Distribution> out;
    for (auto& v : vs) {
        if (!out.empty() && Distribution::l1(out.back(), v) <= kDedupeTol) continue;
        out.push_back(std::move(v));
    }
    return out;
}

struct PruneOutcome {
    std::vector<Distribution> vertices;
    bool approximate = false;
    double thinning_gap = 0.0;
};

// Farthest-point thinning down to the cap, seeded with the per-coordinate
// extremes so directional maxima survive. The recorded gap bounds the
// KR-Hausdorff error of the dropped points.
void thin_to_cap(std::vector<Distribution>& vs, std::size_t cap, double max_dist,
                 PruneOutcome& out) {
    if (vs.size() <= cap) return;
    const std::size_t n = vs.front().size();
    std::vector<char> picked(vs.size(), 0);
    std::vector<std::size_t> order;
    for (std::size_t coord = 0; coord < n; ++coord) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < vs.size(); ++i) {
            if (vs[i].weight(coord) < vs[lo].weight(coord)) lo = i;
            if (vs[i].weight(coord) > vs[hi].weight(coord)) hi = i;
        }
        for (std::size_t i : {lo, hi})
            if (!picked[i] && order.size() < cap) { picked[i] = 1; order.push_back(i); }
    }
    std::vector<double> dist(vs.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t s : order) dist[i] = std::min(dist[i], Distribution::l1(vs[i], vs[s]));
    while (order.size() < cap) {
        std::size_t best = vs.size();
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (!picked[i] && (best == vs.size() || dist[i] > dist[best])) best = i;
        picked[best] = 1;
        order.push_back(best);
        for (std::size_t i = 0; i < vs.size(); ++i)
            dist[i] = std::min(dist[i], Distribution::l1(vs[i], vs[best]));
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (!picked[i]) gap = std::max(gap, dist[i]);
    std::sort(order.begin(), order.end());
    std::vector<Distribution> kept;
    kept.reserve(cap);
    for (std::size_t i : order) kept.push_back(std::move(vs[i]));
    vs = std::move(kept);
    out.approximate = true;
    out.thinning_gap = std::max(out.thinning_gap, 0.5 * max_dist * gap);
}

// Redundancy elimination: keep a vertex iff it is not a convex combination of
// the other candidates. Exact planar hull for 3-state spaces; membership LPs
// otherwise.
PruneOutcome prune(const MetricSpacePtr& space, std::vector<Distribution> vs,
                   const ImageOptions& opts) {
    PruneOutcome out;
    vs = dedupe(std::move(vs));
    const std::size_t n = space->size();
    if (vs.size() <= 1) {
        out.vertices = std::move(vs);
        return out;
    }
    if (n == 1) {
        out.vertices = {vs.front()};
        return out;
    }
    if (n == 2) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < vs.size(); ++i) {
            if (vs[i].weight(1) < vs[lo].weight(1)) lo = i;
            if (vs[i].weight(1) > vs[hi].weight(1)) hi = i;
        }
        out.vertices.push_back(vs[lo]);
        if (hi != lo) out.vertices.push_back(vs[hi]);
        return out;
    }
    if (n == 3) {
        out.vertices = from_plane(space, hull2(to_plane(vs)));
    } else {
        std::vector<Distribution> kept;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            std::vector<Distribution> others;
            others.reserve(vs.size() - 1);
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (j != i) others.push_back(vs[j]);
            if (hull_l1_deviation(vs[i].weights(), others) > 1e-9) kept.push_back(vs[i]);
        }
        if (kept.empty()) kept.push_back(vs.front());  // all candidates coincide
        out.vertices = std::move(kept);
    }
    thin_to_cap(out.vertices, opts.vertex_cap, space->max_dist(), out);
    return out;
}

// --- image of a polytope under a linearly extended map ----------------------

using PolyMap = std::vector<std::vector<Distribution>>;  // polytope per state

Distribution combine(const MetricSpacePtr& space, const std::vector<std::size_t>& supp,
                     const std::vector<double>& wts,
                     const std::vector<const Distribution*>& parts) {
    std::vector<double> w(space->size(), 0.0);
    for (std::size_t s = 0; s < supp.size(); ++s)
        for (std::size_t z = 0; z < w.size(); ++z) w[z] += wts[s] * parts[s]->weight(z);
    return Distribution(space, std::move(w));
}

// Deterministic direction set for support-function sampling.
std::vector<std::vector<double>> sample_directions(std::size_t n, std::size_t extra) {
    std::vector<std::vector<double>> dirs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> d(n, 0.0);
        d[i] = 1.0;
        dirs.push_back(d);
        d[i] = -1.0;
        dirs.push_back(std::move(d));
    }
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss;
    for (std::size_t k = 0; k < extra; ++k) {
        std::vector<double> d(n);
        for (auto& v : d) v = gauss(rng);
        dirs.push_back(std::move(d));
    }
    return dirs;
}

const Distribution* argmax_in(const std::vector<Distribution>& vs,
                              const std::vector<double>& dir) {
    const Distribution* best = &vs.front();
    double best_val = -std::numeric_limits<double>::infinity();
    for (const auto& v : vs) {
        double s = 0.0;
        for (std::size_t z = 0; z < dir.size(); ++z) s += dir[z] * v.weight(z);
        if (s > best_val + 1e-15) {
            best_val = s;
            best = &v;
        }
    }
    return best;
}

ImageResult image_core(const MetricSpacePtr& space, const PolyMap& map,
                       const std::vector<Distribution>& p_vertices, const ImageOptions& opts,
                       bool include_identity) {
    const std::size_t n = space->size();
    std::vector<Distribution> candidates;
    bool sampled = false;

    if (n == 3) {
        // Exact planar path: per-state polygons, weighted Minkowski sums.
        std::vector<std::vector<P2>> polys;
        polys.reserve(n);
        for (const auto& vs : map) polys.push_back(hull2(to_plane(vs)));
        std::vector<P2> pts;
        for (const auto& v : p_vertices) {
            std::vector<P2> acc;
            for (std::size_t z = 0; z < n; ++z) {
                const double w = v.weight(z);
                if (w == 0.0) continue;
                std::vector<P2> scaled = polys[z];
                for (auto& q : scaled) q = P2{w * q.x, w * q.y};
                acc = minkowski(std::move(acc), std::move(scaled));
            }
            pts.insert(pts.end(), acc.begin(), acc.end());
        }
        candidates = from_plane(space, hull2(std::move(pts)));
    } else {
        for (const auto& v : p_vertices) {
            const auto supp = v.support(1e-15);
            std::vector<double> wts;
            for (std::size_t z : supp) wts.push_back(v.weight(z));

            std::size_t products = 1;
            bool overflow = false;
            for (std::size_t z : supp) {
                products *= map[z].size();
                if (products > opts.product_cap) { overflow = true; break; }
            }
            const bool exact = !overflow && (supp.size() <= 2 || products <= kPairProductCap);
            if (exact) {
                std::vector<const Distribution*> parts(supp.size());
                std::vector<std::size_t> idx(supp.size(), 0);
                for (;;) {
                    for (std::size_t s = 0; s < supp.size(); ++s)
                        parts[s] = &map[supp[s]][idx[s]];
                    candidates.push_back(combine(space, supp, wts, parts));
                    std::size_t s = 0;
                    while (s < supp.size() && ++idx[s] == map[supp[s]].size()) idx[s++] = 0;
                    if (s == supp.size()) break;
                }
            } else {
                if (!include_identity)
                    throw resource_error(
                        "linear_extension_image: generator products exceed the cap; "
                        "use coarser generators");
                sampled = true;
                const auto dirs = sample_directions(n, opts.sample_directions);
                std::vector<const Distribution*> parts(supp.size());
                for (const auto& dir : dirs) {
                    for (std::size_t s = 0; s < supp.size(); ++s)
                        parts[s] = argmax_in(map[supp[s]], dir);
                    candidates.push_back(combine(space, supp, wts, parts));
                }
                candidates.push_back(v);  // identity decomposition (leavable map)
            }
            if (candidates.size() > 4 * opts.product_cap)
                throw resource_error("linear_extension_image: candidate explosion; "
                                     "use coarser generators");
        }
        if (include_identity)
            candidates.insert(candidates.end(), p_vertices.begin(), p_vertices.end());
    }

    auto pruned = prune(space, std::move(candidates), opts);
    ImageResult res;
    res.polytope = DistPolytope{space, std::move(pruned.vertices)};
    res.approximate = pruned.approximate || sampled;
    res.thinning_gap = pruned.thinning_gap;
    return res;
}

PolyMap house_map(const GamblingHouse& house) {
    PolyMap map;
    map.reserve(house.num_states());
    for (std::size_t x = 0; x < house.num_states(); ++x)
        map.push_back(house.transition(x).generators());
    return map;
}

}  // namespace

ImageResult linear_extension_image(const GamblingHouse& house, const DistPolytope& p,
                                   const ImageOptions& opts) {
    if (p.space != house.space()) throw input_error("image: polytope on wrong space");
    if (p.vertices.empty()) throw input_error("image: empty polytope");
    return image_core(house.space(), house_map(house), p.vertices, opts,
                      /*include_identity=*/false);
}

ReachableSets::ReachableSets(const GamblingHouse& house, ReachOptions opts) {
    auto leavable = check_leavable(house);
    if (!leavable.pass)
        throw input_error("reachable sets: house is not leavable (state " +
                          house.space()->label(*leavable.witness_state) +
                          "); nested convergence needs leavability");

    const auto& space = house.space();
    const std::size_t n = house.num_states();
    PolyMap map;
    bool approximate = false;
    double thinning_gap = 0.0;
    {
        map.reserve(n);
        for (std::size_t x = 0; x < n; ++x) {
            auto pr = prune(space, house.transition(x).generators(), opts.image);
            approximate |= pr.approximate;
            map.push_back(std::move(pr.vertices));
        }
    }

    double gap = std::numeric_limits<double>::infinity();
    int k = 0;
    bool converged = false;
    while (k < opts.max_squarings) {
        PolyMap next(n);
        for (std::size_t x = 0; x < n; ++x) {
            auto img = image_core(space, map, map[x], opts.image, /*include_identity=*/true);
            approximate |= img.approximate;
            thinning_gap = std::max(thinning_gap, img.thinning_gap);
            next[x] = std::move(img.polytope.vertices);
        }
        ++k;
        gap = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            DistPolytope grown{space, next[x]};
            DistPolytope old{space, map[x]};
            gap = std::max(gap, directed_hausdorff(grown, old));
        }
        map = std::move(next);
        if (gap <= opts.tol) { converged = true; break; }
    }

    results_.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        ReachResult r;
        r.polytope = DistPolytope{space, std::move(map[x])};
        r.gap = std::max(gap, thinning_gap);
        r.converged = converged;
        r.squarings = k;
        r.approximate = approximate;
        results_.push_back(std::move(r));
    }
}

bool ReachableSets::all_converged() const {
    for (const auto& r : results_)
        if (!r.converged) return false;
    return true;
}

ReachResult reachable_set(const GamblingHouse& house, std::size_t x, double tol,
                          int max_squarings) {
    if (x >= house.num_states()) throw input_error("reachable_set: state out of range");
    ReachOptions opts;
    opts.tol = tol;
    opts.max_squarings = max_squarings;
    ReachableSets sets(house, opts);
    return sets.at(x);
}

namespace {

double phi_eval(const Potential& phi, const Distribution& p) {
    double s = 0.0;
    for (std::size_t z = 0; z < p.size(); ++z) s += phi.values[z] * p.weight(z);
    return s;
}

AcyclicityReport vertex_test(const GamblingHouse& house,
                             const std::vector<std::vector<Distribution>>& per_state_vertices,
                             const Potential& phi, double tol, bool require_membership) {
    const std::size_t n = house.num_states();
    if (phi.values.size() != n) throw input_error("acyclicity check: potential size mismatch");
    AcyclicityReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    rep.pass = true;
    for (std::size_t x = 0; x < n; ++x) {
        if (require_membership) {
            std::vector<double> dirac(n, 0.0);
            dirac[x] = 1.0;
            if (hull_l1_deviation(dirac, house.transition(x).generators()) > tol) {
                rep.dirac_member = false;
                rep.pass = false;
                rep.witness_state = x;
            }
        }
        for (const auto& g : per_state_vertices[x]) {
            double off_mass = 0.0;
            for (std::size_t z = 0; z < n; ++z)
                if (z != x) off_mass += g.weight(z);
            if (2.0 * off_mass <= kDiracSkipTol) continue;  // it is delta_x
            const double margin = phi.values[x] - phi_eval(phi, g);
            if (margin < rep.margin) {
                rep.margin = margin;
                if (margin <= tol) {
                    rep.witness_state = x;
                    rep.witness_vertex = g;
                }
            }
        }
    }
    if (rep.margin == std::numeric_limits<double>::infinity()) rep.margin = 0.0;
    if (rep.margin <= tol) rep.pass = false;
    return rep;
}

}  // namespace

AcyclicityReport check_weakly_acyclic(const GamblingHouse& house, const Potential& phi,
                                      double tol) {
    std::vector<std::vector<Distribution>> vs;
    vs.reserve(house.num_states());
    for (std::size_t x = 0; x < house.num_states(); ++x)
        vs.push_back(house.transition(x).generators());
    return vertex_test(house, vs, phi, tol, /*require_membership=*/true);
}

AcyclicityReport check_strongly_acyclic(const GamblingHouse& house, const ReachableSets& reach,
                                        const Potential& phi, double tol) {
    std::vector<std::vector<Distribution>> vs;
    vs.reserve(house.num_states());
    for (std::size_t x = 0; x < house.num_states(); ++x) {
        if (!reach.at(x).converged)
            throw numerical_error("strong acyclicity: reachable set unconverged",
                                  reach.at(x).gap);
        vs.push_back(reach.at(x).polytope.vertices);
    }
    return vertex_test(house, vs, phi, tol, /*require_membership=*/true);
}

AcyclicityReport check_strongly_acyclic(const GamblingHouse& house, const Potential& phi,
                                        double tol) {
    ReachableSets reach(house);
    return check_strongly_acyclic(house, reach, phi, tol);
}

std::optional<Potential> synthesize_potential(const GamblingHouse& house,
                                              const ReachableSets* reach, AcyclicityMode mode,
                                              double tol) {
    const std::size_t n = house.num_states();
    // Variables: phi_0..phi_{n-1}, t; maximize t.
    std::vector<double> c(n + 1, 0.0);
    c[n] = -1.0;
    std::vector<lp::Constraint> rows;
    for (std::size_t z = 0; z < n; ++z) {
        lp::Constraint r{std::vector<double>(n + 1, 0.0), lp::Rel::le, 1.0};
        r.a[z] = 1.0;
        rows.push_back(std::move(r));
    }
    for (std::size_t x = 0; x < n; ++x) {
        const auto& vertices = mode == AcyclicityMode::weak
                                   ? house.transition(x).generators()
                                   : reach->at(x).polytope.vertices;
        for (const auto& g : vertices) {
            double off_mass = 0.0;
            for (std::size_t z = 0; z < n; ++z)
                if (z != x) off_mass += g.weight(z);
            if (2.0 * off_mass <= kDiracSkipTol) continue;
            lp::Constraint r{std::vector<double>(n + 1, 0.0), lp::Rel::ge, 0.0};
            for (std::size_t z = 0; z < n; ++z) r.a[z] = -g.weight(z);
            r.a[x] += 1.0;
            r.a[n] = -1.0;
            rows.push_back(std::move(r));
        }
    }
    auto res = lp::solve(c, rows);
    if (!res.ok()) return std::nullopt;
    const double margin = res.x[n];
    if (margin <= tol) return std::nullopt;
    Potential phi;
    phi.values.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(n));
    phi.margin = margin;
    return phi;
}

std::optional<Potential> synthesize_potential(const GamblingHouse& house, AcyclicityMode mode,
                                              double tol) {
    if (mode == AcyclicityMode::weak) return synthesize_potential(house, nullptr, mode, tol);
    ReachableSets reach(house);
    return synthesize_potential(house, &reach, mode, tol);
}

double directed_hausdorff(const DistPolytope& from, const DistPolytope& to) {
    if (from.space != to.space) throw input_error("hausdorff: space mismatch");
    double worst = 0.0;
    for (const auto& v : from.vertices) {
        bool duplicate = false;
        for (const auto& w : to.vertices)
            if (Distribution::l1(v, w) <= kDedupeTol) { duplicate = true; break; }
        if (duplicate) continue;
        worst = std::max(worst, kr_distance_to_polytope(v, to.vertices));
    }
    return worst;
}

double hausdorff(const DistPolytope& a, const DistPolytope& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

bool check_idempotent(const GamblingHouse& house, double tol) {
    for (std::size_t x = 0; x < house.num_states(); ++x) {
        DistPolytope gamma{house.space(), house.transition(x).generators()};
        auto image = linear_extension_image(house, gamma);
        if (hausdorff(gamma, image.polytope) > tol + image.thinning_gap) return false;
    }
    return true;
}

}  // namespace gg
