#pragma once

// Certified analytic interpolation of the decay/growth eigenvalue over one
// contour piece.
//
// The scalar branch (mu_- on the left, the rescaled root g on the right) is
// certified as a single analytic function on a Bernstein-ellipse stadium by
// covering the stadium with overlapping cells, running the Krawczyk
// operator on every cell, and verifying root agreement on overlap strips;
// a connected verified covering glues to one analytic branch.  Its values
// at the Chebyshev nodes then give an interval interpolant whose error is
// bounded by the analytic interpolation bound with M_rho taken from the
// certified cell boxes (measured around a center, which shifts only the
// constant coefficient and tightens the bound).

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evanscert/chebyshev.hpp"
#include "evanscert/contour.hpp"
#include "evanscert/evans_system.hpp"

namespace evanscert {

// Signals that a piece cannot be certified at the requested sizes and
// should be subdivided by the driver.
class PieceRefine : public std::runtime_error {
  public:
    explicit PieceRefine(const std::string& what) : std::runtime_error(what) {}
};

namespace mu_detail {

struct BranchProblem {
    Side side;
    const ContourPiece* piece;
    const SpectralParams* sp;

    Cubic cubic_c(const ComplexInterval& theta) const {
        if (side == Side::left)
            return limit_charpoly(piece->lambda_c(theta), RealInterval::point(1.0), sp->f_minus);
        return rescaled_right_cubic(piece->lambda_refl_c(theta), *sp);
    }
    Cubic cubic_r(const RealInterval& theta) const {
        return cubic_c(ComplexInterval::from_real(theta));
    }
    std::array<std::complex<double>, 4> cubic_mid(std::complex<double> theta) const {
        const ComplexInterval th(RealInterval::point(theta.real()),
                                 RealInterval::point(theta.imag()));
        return cubic_c(th).mid();
    }
    // Root preference at a double parameter (decay/growth identification).
    double preference(std::complex<double> theta, std::complex<double> root) const {
        if (side == Side::left) return root.real();
        const std::complex<double> m = piece->lambda_refl_mid(theta.real());
        return (m * root).real();
    }
};

inline std::complex<double> nearest_root(const std::vector<std::complex<double>>& roots,
                                         std::complex<double> want) {
    std::complex<double> best = roots[0];
    for (const auto& r : roots)
        if (std::abs(r - want) < std::abs(best - want)) best = r;
    return best;
}

// Double-precision branch values along the real axis, continued from the
// decisive end (theta = +1, the far-from-origin end of axis pieces).
inline std::vector<std::complex<double>> axis_branch_seeds(const BranchProblem& bp,
                                                           std::size_t count) {
    std::vector<std::complex<double>> out(count);
    std::complex<double> prev;
    for (std::size_t k = 0; k < count; ++k) {
        const double theta = 1.0 - 2.0 * static_cast<double>(k) / (count - 1);
        const auto roots = cubic_roots_mid(bp.cubic_mid({theta, 0.0}));
        if (k == 0) {
            prev = roots[0];
            for (const auto& r : roots)
                if (bp.preference({theta, 0.0}, r) > bp.preference({theta, 0.0}, prev)) prev = r;
        } else {
            prev = nearest_root(roots, prev);
        }
        out[k] = prev;
    }
    return out;
}

struct Cell {
    ComplexInterval theta;  // rectangle in the complex theta plane
    ComplexInterval box;    // certified root enclosure
    bool included = false;
    bool certified = false;
    std::complex<double> seed;
};

// One Krawczyk pass on a fixed box (no escalation), for overlap checks.
inline bool root_confirmed_in_box(const Cubic& p, const ComplexInterval& X) {
    const std::complex<double> z0 = X.mid();
    const std::complex<double> pd =
        ((3.0 * p.c[3].mid() * z0 + 2.0 * p.c[2].mid()) * z0) + p.c[1].mid();
    if (std::abs(pd) < 1e-300) return false;
    const ComplexInterval y = ComplexInterval::point(1.0 / pd);
    const ComplexInterval z0i = ComplexInterval::point(z0);
    const ComplexInterval one = ComplexInterval::point(1.0);
    const ComplexInterval K = z0i - y * p.eval(z0i) + (one - y * p.deriv(X)) * (X - z0i);
    const double kappa = modulus(one - y * p.deriv(X)).hi();
    return kappa < 1.0 && contained_in_interior(K, X);
}

struct Certification {
    bool ok = false;
    double rho = 0.0;
    std::complex<double> center;
    double m_centered = 0.0;  // sup |branch - center| over the stadium
    double m_abs = 0.0;
    std::string reason;
};

inline Certification certify_branch(const BranchProblem& bp, double rho, std::size_t k1,
                                    std::size_t k2) {
    Certification cert;
    cert.rho = rho;
    const double alpha = 0.5 * (rho + 1.0 / rho);
    const double beta = 0.5 * (rho - 1.0 / rho);
    const double sx = 2.0 * alpha / static_cast<double>(k1);
    const double sy = 2.0 * beta / static_cast<double>(k2);
    const double ox = 0.2 * sx, oy = 0.2 * sy;

    const auto seeds_axis = axis_branch_seeds(bp, std::max<std::size_t>(4 * k1, 64));

    std::vector<Cell> cells(k1 * k2);
    auto cell_at = [&](std::size_t i, std::size_t j) -> Cell& { return cells[i * k2 + j]; };

    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < k2; ++j) {
            Cell& c = cell_at(i, j);
            const double x0 = -alpha + sx * static_cast<double>(i) - ox;
            const double x1 = -alpha + sx * static_cast<double>(i + 1) + ox;
            const double y0 = -beta + sy * static_cast<double>(j) - oy;
            const double y1 = -beta + sy * static_cast<double>(j + 1) + oy;
            c.theta = ComplexInterval(RealInterval(x0, x1), RealInterval(y0, y1));
            // include iff the rectangle meets the closed stadium ellipse
            const RealInterval ex = sqr(c.theta.re / alpha) + sqr(c.theta.im / beta);
            c.included = ex.lo() <= 1.0;
        }

    // Seed by marching away from the real-axis row, tracking the nearest root.
    for (std::size_t i = 0; i < k1; ++i) {
        const double xm = -alpha + sx * (static_cast<double>(i) + 0.5);
        const double t = std::clamp((1.0 - xm) / 2.0, 0.0, 1.0);
        const std::complex<double> base =
            seeds_axis[static_cast<std::size_t>(t * static_cast<double>(seeds_axis.size() - 1))];
        const auto jmid = static_cast<std::size_t>(
            std::clamp(std::floor(beta / sy), 0.0, static_cast<double>(k2) - 1.0));
        auto seed_cell = [&](std::size_t j, std::complex<double>& prev) {
            Cell& c = cell_at(i, j);
            const std::complex<double> thmid(xm, -beta + sy * (static_cast<double>(j) + 0.5));
            const auto roots = cubic_roots_mid(bp.cubic_mid(thmid));
            prev = nearest_root(roots, prev);
            c.seed = prev;
        };
        std::complex<double> prev = base;
        for (std::size_t j = jmid; j < k2; ++j) seed_cell(j, prev);
        prev = base;
        for (std::size_t j = jmid + 1; j-- > 0;) seed_cell(j, prev);
    }

    // Krawczyk on every included cell.
    for (auto& c : cells) {
        if (!c.included) continue;
        const Cubic p = bp.cubic_c(c.theta);
        const CertifiedRoot cr = krawczyk_root(p, c.seed, 1e-6 * (1.0 + std::abs(c.seed)));
        if (!cr.ok) {
            cert.reason = "cell certification failed";
            return cert;
        }
        c.box = cr.box;
        c.certified = true;
    }

    // Overlap consistency on grid edges; the verified-edge graph must connect
    // all included cells.
    std::vector<std::size_t> parent(cells.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    auto try_edge = [&](std::size_t ca, std::size_t cb) {
        Cell& a = cells[ca];
        Cell& b = cells[cb];
        if (!a.included || !b.included) return;
        const ComplexInterval strip(intersect(a.theta.re, b.theta.re),
                                    intersect(a.theta.im, b.theta.im));
        if (strip.re.is_empty() || strip.im.is_empty()) return;
        ComplexInterval common(intersect(a.box.re, b.box.re), intersect(a.box.im, b.box.im));
        if (common.re.is_empty() || common.im.is_empty()) return;
        if (root_confirmed_in_box(bp.cubic_c(strip), common)) unite(ca, cb);
    };
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < k2; ++j) {
            if (i + 1 < k1) try_edge(i * k2 + j, (i + 1) * k2 + j);
            if (j + 1 < k2) try_edge(i * k2 + j, i * k2 + j + 1);
        }
    std::size_t root_comp = cells.size();
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        if (!cells[idx].included) continue;
        if (root_comp == cells.size()) root_comp = find(idx);
        if (find(idx) != root_comp) {
            cert.reason = "verified covering is not connected";
            return cert;
        }
    }

    // Bounds over the certified boxes.
    std::complex<double> center = 0.0;
    std::size_t cnt = 0;
    for (const auto& c : cells)
        if (c.included) {
            center += c.box.mid();
            ++cnt;
        }
    center /= static_cast<double>(cnt);
    double mc = 0.0, ma = 0.0;
    for (const auto& c : cells)
        if (c.included) {
            mc = std::max(mc, modulus(c.box - ComplexInterval::point(center)).hi());
            ma = std::max(ma, modulus(c.box).hi());
        }
    cert.ok = true;
    cert.center = center;
    cert.m_centered = mc;
    cert.m_abs = ma;
    return cert;
}

}  // namespace mu_detail

// Certified interpolants of the branch scalar on a piece, with the point
// polynomial used for the system shift and the interval polynomial + band
// used for the end correction.
struct MuInterpolant {
    Side side;
    double rho = 0.0;
    ChebEnclosure tilde;        // interval coefficients; .err = analytic bound
    ChebEnclosure check;        // point coefficients (midpoints); .err = 0
    std::vector<ComplexInterval> node_boxes;
    RealInterval dev;           // rigorous sup |tilde - check| + err on [-1,1]
    std::complex<double> stadium_center;
    double m_centered = 0.0;

    // Enclosure of the true branch value over a theta subinterval.
    ComplexInterval branch_value(const RealInterval& theta) const {
        return inflate(cheb::evaluate_theta(tilde, theta), tilde.err.hi());
    }
};

struct MuBuildConfig {
    std::vector<double> rho_ladder = {2.4, 1.9, 1.5, 1.3, 1.18, 1.1, 1.05, 1.025};
    std::vector<std::pair<std::size_t, std::size_t>> grids = {{14, 8}, {28, 16}, {56, 32}};
    double err_target = 1e-9;
    std::size_t max_nodes = 768;
    std::size_t check_nodes = 32;
    double dev_budget = 0.02;  // sup |mu - mu_check| allowed before raising degree
};

inline MuInterpolant build_branch_interpolant(Side side, const ContourPiece& piece,
                                              const SpectralParams& sp,
                                              const MuBuildConfig& cfg = {}) {
    mu_detail::BranchProblem bp{side, &piece, &sp};

    mu_detail::Certification best;
    for (double rho : cfg.rho_ladder) {
        for (const auto& grid : cfg.grids) {
            auto cert = mu_detail::certify_branch(bp, rho, grid.first, grid.second);
            if (cert.ok) {
                best = cert;
                break;
            }
        }
        if (best.ok) break;
    }
    if (!best.ok) throw PieceRefine("branch certification failed on the whole stadium ladder");

    // Interpolation degree from the analytic bound (heuristic choice, bound
    // recomputed rigorously below).
    const double eta = std::log(best.rho);
    const double lrho = M_PI * std::sqrt(best.rho * best.rho + 1.0 / (best.rho * best.rho));
    const double drho = 0.5 * (best.rho + 1.0 / best.rho) - 1.0;
    const double target = cfg.err_target;
    const double arg = std::max(2.0, best.m_centered * lrho / (M_PI * drho * target));
    auto n_nodes = static_cast<std::size_t>(std::ceil(std::asinh(arg) / eta)) + 2;
    if (n_nodes > cfg.max_nodes)
        throw PieceRefine("interpolation degree exceeds the cap; piece too wide for its stadium");
    n_nodes = std::max<std::size_t>(n_nodes, cfg.check_nodes);

    // Certified node values (seeded from the real-axis continuation).
    const auto axis_seeds = mu_detail::axis_branch_seeds(bp, std::max<std::size_t>(n_nodes * 2, 128));
    auto seed_at = [&](double theta) {
        const double t = std::clamp((1.0 - theta) / 2.0, 0.0, 1.0);
        return axis_seeds[static_cast<std::size_t>(t * static_cast<double>(axis_seeds.size() - 1))];
    };
    const auto node_pos = cheb::nodes(n_nodes);
    MuInterpolant out;
    out.side = side;
    out.rho = best.rho;
    out.stadium_center = best.center;
    out.m_centered = best.m_centered;
    out.node_boxes.resize(n_nodes);
    std::vector<ComplexInterval> samples(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const Cubic p = bp.cubic_r(node_pos[j]);
        const std::complex<double> seed = seed_at(node_pos[j].mid());
        const CertifiedRoot cr = krawczyk_root(p, seed, 1e-10 * (1.0 + std::abs(seed)));
        if (!cr.ok) throw PieceRefine("node certification failed");
        out.node_boxes[j] = cr.box;
        samples[j] = cr.box;
    }

    out.tilde = cheb::coefficients(samples);
    const Stadium st(best.rho, RealInterval(0.0, best.m_centered));
    out.tilde.err = RealInterval(0.0, cheb::hermite_error_bound(st, n_nodes).hi());

    // Point polynomial for the system shift.
    std::size_t nc = std::min(cfg.check_nodes, n_nodes);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const auto cn = cheb::nodes(nc);
        std::vector<ComplexInterval> cs(nc);
        for (std::size_t j = 0; j < nc; ++j) {
            const Cubic p = bp.cubic_r(cn[j]);
            const std::complex<double> seed = seed_at(cn[j].mid());
            const CertifiedRoot cr = krawczyk_root(p, seed, 1e-10 * (1.0 + std::abs(seed)));
            if (!cr.ok) throw PieceRefine("check-node certification failed");
            cs[j] = ComplexInterval::point(cr.box.mid());
        }
        out.check = cheb::coefficients(cs);
        for (auto& c : out.check.coeffs) c = ComplexInterval::point(c.mid());

        // rigorous deviation sup |branch - check|
        ChebEnclosure diff = out.tilde;
        if (diff.coeffs.size() < out.check.coeffs.size())
            diff.coeffs.resize(out.check.coeffs.size());
        for (std::size_t k = 0; k < out.check.coeffs.size(); ++k)
            diff.coeffs[k] -= out.check.coeffs[k];
        double dev = 0.0;
        const std::size_t K = 64;
        for (std::size_t k = 0; k < K; ++k) {
            const RealInterval th(-1.0 + 2.0 * static_cast<double>(k) / K,
                                  -1.0 + 2.0 * static_cast<double>(k + 1) / K);
            dev = std::max(dev, modulus(cheb::evaluate_theta(diff, th)).hi());
        }
        dev = rnd::add(dev, out.tilde.err.hi()).hi;
        out.dev = RealInterval(0.0, dev);
        if (dev <= cfg.dev_budget || nc >= n_nodes) break;
        nc = std::min(n_nodes, nc * 2);
    }
    return out;
}

// Strict interval sign verification along the piece where the branch allows
// it; returns the subintervals where the sign stayed undecided.
inline std::vector<RealInterval> undecided_sign_ranges(const MuInterpolant& mu,
                                                       const ContourPiece& piece, bool want_negative,
                                                       std::size_t subdivisions = 128) {
    std::vector<RealInterval> undecided;
    for (std::size_t k = 0; k < subdivisions; ++k) {
        const RealInterval th(-1.0 + 2.0 * static_cast<double>(k) / subdivisions,
                              -1.0 + 2.0 * static_cast<double>(k + 1) / subdivisions);
        ComplexInterval val = mu.branch_value(th);
        if (mu.side == Side::right) val = -(piece.lambda_refl(th) * val);  // mu_+ = -m g
        const bool ok = want_negative ? (val.re.hi() < 0.0) : (val.re.lo() > 0.0);
        if (!ok) undecided.push_back(th);
    }
    return undecided;
}

// Discriminant of the branch cubic over a theta range; nonvanishing keeps
// the three roots simple, so continuous root selections cannot exchange.
inline bool discriminant_excludes_zero(Side side, const ContourPiece& piece,
                                       const SpectralParams& sp, const RealInterval& theta) {
    mu_detail::BranchProblem bp{side, &piece, &sp};
    const Cubic q = bp.cubic_r(theta);
    const ComplexInterval a = q.c[3], b = q.c[2], c = q.c[1], d = q.c[0];
    const ComplexInterval disc = (a * b * c * d) * 18.0 - (sqr(b) * b * d) * 4.0 + sqr(b * c) -
                                 (a * sqr(c) * c) * 4.0 - sqr(a * d) * 27.0;
    return !disc.contains(std::complex<double>(0.0, 0.0));
}

}  // namespace evanscert
