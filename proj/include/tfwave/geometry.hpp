#pragma once

// Parametric scatterer boundaries, the curve gallery, panel/global
// discretization with dyadic corner refinement, and point containment
// queries for grid masking.
//
// Points live in the complex plane.  Every curve is normalized at build
// time so each closed component is traversed counterclockwise with the
// scatterer material on its left; the outward normal (into the exterior
// domain) is then -i * gamma' / |gamma'|.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfwave/quadrature.hpp"

namespace tfwave {

struct Piece {
    std::function<cplx(double)> f;    // position, parameter in [0,1]
    std::function<cplx(double)> df;   // d/dt
    std::function<cplx(double)> ddf;  // d^2/dt^2
};

struct Corner {
    int piece_before = -1;  // piece ending at the corner
    int piece_after = -1;   // piece starting at the corner
    cplx location;
};

class BoundaryCurve {
  public:
    std::vector<Piece> pieces;
    std::vector<std::vector<int>> components;  // piece indices in traversal order
    std::vector<Corner> corners;
    std::string name;
    std::map<std::string, double> info;  // gallery metadata (petals, ...)

    // dense polyline per component, built once for winding/distance queries
    std::vector<std::vector<cplx>> polylines;

    double diameter() const { return diameter_; }

    const std::vector<double>& piece_arclengths() const { return piece_arc_; }
    double arclength() const {
        return std::accumulate(piece_arc_.begin(), piece_arc_.end(), 0.0);
    }

    bool piece_starts_at_corner(int piece) const { return start_corner_[piece]; }
    bool piece_ends_at_corner(int piece) const { return end_corner_[piece]; }

    /// Called once after pieces/components are assembled.
    void finalize(int polyline_per_piece = 512);

  private:
    std::vector<double> piece_arc_;
    std::vector<char> start_corner_, end_corner_;
    double diameter_ = 0.0;

    void normalize_orientation();
    void check_closure() const;
    void check_nondegenerate() const;
    void check_no_self_intersection() const;
    void detect_corners();
};

enum class Containment { outside, inside, indeterminate };

// ---------------------------------------------------------------------------
// BoundaryCurve internals
// ---------------------------------------------------------------------------

inline void BoundaryCurve::finalize(int polyline_per_piece) {
    if (pieces.empty() || components.empty())
        throw std::invalid_argument("BoundaryCurve: no pieces");
    normalize_orientation();

    piece_arc_.resize(pieces.size());
    for (size_t k = 0; k < pieces.size(); ++k) {
        const auto& p = pieces[k];
        piece_arc_[k] = adaptive_integrate_real(
            [&](double t) { return std::abs(p.df(t)); }, 0.0, 1.0, 1e-12, 8);
    }

    polylines.assign(components.size(), {});
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (size_t c = 0; c < components.size(); ++c) {
        auto& poly = polylines[c];
        for (int k : components[c]) {
            for (int j = 0; j < polyline_per_piece; ++j)
                poly.push_back(pieces[k].f(double(j) / polyline_per_piece));
        }
        poly.push_back(poly.front());
        for (const cplx& p : poly) {
            lo_x = std::min(lo_x, p.real());
            hi_x = std::max(hi_x, p.real());
            lo_y = std::min(lo_y, p.imag());
            hi_y = std::max(hi_y, p.imag());
        }
    }
    diameter_ = std::hypot(hi_x - lo_x, hi_y - lo_y);

    check_closure();
    check_nondegenerate();
    detect_corners();
    check_no_self_intersection();
}

inline void BoundaryCurve::normalize_orientation() {
    const auto& rule = gauss_rule_cached(32);
    for (auto& comp : components) {
        double area2 = 0.0;  // 2*area = Im oint conj(g) g' dt
        for (int k : comp) {
            const auto& p = pieces[k];
            for (size_t q = 0; q < rule.nodes.size(); ++q) {
                const double t = 0.5 + 0.5 * rule.nodes[q];
                area2 += 0.5 * rule.weights[q] *
                         std::imag(std::conj(p.f(t)) * p.df(t));
            }
        }
        if (area2 < 0.0) {
            // reverse traversal: flip piece order and each piece's parameter
            std::reverse(comp.begin(), comp.end());
            for (int k : comp) {
                Piece old = pieces[k];
                pieces[k].f = [old](double t) { return old.f(1.0 - t); };
                pieces[k].df = [old](double t) { return -old.df(1.0 - t); };
                pieces[k].ddf = [old](double t) { return old.ddf(1.0 - t); };
            }
        }
    }
}

inline void BoundaryCurve::check_closure() const {
    for (const auto& comp : components) {
        for (size_t i = 0; i < comp.size(); ++i) {
            const cplx e = pieces[comp[i]].f(1.0);
            const cplx s = pieces[comp[(i + 1) % comp.size()]].f(0.0);
            if (std::abs(e - s) > 1e-12 * std::max(1.0, diameter_))
                throw std::invalid_argument("BoundaryCurve: component is not closed");
        }
    }
}

inline void BoundaryCurve::check_nondegenerate() const {
    for (size_t k = 0; k < pieces.size(); ++k) {
        for (int j = 0; j < 64; ++j) {
            const double t = (j + 0.5) / 64.0;
            if (std::abs(pieces[k].df(t)) < 1e-10 * std::max(1.0, diameter_))
                throw std::invalid_argument(
                    "BoundaryCurve: degenerate parametrization on piece " +
                    std::to_string(k));
        }
    }
}

inline void BoundaryCurve::detect_corners() {
    corners.clear();
    start_corner_.assign(pieces.size(), 0);
    end_corner_.assign(pieces.size(), 0);
    for (const auto& comp : components) {
        for (size_t i = 0; i < comp.size(); ++i) {
            const int ka = comp[i];
            const int kb = comp[(i + 1) % comp.size()];
            const cplx ta = pieces[ka].df(1.0), tb = pieces[kb].df(0.0);
            if (std::abs(ta / std::abs(ta) - tb / std::abs(tb)) > 1e-8) {
                corners.push_back({ka, kb, pieces[kb].f(0.0)});
                end_corner_[ka] = 1;
                start_corner_[kb] = 1;
            }
        }
    }
}

namespace detail {

inline bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace detail

inline void BoundaryCurve::check_no_self_intersection() const {
    // Sampled heuristic over the cached polylines: flags genuine crossings,
    // not near-touches (the keyhole slit walls are legitimately close).
    struct Seg {
        cplx a, b;
        int comp;
        long idx;
    };
    std::vector<Seg> segs;
    std::vector<long> comp_count(polylines.size(), 0);
    for (size_t c = 0; c < polylines.size(); ++c) {
        const auto& poly = polylines[c];
        // decimate: crossing detection does not need the full density
        const size_t stride = std::max<size_t>(1, poly.size() / 1024);
        long ord = 0;
        for (size_t i = 0; i + stride < poly.size(); i += stride)
            segs.push_back({poly[i], poly[i + stride], int(c), ord++});
        comp_count[c] = ord;
    }
    for (size_t i = 0; i < segs.size(); ++i) {
        for (size_t j = i + 1; j < segs.size(); ++j) {
            if (segs[i].comp == segs[j].comp) {
                const long gap = std::abs(segs[i].idx - segs[j].idx);
                if (gap <= 1 || gap >= comp_count[segs[i].comp] - 1) continue;
            }
            if (detail::segments_intersect(segs[i].a, segs[i].b, segs[j].a, segs[j].b))
                throw std::invalid_argument("BoundaryCurve: self-intersecting geometry");
        }
    }
}

// ---------------------------------------------------------------------------
// Containment
// ---------------------------------------------------------------------------

/// Winding-number containment against the cached polyline. Points closer to
/// the sampled boundary than ~1e-9 x diameter are reported indeterminate.
inline Containment contains(const BoundaryCurve& curve, cplx p) {
    const double near_tol = 1e-9 * std::max(1.0, curve.diameter());
    bool inside_any = false;
    for (const auto& poly : curve.polylines) {
        int crossings = 0;
        double min_d2 = 1e300;
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            const cplx a = poly[i], b = poly[i + 1];
            // point-segment distance
            const cplx ab = b - a;
            const double len2 = std::norm(ab);
            double s = len2 > 0 ? std::clamp(((p - a).real() * ab.real() +
                                              (p - a).imag() * ab.imag()) / len2, 0.0, 1.0)
                                : 0.0;
            min_d2 = std::min(min_d2, std::norm(p - (a + s * ab)));
            if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
                const double x_int = a.real() + (p.imag() - a.imag()) /
                                                    (b.imag() - a.imag()) * ab.real();
                if (x_int > p.real()) ++crossings;
            }
        }
        if (min_d2 < near_tol * near_tol) return Containment::indeterminate;
        if (crossings % 2 == 1) inside_any = true;
    }
    return inside_any ? Containment::inside : Containment::outside;
}

/// Approximate distance from p to the boundary (polyline metric).
inline double distance_to_boundary(const BoundaryCurve& curve, cplx p) {
    double min_d2 = 1e300;
    for (const auto& poly : curve.polylines) {
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            const cplx a = poly[i], ab = poly[i + 1] - a;
            const double len2 = std::norm(ab);
            const double s = len2 > 0 ? std::clamp(((p - a).real() * ab.real() +
                                                    (p - a).imag() * ab.imag()) / len2,
                                                   0.0, 1.0)
                                      : 0.0;
            min_d2 = std::min(min_d2, std::norm(p - (a + s * ab)));
        }
    }
    return std::sqrt(min_d2);
}

// ---------------------------------------------------------------------------
// Gallery
// ---------------------------------------------------------------------------

namespace detail {

inline double param_or(const std::map<std::string, double>& m, const std::string& k,
                       double dflt) {
    auto it = m.find(k);
    return it == m.end() ? dflt : it->second;
}

inline void reject_unknown(const std::map<std::string, double>& m,
                           std::initializer_list<const char*> known) {
    for (const auto& kv : m) {
        bool ok = false;
        for (const char* k : known)
            if (kv.first == k) ok = true;
        if (!ok)
            throw std::invalid_argument("build_scatterer: unknown parameter '" + kv.first + "'");
    }
}

inline Piece segment_piece(cplx a, cplx b) {
    return {[a, b](double t) { return a + t * (b - a); },
            [a, b](double) { return b - a; },
            [](double) { return cplx(0, 0); }};
}

// a^(1-t) b^t with principal-branch logarithms
inline Piece logarc_piece(cplx a, cplx b) {
    const cplx la = std::log(a), lb = std::log(b);
    const cplx lam = lb - la;
    return {[la, lam](double t) { return std::exp(la + t * lam); },
            [la, lam](double t) { return lam * std::exp(la + t * lam); },
            [la, lam](double t) { return lam * lam * std::exp(la + t * lam); }};
}

// center + r exp(i theta(t)), theta linear from th0 to th1
inline Piece circarc_piece(cplx cent, double r, double th0, double th1) {
    const double dth = th1 - th0;
    return {[=](double t) { return cent + r * std::exp(cplx(0, th0 + t * dth)); },
            [=](double t) { return cplx(0, dth) * r * std::exp(cplx(0, th0 + t * dth)); },
            [=](double t) {
                return cplx(0, dth) * cplx(0, dth) * r * std::exp(cplx(0, th0 + t * dth));
            }};
}

inline Piece rotated(const Piece& p, cplx rot) {
    return {[p, rot](double t) { return rot * p.f(t); },
            [p, rot](double t) { return rot * p.df(t); },
            [p, rot](double t) { return rot * p.ddf(t); }};
}

}  // namespace detail

/// Gallery of scatterer boundaries.  Names: disk, c_curve, crescents,
/// keyhole, radiator.  Parameters not supplied take the documented defaults.
inline BoundaryCurve build_scatterer(const std::string& name,
                                     const std::map<std::string, double>& params = {}) {
    using namespace detail;
    BoundaryCurve curve;
    curve.name = name;

    if (name == "disk") {
        reject_unknown(params, {"radius", "center_x", "center_y"});
        const double R = param_or(params, "radius", 1.0);
        const cplx ctr(param_or(params, "center_x", 0.0), param_or(params, "center_y", 0.0));
        if (R <= 0) throw std::invalid_argument("disk: radius must be positive");
        curve.pieces.push_back(
            {[=](double t) { return ctr + R * std::exp(cplx(0, 2 * M_PI * t)); },
             [=](double t) { return cplx(0, 2 * M_PI) * R * std::exp(cplx(0, 2 * M_PI * t)); },
             [=](double t) {
                 return -4 * M_PI * M_PI * R * std::exp(cplx(0, 2 * M_PI * t));
             }});
        curve.components = {{0}};
    } else if (name == "c_curve") {
        reject_unknown(params, {"a", "b", "c", "d"});
        const double a = param_or(params, "a", 3.0);
        const double b = param_or(params, "b", 2.8);
        const double c = param_or(params, "c", 0.1);
        const double d = param_or(params, "d", 1.0);
        auto rho = [=](double t) { return 3.0 + c * std::tanh(a * std::cos(t)); };
        auto drho = [=](double t) {
            const double sh = 1.0 / std::cosh(a * std::cos(t));
            return -a * c * std::sin(t) * sh * sh;
        };
        auto ddrho = [=](double t) {
            const double u = a * std::cos(t);
            const double sh = 1.0 / std::cosh(u);
            const double th = std::tanh(u);
            return -a * c *
                   (std::cos(t) * sh * sh + 2 * a * std::sin(t) * std::sin(t) * sh * sh * th);
        };
        curve.pieces.push_back(
            {[=](double s) {
                 const double t = 2 * M_PI * s;
                 return d * std::exp(cplx(0, b * std::sin(t))) * rho(t);
             },
             [=](double s) {
                 const double t = 2 * M_PI * s;
                 const cplx e = std::exp(cplx(0, b * std::sin(t)));
                 return 2 * M_PI * d * e *
                        (cplx(0, b * std::cos(t)) * rho(t) + drho(t));
             },
             [=](double s) {
                 const double t = 2 * M_PI * s;
                 const cplx e = std::exp(cplx(0, b * std::sin(t)));
                 const cplx ib_cos(0, b * std::cos(t));
                 return 4 * M_PI * M_PI * d * e *
                        (ib_cos * ib_cos * rho(t) + cplx(0, -b * std::sin(t)) * rho(t) +
                         2.0 * ib_cos * drho(t) + ddrho(t));
             }});
        curve.components = {{0}};
    } else if (name == "crescents") {
        reject_unknown(params, {"a1", "a2", "d", "r"});
        const double a1 = param_or(params, "a1", 0.24);
        const double a2 = param_or(params, "a2", 0.9);
        const double d = param_or(params, "d", 3.0);
        const double r = param_or(params, "r", 5.0);
        if (std::abs(a2 - 1.0) < 1e-3)
            throw std::invalid_argument("crescents: a2 too close to 1 (pole on the curve)");
        const cplx scale = r * std::exp(cplx(0, M_PI / 2));
        const cplx p(0, 1);
        auto make = [&](cplx shift, double sign) {
            // sign=+1: cres(t)+p ; sign=-1: -cres(pi+t) == -cres(t) by periodicity
            return Piece{
                [=](double s) {
                    const cplx w = std::exp(cplx(0, -2 * M_PI * s));  // e^{-2it}, t = pi s
                    const cplx cres = w - a1 / (w + a2) + d / 2;
                    return scale * (sign * cres + shift);
                },
                [=](double s) {
                    const cplx w = std::exp(cplx(0, -2 * M_PI * s));
                    const cplx dw = cplx(0, -2 * M_PI) * w;
                    const cplx den = w + a2;
                    return scale * sign * dw * (1.0 + a1 / (den * den));
                },
                [=](double s) {
                    const cplx w = std::exp(cplx(0, -2 * M_PI * s));
                    const cplx dw = cplx(0, -2 * M_PI) * w;
                    const cplx ddw = cplx(0, -2 * M_PI) * dw;
                    const cplx den = w + a2;
                    return scale * sign *
                           (ddw * (1.0 + a1 / (den * den)) -
                            2.0 * a1 * dw * dw / (den * den * den));
                }};
        };
        curve.pieces.push_back(make(p, +1.0));
        curve.pieces.push_back(make(cplx(0, 0), -1.0));
        curve.components = {{0}, {1}};
    } else if (name == "keyhole") {
        reject_unknown(params, {"R", "r", "e", "theta"});
        const double R = param_or(params, "R", 3.0);
        const double r = param_or(params, "r", 2.0);
        const double e = param_or(params, "e", 0.3);
        const double theta = param_or(params, "theta", M_PI);
        if (!(R > r && r > 0 && e > 0))
            throw std::invalid_argument("keyhole: requires R > r > 0 and e > 0");
        const cplx rot = std::exp(cplx(0, M_PI + theta));
        const cplx c1(-R, e), c2(-r, e), c3(-r, -e), c4(-R, -e);
        curve.pieces.push_back(rotated(segment_piece(c1, c2), rot));
        curve.pieces.push_back(rotated(logarc_piece(c2, c3), rot));
        curve.pieces.push_back(rotated(segment_piece(c3, c4), rot));
        curve.pieces.push_back(rotated(logarc_piece(c4, c1), rot));
        curve.components = {{0, 1, 2, 3}};
    } else if (name == "radiator") {
        reject_unknown(params, {"R", "r", "e", "outr", "deltatheta", "slots", "Btheta"});
        const double r = param_or(params, "r", 1.5);
        const double R = param_or(params, "R", 5.0);
        const double e = param_or(params, "e", 0.8);
        const double outr = param_or(params, "outr", 0.8);
        const double dth = param_or(params, "deltatheta", 0.15);
        const int slots = int(param_or(params, "slots", 6.0));
        const double btheta = param_or(params, "Btheta", 5 * M_PI / 4);
        if (!(R > r && r > 0 && outr > 0 && slots >= 2 && dth > 0 &&
              dth < M_PI / slots))
            throw std::invalid_argument("radiator: invalid parameters");
        // angular slots, reordered so principal angles ascend; the slot at
        // exactly pi is removed (its petal would collide with the feed slit)
        std::vector<double> thetas;
        for (int i = 0; i < slots; ++i) {
            const double th = 2.0 * M_PI * i / slots;
            if (std::abs(th - M_PI) < 1e-14) continue;
            thetas.push_back(th >= M_PI ? th - 2 * M_PI : th);  // principal angle
        }
        std::sort(thetas.begin(), thetas.end());
        const double cr = (R + r) / 2;  // petal circle centers on this radius

        const cplx rot = std::exp(cplx(0, M_PI + btheta));
        const cplx cs(-R, -e), c2(-r, -e), ce(-r, e), cE(-R, e);
        auto push = [&](Piece p) { curve.pieces.push_back(rotated(p, rot)); };

        push(segment_piece(cs, c2));
        cplx prev = c2;
        for (double th : thetas) {
            const cplx cent = cr * std::exp(cplx(0, th));
            const cplx A = r * std::exp(cplx(0, th - dth));
            const cplx B = cent + outr * std::exp(cplx(0, th + (r / outr) * dth + M_PI));
            const cplx C = cent + outr * std::exp(cplx(0, th - (r / outr) * dth + M_PI));
            const cplx D = r * std::exp(cplx(0, th + dth));
            push(logarc_piece(prev, A));
            push(segment_piece(A, B));
            double a0 = std::arg(B - cent), a1 = std::arg(C - cent);
            if (std::abs(a1 - a0) < M_PI) a1 += 2 * M_PI;
            push(circarc_piece(cent, outr, a0, a1));
            push(segment_piece(C, D));
            prev = D;
        }
        push(logarc_piece(prev, ce));
        push(segment_piece(ce, cE));
        push(logarc_piece(cE, cs));
        curve.components.resize(1);
        for (size_t i = 0; i < curve.pieces.size(); ++i)
            curve.components[0].push_back(int(i));
        curve.info["petals"] = double(thetas.size());
    } else {
        throw std::invalid_argument("build_scatterer: unknown gallery name '" + name + "'");
    }

    curve.finalize();
    return curve;
}

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

enum class Scheme { panel, global_trapezoid };

struct Panel {
    int piece = -1;
    double t0 = 0, t1 = 1;
    int level = 0;    // dyadic refinement level (0 = base panel)
    int parent = -1;  // panel this one was split from, -1 for base panels
    int first_node = 0, n_nodes = 0;
    double length = 0;  // arclength estimate
};

struct DiscretizedBoundary {
    std::shared_ptr<const BoundaryCurve> curve;
    int nodes_per_panel = 16;

    std::vector<cplx> nodes;
    std::vector<double> weights;     // quadrature weights incl. |gamma'|
    std::vector<cplx> normals;       // unit outward normals
    std::vector<double> params;      // parameter of each node within its piece
    std::vector<double> speeds;      // |gamma'| at each node
    std::vector<double> curvatures;  // signed curvature at each node
    std::vector<int> node_piece;
    std::vector<int> node_panel;     // -1 for global-scheme nodes
    std::vector<int> node_component;

    std::vector<Panel> panels;
    std::vector<Scheme> component_scheme;
    std::vector<std::pair<int, int>> component_node_range;  // [first, last)

    size_t size() const { return nodes.size(); }
    double max_panel_length = 0;  // for the near-evaluation safety default

    double total_weight() const {
        return std::accumulate(weights.begin(), weights.end(), 0.0);
    }
};

enum class SchemeRequest { automatic, panel, global_trapezoid };

namespace detail {

// Panel breakpoints equidistributing max(|gamma'|, 1.5 * mean speed).  Pure
// arclength balancing starves regions where the parametrization slows down
// (the speed dip is a near-cusp in parameter space); the floor keeps panel
// parameter widths bounded there.
inline std::vector<double> arclength_breaks(const Piece& p, int count) {
    const int ns = 1024;
    std::vector<double> speed(ns);
    double mean = 0;
    for (int i = 0; i < ns; ++i) {
        speed[i] = std::abs(p.df((i + 0.5) / ns));
        mean += speed[i] / ns;
    }
    std::vector<double> cum(ns + 1, 0.0);
    for (int i = 0; i < ns; ++i)
        cum[i + 1] = cum[i] + std::max(speed[i], 1.5 * mean) / ns;
    std::vector<double> breaks(count + 1);
    breaks[0] = 0;
    breaks[count] = 1;
    for (int k = 1; k < count; ++k) {
        const double target = cum[ns] * k / count;
        const auto it = std::lower_bound(cum.begin(), cum.end(), target);
        const int i = int(it - cum.begin());
        const double frac = (target - cum[i - 1]) / (cum[i] - cum[i - 1]);
        breaks[k] = (i - 1 + frac) / ns;
    }
    return breaks;
}

}  // namespace detail

/// Composite Gauss-Legendre panels with dyadic refinement into corners; smooth
/// single-piece components may instead get a global periodic-trapezoidal node
/// set (flagged per component).
inline DiscretizedBoundary discretize(std::shared_ptr<const BoundaryCurve> curve,
                                      int nodes_per_panel, int base_panels,
                                      int corner_depth,
                                      SchemeRequest request = SchemeRequest::automatic) {
    if (nodes_per_panel < 4)
        throw std::invalid_argument("discretize: nodes_per_panel >= 4 required");
    if (corner_depth < 0) throw std::invalid_argument("discretize: corner_depth >= 0");
    if (base_panels < 1) throw std::invalid_argument("discretize: base_panels >= 1");

    DiscretizedBoundary bdy;
    bdy.curve = curve;
    bdy.nodes_per_panel = nodes_per_panel;
    const auto& rule = gauss_rule_cached(nodes_per_panel);
    const double total_arc = curve->arclength();

    auto add_node = [&](cplx pos, double w, cplx nrm, double t, double speed,
                        double curv, int piece, int panel, int comp) {
        bdy.nodes.push_back(pos);
        bdy.weights.push_back(w);
        bdy.normals.push_back(nrm);
        bdy.params.push_back(t);
        bdy.speeds.push_back(speed);
        bdy.curvatures.push_back(curv);
        bdy.node_piece.push_back(piece);
        bdy.node_panel.push_back(panel);
        bdy.node_component.push_back(comp);
    };

    bdy.component_scheme.resize(curve->components.size());
    bdy.component_node_range.resize(curve->components.size());

    for (size_t c = 0; c < curve->components.size(); ++c) {
        const auto& comp = curve->components[c];
        bool has_corner = false;
        double comp_arc = 0;
        for (int k : comp) {
            comp_arc += curve->piece_arclengths()[k];
            if (curve->piece_starts_at_corner(k) || curve->piece_ends_at_corner(k))
                has_corner = true;
        }
        const bool use_global =
            (request == SchemeRequest::global_trapezoid) ||
            (request == SchemeRequest::automatic && !has_corner && comp.size() == 1);
        bdy.component_scheme[c] = use_global ? Scheme::global_trapezoid : Scheme::panel;
        const int first_node = int(bdy.nodes.size());

        if (use_global) {
            if (has_corner)
                throw std::invalid_argument(
                    "discretize: global scheme requested for a component with corners");
            const int k = comp[0];
            const auto& p = curve->pieces[k];
            int n = std::max(8, int(std::lround(
                                 double(base_panels) * nodes_per_panel *
                                 curve->piece_arclengths()[k] / total_arc)));
            if (n % 2) ++n;  // the log-correction weights need an even count
            double max_gap = 0;
            for (int j = 0; j < n; ++j) {
                const double t = double(j) / n;
                const cplx d = p.df(t), dd = p.ddf(t);
                const double sp = std::abs(d);
                const double curv = std::imag(std::conj(d) * dd) / (sp * sp * sp);
                add_node(p.f(t), sp / n, -cplx(0, 1) * d / sp, t, sp, curv, k, -1,
                         int(c));
                max_gap = std::max(max_gap, sp / n);
            }
            bdy.max_panel_length = std::max(bdy.max_panel_length,
                                            max_gap * nodes_per_panel);
        } else {
            for (int k : comp) {
                const auto& p = curve->pieces[k];
                int count = std::max(1, int(std::lround(
                                         double(base_panels) *
                                         curve->piece_arclengths()[k] / total_arc)));
                const bool corner0 = curve->piece_starts_at_corner(k);
                const bool corner1 = curve->piece_ends_at_corner(k);
                if (count < 2 && corner0 && corner1) count = 2;
                auto breaks = detail::arclength_breaks(p, count);

                // base panels for this piece, then dyadic splits toward corners
                std::vector<Panel> piece_panels;
                for (int q = 0; q < count; ++q)
                    piece_panels.push_back({k, breaks[q], breaks[q + 1], 0, -1, 0, 0, 0});
                if (corner_depth > 0 && corner0) {
                    // first panel: repeatedly halve toward t=0
                    Panel base = piece_panels.front();
                    piece_panels.erase(piece_panels.begin());
                    std::vector<Panel> stack;
                    double lo = base.t0, hi = base.t1;
                    for (int d = 0; d < corner_depth; ++d) {
                        const double mid = lo + 0.5 * (hi - lo);
                        stack.push_back({k, mid, hi, d + 1, -1, 0, 0, 0});
                        hi = mid;
                    }
                    stack.push_back({k, lo, hi, corner_depth, -1, 0, 0, 0});
                    piece_panels.insert(piece_panels.begin(), stack.rbegin(), stack.rend());
                }
                if (corner_depth > 0 && corner1) {
                    Panel base = piece_panels.back();
                    piece_panels.pop_back();
                    double lo = base.t0, hi = base.t1;
                    std::vector<Panel> stack;
                    for (int d = 0; d < corner_depth; ++d) {
                        const double mid = hi - 0.5 * (hi - lo);
                        stack.push_back({k, lo, mid, d + 1, -1, 0, 0, 0});
                        lo = mid;
                    }
                    stack.push_back({k, lo, hi, corner_depth, -1, 0, 0, 0});
                    for (auto& pa : stack) piece_panels.push_back(pa);
                }

                for (auto& pa : piece_panels) {
                    pa.first_node = int(bdy.nodes.size());
                    pa.n_nodes = nodes_per_panel;
                    const int panel_idx = int(bdy.panels.size());
                    const double mid = 0.5 * (pa.t0 + pa.t1), half = 0.5 * (pa.t1 - pa.t0);
                    double arc = 0;
                    for (int q = 0; q < nodes_per_panel; ++q) {
                        const double t = mid + half * rule.nodes[q];
                        const cplx d = p.df(t), dd = p.ddf(t);
                        const double sp = std::abs(d);
                        const double curv = std::imag(std::conj(d) * dd) / (sp * sp * sp);
                        const double w = rule.weights[q] * half * sp;
                        arc += w;
                        add_node(p.f(t), w, -cplx(0, 1) * d / sp, t, sp, curv, k,
                                 panel_idx, int(c));
                    }
                    pa.length = arc;
                    bdy.panels.push_back(pa);
                    if (pa.level == 0)
                        bdy.max_panel_length = std::max(bdy.max_panel_length, arc);
                }
            }
        }
        bdy.component_node_range[c] = {first_node, int(bdy.nodes.size())};
    }
    return bdy;
}

/// Uniform-in-parameter polyline sampling of the whole curve (for plotting).
inline std::vector<cplx> sample_polyline(const BoundaryCurve& curve, int total_points) {
    std::vector<cplx> out;
    out.reserve(total_points + 1);
    const int per_piece = std::max(2, total_points / int(curve.pieces.size()));
    for (const auto& comp : curve.components)
        for (int k : comp)
            for (int j = 0; j < per_piece; ++j)
                out.push_back(curve.pieces[k].f(double(j) / per_piece));
    return out;
}

}  // namespace tfwave
