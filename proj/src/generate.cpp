#include <algorithm>
#include <set>
#include <sstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/rng.hpp"
#include "avoidkit/toolkit.hpp"

namespace avoidkit {

GenKind gen_kind_from_string(const std::string& s) {
    if (s == "uniform") return GenKind::uniform;
    if (s == "perturbed_grid") return GenKind::perturbed_grid;
    if (s == "convex") return GenKind::convex;
    if (s == "moment_curve") return GenKind::moment_curve;
    throw input_error("unknown generator kind '" + s + "'");
}

std::string to_string(GenKind kind) {
    switch (kind) {
        case GenKind::uniform: return "uniform";
        case GenKind::perturbed_grid: return "perturbed_grid";
        case GenKind::convex: return "convex";
        case GenKind::moment_curve: return "moment_curve";
    }
    return "?";
}

namespace {

constexpr long kDenPow = 20; // coordinate denominators are 2^20
const long kDen = 1L << kDenPow;

Rational random_unit(Rng& rng) {
    // uniform in [0, 1024) with denominator 2^20
    return Rational(static_cast<long>(rng.below(1024UL * kDen)), kDen);
}

Rational random_signed_unit(Rng& rng) {
    // uniform in [-1, 1) with denominator 2^19
    return Rational(static_cast<long>(rng.below(2UL * kDen)) - kDen, kDen);
}

std::vector<Point> draw_uniform(std::size_t n, std::size_t d, Rng& rng) {
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> c(d);
        for (auto& v : c) v = random_unit(rng);
        pts.push_back(Point(std::move(c)));
    }
    return pts;
}

std::vector<Point> draw_perturbed_grid(std::size_t n, std::size_t d, const Rational& delta,
                                       Rng& rng) {
    // smallest side with side^d >= n
    std::size_t side = 1;
    auto cells_of = [&](std::size_t s) {
        std::size_t cells = 1;
        for (std::size_t i = 0; i < d; ++i) {
            if (cells >= n) break;
            cells *= s;
        }
        return cells;
    };
    while (cells_of(side) < n) ++side;
    std::vector<Point> pts;
    pts.reserve(n);
    std::vector<std::size_t> cell(d, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> c(d);
        for (std::size_t j = 0; j < d; ++j)
            c[j] = Rational(static_cast<long>(cell[j])) + delta * random_signed_unit(rng);
        pts.push_back(Point(std::move(c)));
        for (std::size_t j = d; j-- > 0;) {
            if (++cell[j] < side) break;
            cell[j] = 0;
        }
    }
    return pts;
}

std::vector<Point> draw_convex(std::size_t n, std::size_t d, Rng& rng) {
    if (d == 2) {
        // distinct rational points on the unit circle via t -> ((1-t^2), 2t) / (1+t^2)
        std::set<Rational> used;
        std::vector<Point> pts;
        pts.reserve(n);
        while (pts.size() < n) {
            Rational t(static_cast<long>(rng.below(1UL << 22)) - (1L << 21), 1L << 14);
            if (!used.insert(t).second) continue;
            Rational t2 = t * t;
            Rational den = Rational(1) + t2;
            pts.push_back(Point({(Rational(1) - t2) / den, (Rational(2) * t) / den}));
        }
        return pts;
    }
    // moment curve with distinct random parameters: convex position and
    // general position by the Vandermonde determinant
    std::set<long> used;
    std::vector<long> params;
    while (params.size() < n) {
        long t = static_cast<long>(rng.below(1UL << 20)) + 1;
        if (used.insert(t).second) params.push_back(t);
    }
    std::sort(params.begin(), params.end());
    std::vector<Point> pts;
    pts.reserve(n);
    for (long t : params) {
        std::vector<Rational> c(d);
        Rational v(t);
        for (std::size_t j = 0; j < d; ++j) {
            c[j] = v;
            v = v * Rational(t);
        }
        pts.push_back(Point(std::move(c)));
    }
    return pts;
}

std::vector<Point> draw_moment_curve(std::size_t n, std::size_t d) {
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Rational> c(d);
        Rational v(static_cast<long>(i));
        for (std::size_t j = 0; j < d; ++j) {
            c[j] = v;
            v = v * Rational(static_cast<long>(i));
        }
        pts.push_back(Point(std::move(c)));
    }
    return pts;
}

} // namespace

GenResult generate(const GenSpec& spec) {
    if (spec.n < 1) throw input_error("generator needs n >= 1");
    if (spec.dim < 1) throw input_error("generator needs dim >= 1");
    if (spec.kind == GenKind::perturbed_grid) {
        if (spec.delta.sign() <= 0 || !(spec.delta < Rational(1, 4)))
            throw input_error("perturbed_grid needs 0 < delta < 1/4 of the grid spacing");
    }

    // moment_curve and convex are in general position by construction
    if (spec.kind == GenKind::moment_curve)
        return GenResult{PointSeq(spec.dim, draw_moment_curve(spec.n, spec.dim)), 0};
    if (spec.kind == GenKind::convex) {
        Rng rng = Rng(spec.seed).split(0);
        return GenResult{PointSeq(spec.dim, draw_convex(spec.n, spec.dim, rng)), 0};
    }

    for (std::size_t attempt = 0; attempt < 1000; ++attempt) {
        Rng rng = Rng(spec.seed).split(attempt);
        std::vector<Point> pts = spec.kind == GenKind::uniform
                                     ? draw_uniform(spec.n, spec.dim, rng)
                                     : draw_perturbed_grid(spec.n, spec.dim, spec.delta, rng);
        try {
            PointSeq seq(spec.dim, std::move(pts));
            if (general_position(seq)) return GenResult{std::move(seq), attempt};
        } catch (const input_error&) {
            // duplicate points: redraw
        }
    }
    throw cap_exceeded("generator could not reach general position in 1000 retries");
}

std::size_t bound_sqrt_n12(std::size_t n) {
    std::size_t m = 1;
    while (12 * m * m < n) ++m;
    return m;
}

} // namespace avoidkit
