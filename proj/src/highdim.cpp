#include "avoidkit/highdim.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/lp.hpp"

namespace avoidkit {

std::optional<Hyperplane> try_separating_hyperplane(const std::vector<Point>& A,
                                                    const std::vector<Point>& B) {
    if (A.empty() || B.empty())
        throw input_error("separation requires two nonempty point sets");
    const std::size_t d = A[0].dim();
    for (const auto& p : A)
        if (p.dim() != d) throw input_error("separation: mixed dimensions");
    for (const auto& p : B)
        if (p.dim() != d) throw input_error("separation: mixed dimensions");

    // maximize sigma subject to
    //   <w, a> - c + sigma <= 0   for a in A
    //   <w, b> - c - sigma >= 0   for b in B
    //   -1 <= w_i <= 1
    // with w, c, sigma free (split into nonnegative parts). The sup-norm
    // bound on w keeps the slack finite; sigma > 0 iff the hulls are
    // strictly separable.
    const std::size_t nv = 2 * d + 4;
    auto wp = [](std::size_t i) { return 2 * i; };
    auto wm = [](std::size_t i) { return 2 * i + 1; };
    const std::size_t cp = 2 * d, cm = 2 * d + 1, sp = 2 * d + 2, sm = 2 * d + 3;

    LpProblem lp;
    lp.objective.assign(nv, Rational(0));
    lp.objective[sp] = Rational(1);
    lp.objective[sm] = Rational(-1);

    std::vector<Rational> row(nv);
    auto fill_point_row = [&](const Point& p) {
        std::fill(row.begin(), row.end(), Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
            row[wp(i)] = p[i];
            row[wm(i)] = -p[i];
        }
        row[cp] = Rational(-1);
        row[cm] = Rational(1);
    };
    for (const auto& a : A) {
        fill_point_row(a);
        row[sp] = Rational(1);
        row[sm] = Rational(-1);
        lp.add_row(row, LpProblem::Rel::le, Rational(0));
    }
    for (const auto& b : B) {
        fill_point_row(b);
        row[sp] = Rational(-1);
        row[sm] = Rational(1);
        lp.add_row(row, LpProblem::Rel::ge, Rational(0));
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::fill(row.begin(), row.end(), Rational(0));
        row[wp(i)] = Rational(1);
        row[wm(i)] = Rational(-1);
        lp.add_row(row, LpProblem::Rel::le, Rational(1));
        row[wp(i)] = Rational(-1);
        row[wm(i)] = Rational(1);
        lp.add_row(row, LpProblem::Rel::le, Rational(1));
    }

    LpResult res = lp_solve(lp);
    if (res.status != LpResult::Status::optimal)
        throw internal_error("separation program must have a bounded optimum");
    if (res.objective.sign() <= 0) return std::nullopt;
    std::vector<Rational> normal(d);
    for (std::size_t i = 0; i < d; ++i) normal[i] = res.x[wp(i)] - res.x[wm(i)];
    Rational offset = res.x[cp] - res.x[cm];
    return Hyperplane(std::move(normal), std::move(offset)).canonical();
}

Hyperplane separating_hyperplane(const PointSeq& P, const IndexSet& A, const IndexSet& B) {
    A.check_bounds(P.size());
    B.check_bounds(P.size());
    if (!A.disjoint_from(B)) throw input_error("separation: A and B must be disjoint");
    std::vector<Point> ap, bp;
    for (auto i : A.indices()) ap.push_back(P[i]);
    for (auto i : B.indices()) bp.push_back(P[i]);
    auto h = try_separating_hyperplane(ap, bp);
    if (!h) throw input_error("not separable: the convex hulls intersect");
    return *h;
}

std::vector<ProjectionFrame> project_through(const PointSeq& P, const IndexSet& A,
                                             const IndexSet& B, const Hyperplane& h) {
    const std::size_t d = P.dim();
    if (d < 2) throw input_error("projection requires dimension >= 2");
    A.check_bounds(P.size());
    B.check_bounds(P.size());
    if (A.empty() || B.empty()) throw input_error("projection requires nonempty sets");
    int a_side = h.side(P[A[0]]);
    if (a_side == 0) throw input_error("projection: hyperplane touches A");
    for (auto i : A.indices())
        if (h.side(P[i]) != a_side) throw input_error("projection: hyperplane does not separate A strictly");
    for (auto i : B.indices())
        if (h.side(P[i]) != -a_side) throw input_error("projection: hyperplane does not separate B strictly");

    // Chart: drop the coordinate with the largest |normal| component.
    std::size_t dropped = 0;
    for (std::size_t i = 1; i < d; ++i)
        if (h.normal[i].abs() > h.normal[dropped].abs()) dropped = i;

    std::vector<ProjectionFrame> frames;
    frames.reserve(A.size());
    for (auto a : A.indices()) {
        std::vector<Point> images;
        images.reserve(B.size());
        for (auto b : B.indices()) {
            Point x = [&] {
                try {
                    return line_hyperplane_intersection(P[a], P[b], h);
                } catch (const input_error& e) {
                    throw internal_error(std::string("projection line failed: ") + e.what());
                }
            }();
            std::vector<Rational> chart;
            chart.reserve(d - 1);
            for (std::size_t c = 0; c < d; ++c)
                if (c != dropped) chart.push_back(x[c]);
            images.push_back(Point(std::move(chart)));
        }
        frames.push_back(ProjectionFrame{a, h, PointSeq(d - 1, std::move(images)), dropped});
    }
    return frames;
}

AvoidingPair max_avoiding_bruteforce_rd(const PointSeq& P, const SearchConfig& cfg) {
    SearchConfig c = cfg;
    c.avoiding_cap = cfg.avoiding_cap_rd;
    return max_avoiding_bruteforce(P, c);
}

// ---------------------------------------------------------------------------
// Heuristic avoiding pair search in R^d

AvoidingPair find_avoiding_heuristic_rd(const PointSeq& P, std::size_t target,
                                        const SearchConfig& cfg) {
    const std::size_t n = P.size();
    const std::size_t d = P.dim();
    if (n < 2) throw input_error("need at least two points for an avoiding pair");

    // Directions: normals of hyperplanes spanned by point d-tuples, with
    // a deterministic stride down to the configured budget.
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total = total * (n - i) / (i + 1);
        if (total > 1000000) break;
    }
    const std::size_t cap =
        cfg.heuristic_direction_cap == 0 ? 2000 : cfg.heuristic_direction_cap;
    const std::size_t stride = total <= cap ? 1 : (total + cap - 1) / cap;

    std::vector<std::vector<std::size_t>> tuples;
    std::size_t index = 0;
    for_each_combination(n, d, [&](const std::vector<std::size_t>& tuple) {
        if (index++ % stride == 0) tuples.push_back(tuple);
        return true;
    });

    std::size_t at = 0;
    std::set<std::string> seen;
    auto next_direction = [&](std::vector<Rational>& keys) {
        while (at < tuples.size()) {
            const auto& tuple = tuples[at++];
            std::vector<Point> pts;
            pts.reserve(d);
            for (auto i : tuple) pts.push_back(P[i]);
            std::vector<Rational> normal;
            try {
                Hyperplane h = hyperplane_through(pts).canonical();
                normal = h.normal;
            } catch (const input_error&) {
                continue; // affinely dependent tuple: no direction
            }
            std::string key;
            for (const auto& v : normal) key += v.str() + ":";
            if (!seen.insert(key).second) continue;
            for (std::size_t t = 0; t < n; ++t) {
                Rational s;
                for (std::size_t c = 0; c < d; ++c) s += normal[c] * P[t][c];
                keys[t] = s;
            }
            return true;
        }
        return false;
    };
    return detail::heuristic_directional_scan(P, target, cfg, next_direction);
}

// ---------------------------------------------------------------------------
// Recursive crossing family construction

CrossingRdResult crossing_family_rd(const PointSeq& P, const SearchConfig& cfg) {
    const std::size_t n = P.size();
    const std::size_t d = P.dim();
    if (d < 2) throw input_error("crossing families require dimension >= 2");
    if (n < d) throw input_error("need at least d points for a (d-1)-simplex");

    // Find a mutually avoiding pair, exactly when the oracle cap allows.
    AvoidingPair pair;
    if (d == 2) {
        if (n <= cfg.avoiding_cap) {
            pair = max_avoiding_bruteforce(P, cfg);
        } else {
            // aim beyond the guaranteed bound; the scan keeps its best
            // verified pair when the target is out of reach
            std::size_t bound = 1;
            while (12 * (bound + 1) * (bound + 1) <= n) ++bound;
            std::size_t target = std::max(bound, std::min<std::size_t>(n / 2, 8));
            pair = find_avoiding_heuristic(P, target, cfg);
        }
    } else {
        if (n <= cfg.avoiding_cap_rd) {
            pair = max_avoiding_bruteforce_rd(P, cfg);
        } else {
            pair = find_avoiding_heuristic_rd(P, std::min<std::size_t>(n / 2, 8), cfg);
        }
    }
    const std::size_t k = std::min(pair.a.size(), pair.b.size());

    if (d == 2) {
        // trim to equal size k, then extract the segment family
        auto first_k = [&](const IndexSet& s) {
            std::vector<std::size_t> v(s.indices().begin(),
                                       s.indices().begin() + static_cast<std::ptrdiff_t>(k));
            return IndexSet(v);
        };
        AvoidingPair trimmed{first_k(pair.a), first_k(pair.b), true};
        CrossingFamily fam = crossing_family_from_avoiding(P, trimmed);
        return CrossingRdResult{std::move(fam), k < 2};
    }

    if (k < 2) {
        // No usable pair: a single (d-1)-simplex is trivially a crossing family.
        std::vector<std::size_t> v(d);
        std::iota(v.begin(), v.end(), 0);
        CrossingFamily fam{{Simplex{v}}, true};
        return CrossingRdResult{std::move(fam), true};
    }

    auto first_k = [&](const IndexSet& s) {
        std::vector<std::size_t> v(s.indices().begin(),
                                   s.indices().begin() + static_cast<std::ptrdiff_t>(k));
        return IndexSet(v);
    };
    IndexSet A = first_k(pair.a), B = first_k(pair.b);

    Hyperplane h = separating_hyperplane(P, A, B);
    std::vector<ProjectionFrame> frames = project_through(P, A, B, h);

    // Recurse on the first frame's images (all frames share one order type).
    CrossingRdResult sub = crossing_family_rd(frames[0].images, cfg);
    const std::size_t fam_size = std::min(sub.family.size(), A.size());

    // Apexes in first-coordinate (lexicographic) order, one per simplex.
    std::vector<std::size_t> apexes(A.indices());
    std::sort(apexes.begin(), apexes.end(), [&](std::size_t x, std::size_t y) {
        return Point::lex_less(P[x], P[y]);
    });

    std::vector<Simplex> lifted;
    lifted.reserve(fam_size);
    for (std::size_t i = 0; i < fam_size; ++i) {
        std::vector<std::size_t> v;
        v.reserve(d);
        v.push_back(apexes[i]);
        for (auto img : sub.family.simplices[i].vertex_indices)
            v.push_back(B[img]); // image index j is the j-th point of B
        std::sort(v.begin(), v.end());
        lifted.push_back(Simplex{std::move(v)});
    }
    if (!is_crossing_family(P, lifted)) {
        std::ostringstream os;
        os << "lifted family of " << lifted.size()
           << " simplices failed the strong-crossing verification";
        throw internal_error(os.str());
    }
    return CrossingRdResult{CrossingFamily{std::move(lifted), true}, false};
}

} // namespace avoidkit
