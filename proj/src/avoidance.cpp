#include "avoidkit/avoidance.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/lp.hpp"

namespace avoidkit {

IndexSet::IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    auto dup = std::adjacent_find(indices_.begin(), indices_.end());
    if (dup != indices_.end()) throw input_error("index set contains duplicates");
}

bool IndexSet::contains(std::size_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool IndexSet::disjoint_from(const IndexSet& other) const {
    std::size_t i = 0, j = 0;
    while (i < size() && j < other.size()) {
        if (indices_[i] == other.indices_[j]) return false;
        if (indices_[i] < other.indices_[j]) ++i; else ++j;
    }
    return true;
}

void IndexSet::check_bounds(std::size_t n) const {
    if (!indices_.empty() && indices_.back() >= n)
        throw input_error("index set out of bounds");
}

bool Simplex::shares_vertex(const Simplex& other) const {
    for (auto v : vertex_indices)
        if (std::find(other.vertex_indices.begin(), other.vertex_indices.end(), v) !=
            other.vertex_indices.end())
            return true;
    return false;
}

namespace {

std::vector<Point> gather(const PointSeq& P, const std::vector<std::size_t>& idx) {
    std::vector<Point> pts;
    pts.reserve(idx.size());
    for (auto i : idx) pts.push_back(P[i]);
    return pts;
}

void check_simplex(const PointSeq& P, const Simplex& s) {
    if (s.vertex_indices.size() != P.dim())
        throw input_error("simplex must have exactly d vertices");
    for (auto v : s.vertex_indices)
        if (v >= P.size()) throw input_error("simplex vertex index out of bounds");
}

} // namespace

bool avoids(const PointSeq& P, const IndexSet& A, const IndexSet& B) {
    A.check_bounds(P.size());
    B.check_bounds(P.size());
    if (B.empty()) throw input_error("avoids: B must be nonempty");
    if (!A.disjoint_from(B)) throw input_error("avoids: A and B must be disjoint");
    const std::size_t d = P.dim();
    if (A.size() < d) return true; // no hyperplane is generated
    std::vector<Point> b_points = gather(P, B.indices());
    bool ok = true;
    for_each_combination(A.size(), d, [&](const std::vector<std::size_t>& sub) {
        std::vector<std::size_t> h(d);
        for (std::size_t i = 0; i < d; ++i) h[i] = A[sub[i]];
        SideCounts sc = side_counts(gather(P, h), b_points);
        if (sc.num_zero != 0 || (sc.num_positive != 0 && sc.num_negative != 0)) {
            ok = false;
            return false;
        }
        return true;
    });
    return ok;
}

bool mutually_avoiding(const PointSeq& P, const IndexSet& A, const IndexSet& B) {
    if (!A.disjoint_from(B))
        throw input_error("mutually_avoiding: A and B must be disjoint");
    return avoids(P, A, B) && avoids(P, B, A);
}

std::vector<std::size_t> radial_order(const PointSeq& P, const IndexSet& A,
                                      const Point& pivot, RotationSense sense) {
    if (P.dim() != 2) throw input_error("radial_order requires dimension 2");
    A.check_bounds(P.size());
    if (A.empty()) return {};
    for (auto i : A.indices())
        if (P[i] == pivot) throw input_error("radial_order: pivot coincides with a member of A");
    if (A.size() == 1) return {A[0]};

    Point c = centroid(gather(P, A.indices()));
    Rational ux = pivot[0] - c[0];
    Rational uy = pivot[1] - c[1];
    if (ux.is_zero() && uy.is_zero()) { ux = Rational(1); uy = Rational(0); }

    struct Dir { Rational x, y; std::size_t index; };
    std::vector<Dir> dirs;
    dirs.reserve(A.size());
    for (auto i : A.indices())
        dirs.push_back({P[i][0] - pivot[0], P[i][1] - pivot[1], i});

    auto half = [&](const Dir& v) {
        Rational cr = ux * v.y - uy * v.x;
        int s = cr.sign();
        if (s > 0) return 0;
        if (s < 0) return 1;
        return (ux * v.x + uy * v.y).sign() > 0 ? 0 : 1;
    };
    std::sort(dirs.begin(), dirs.end(), [&](const Dir& a, const Dir& b) {
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        int cr = (a.x * b.y - a.y * b.x).sign();
        if (cr != 0) return cr > 0;
        return a.index < b.index;
    });
    std::vector<std::size_t> out;
    out.reserve(dirs.size());
    for (const auto& v : dirs) out.push_back(v.index);
    if (sense == RotationSense::clockwise) std::reverse(out.begin(), out.end());
    return out;
}

bool segments_properly_cross(const PointSeq& P, const Simplex& s1, const Simplex& s2) {
    if (P.dim() != 2) throw input_error("segment crossing test requires dimension 2");
    check_simplex(P, s1);
    check_simplex(P, s2);
    if (s1.shares_vertex(s2)) return false;
    const Point& a = P[s1.vertex_indices[0]];
    const Point& b = P[s1.vertex_indices[1]];
    const Point& c = P[s2.vertex_indices[0]];
    const Point& d = P[s2.vertex_indices[1]];
    int o1 = to_int(orient({a, b, c}));
    int o2 = to_int(orient({a, b, d}));
    int o3 = to_int(orient({c, d, a}));
    int o4 = to_int(orient({c, d, b}));
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool relative_interiors_intersect(const PointSeq& P, const Simplex& s1, const Simplex& s2) {
    check_simplex(P, s1);
    check_simplex(P, s2);
    const std::size_t d = P.dim();
    // Common point sum(lambda_i u_i) = sum(mu_j v_j) with barycentric
    // coordinates lambda, mu; substitute lambda_i = t + s_i, mu_j = t + r_j
    // and maximize t. Positive optimum <=> the relative interiors meet.
    // Variables: s_0..s_{d-1}, r_0..r_{d-1}, t_plus, t_minus.
    const std::size_t nv = 2 * d + 2;
    const std::size_t tp = 2 * d, tm = 2 * d + 1;
    LpProblem lp;
    lp.objective.assign(nv, Rational(0));
    lp.objective[tp] = Rational(1);
    lp.objective[tm] = Rational(-1);

    std::vector<Rational> row(nv, Rational(0));
    for (std::size_t i = 0; i < d; ++i) row[i] = Rational(1);
    row[tp] = Rational(static_cast<long>(d));
    row[tm] = Rational(-static_cast<long>(d));
    lp.add_row(row, LpProblem::Rel::eq, Rational(1));

    std::fill(row.begin(), row.end(), Rational(0));
    for (std::size_t j = 0; j < d; ++j) row[d + j] = Rational(1);
    row[tp] = Rational(static_cast<long>(d));
    row[tm] = Rational(-static_cast<long>(d));
    lp.add_row(row, LpProblem::Rel::eq, Rational(1));

    for (std::size_t c = 0; c < d; ++c) {
        std::fill(row.begin(), row.end(), Rational(0));
        Rational tsum;
        for (std::size_t i = 0; i < d; ++i) {
            const Rational& u = P[s1.vertex_indices[i]][c];
            row[i] = u;
            tsum += u;
        }
        for (std::size_t j = 0; j < d; ++j) {
            const Rational& v = P[s2.vertex_indices[j]][c];
            row[d + j] = -v;
            tsum -= v;
        }
        row[tp] = tsum;
        row[tm] = -tsum;
        lp.add_row(row, LpProblem::Rel::eq, Rational(0));
    }

    LpResult res = lp_solve(lp);
    if (res.status == LpResult::Status::infeasible) return false;
    if (res.status == LpResult::Status::unbounded)
        throw internal_error("relative-interior program cannot be unbounded");
    return res.objective.sign() > 0;
}

bool strongly_cross(const PointSeq& P, const Simplex& s1, const Simplex& s2) {
    check_simplex(P, s1);
    check_simplex(P, s2);
    if (s1.shares_vertex(s2)) return false;
    return relative_interiors_intersect(P, s1, s2);
}

bool is_crossing_family(const PointSeq& P, const std::vector<Simplex>& fam) {
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (!strongly_cross(P, fam[i], fam[j])) return false;
    return true;
}

CrossingFamily crossing_family_from_avoiding(const PointSeq& P, const AvoidingPair& pair) {
    if (P.dim() != 2) throw input_error("crossing extraction requires dimension 2");
    if (!pair.verified) throw input_error("crossing extraction requires a verified pair");
    if (pair.a.size() != pair.b.size())
        throw input_error("crossing extraction requires |A| = |B|");
    const std::size_t k = pair.a.size();
    if (k == 0) throw input_error("crossing extraction requires nonempty sets");

    std::vector<std::size_t> a_order =
        radial_order(P, pair.a, P[pair.b[0]], RotationSense::clockwise);
    std::vector<std::size_t> b_order =
        radial_order(P, pair.b, P[pair.a[0]], RotationSense::counterclockwise);

    auto build = [&](bool reverse_b) {
        std::vector<Simplex> segs;
        segs.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t bi = reverse_b ? k - 1 - i : i;
            std::vector<std::size_t> v{a_order[i], b_order[bi]};
            std::sort(v.begin(), v.end());
            segs.push_back(Simplex{std::move(v)});
        }
        return segs;
    };

    for (bool reverse_b : {false, true}) {
        std::vector<Simplex> segs = build(reverse_b);
        if (is_crossing_family(P, segs)) return CrossingFamily{std::move(segs), true};
    }
    std::ostringstream os;
    os << "no pairing of the avoiding pair (|A| = |B| = " << k
       << ") produced a crossing family; the pair is likely not mutually avoiding";
    throw internal_error(os.str());
}

// ---------------------------------------------------------------------------
// SideMaskTable

SideMaskTable::SideMaskTable(const PointSeq& P) : n_(P.size()), d_(P.dim()) {
    words_ = (n_ + 63) / 64;
    // binomial coefficients C(i, j) for ranking d-subsets
    ranks_.assign(n_ + 1, std::vector<std::size_t>(d_ + 1, 0));
    for (std::size_t i = 0; i <= n_; ++i) {
        ranks_[i][0] = 1;
        for (std::size_t j = 1; j <= d_ && j <= i; ++j)
            ranks_[i][j] = ranks_[i - 1][j - 1] + (i > j ? ranks_[i - 1][j] : 0);
    }
    const std::size_t total = n_ >= d_ ? ranks_[n_][d_] : 0;
    pos_.assign(total * words_, 0);
    neg_.assign(total * words_, 0);
    for_each_combination(n_, d_, [&](const std::vector<std::size_t>& h) {
        Hyperplane hp = hyperplane_through(gather(P, h));
        const std::size_t rank = rank_of(h);
        std::uint64_t* pw = &pos_[rank * words_];
        std::uint64_t* nw = &neg_[rank * words_];
        for (std::size_t q = 0; q < n_; ++q) {
            int s = hp.side(P[q]);
            if (s > 0) pw[q / 64] |= (std::uint64_t{1} << (q % 64));
            else if (s < 0) nw[q / 64] |= (std::uint64_t{1} << (q % 64));
        }
        return true;
    });
}

std::size_t SideMaskTable::rank_of(const std::vector<std::size_t>& h) const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < h.size(); ++i) r += ranks_[h[i]][i + 1];
    return r;
}

bool SideMaskTable::one_side(const std::vector<std::size_t>& h,
                             const std::vector<std::size_t>& B) const {
    const std::size_t rank = rank_of(h);
    const std::uint64_t* pw = &pos_[rank * words_];
    const std::uint64_t* nw = &neg_[rank * words_];
    bool all_pos = true, all_neg = true;
    for (auto q : B) {
        std::uint64_t bit = std::uint64_t{1} << (q % 64);
        all_pos = all_pos && (pw[q / 64] & bit);
        all_neg = all_neg && (nw[q / 64] & bit);
        if (!all_pos && !all_neg) return false;
    }
    return true;
}

bool SideMaskTable::avoids_masked(const std::vector<std::size_t>& A,
                                  const std::vector<std::size_t>& B) const {
    if (A.size() < d_) return true;
    bool ok = true;
    for_each_combination(A.size(), d_, [&](const std::vector<std::size_t>& sub) {
        std::vector<std::size_t> h(d_);
        for (std::size_t i = 0; i < d_; ++i) h[i] = A[sub[i]];
        if (!one_side(h, B)) { ok = false; return false; }
        return true;
    });
    return ok;
}

// ---------------------------------------------------------------------------
// Brute-force maximum mutually avoiding pair

AvoidingPair max_avoiding_bruteforce(const PointSeq& P, const SearchConfig& cfg) {
    const std::size_t n = P.size();
    if (n < 2) throw input_error("need at least two points for an avoiding pair");
    if (n > cfg.avoiding_cap) {
        std::ostringstream os;
        os << "brute-force avoiding search refused: n = " << n << " exceeds cap "
           << cfg.avoiding_cap << "; use the heuristic search instead";
        throw cap_exceeded(os.str());
    }
    SideMaskTable table(P);
    for (std::size_t k = n / 2; k >= 1; --k) {
        AvoidingPair found;
        bool have = false;
        for_each_combination(n, k, [&](const std::vector<std::size_t>& a) {
            std::vector<std::size_t> rest;
            rest.reserve(n - k);
            std::size_t ai = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (ai < k && a[ai] == i) { ++ai; continue; }
                rest.push_back(i);
            }
            bool done = false;
            for_each_combination(rest.size(), k, [&](const std::vector<std::size_t>& bsub) {
                std::vector<std::size_t> b(k);
                for (std::size_t i = 0; i < k; ++i) b[i] = rest[bsub[i]];
                if (table.avoids_masked(a, b) && table.avoids_masked(b, a)) {
                    found = AvoidingPair{IndexSet(a), IndexSet(b), true};
                    have = true;
                    done = true;
                    return false;
                }
                return true;
            });
            return !done;
        });
        if (have) return found;
    }
    throw internal_error("no avoiding pair found; singleton pairs are always valid");
}

// ---------------------------------------------------------------------------
// Heuristic directional search (planar and R^d share the scan)

namespace {

/// avoids() specialized for index lists with early exit; uses the cached
/// homogeneous coordinates instead of building hyperplane objects.
bool lists_mutually_avoiding(const PointSeq& P, const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b) {
    if (P.dim() == 2) {
        auto one_way = [&](const std::vector<std::size_t>& from,
                           const std::vector<std::size_t>& to) {
            for (std::size_t i = 0; i < from.size(); ++i) {
                for (std::size_t j = i + 1; j < from.size(); ++j) {
                    const Point& p = P[from[i]];
                    const Point& q = P[from[j]];
                    int sign = 0;
                    for (auto t : to) {
                        int s = to_int(orient({p, q, P[t]}));
                        if (s == 0) return false;
                        if (sign == 0) sign = s;
                        else if (s != sign) return false;
                    }
                }
            }
            return true;
        };
        return one_way(a, b) && one_way(b, a);
    }
    return mutually_avoiding(P, IndexSet(a), IndexSet(b));
}

} // namespace

namespace detail {

AvoidingPair heuristic_directional_scan(
    const PointSeq& P, std::size_t target, const SearchConfig& cfg,
    const std::function<bool(std::vector<Rational>&)>& next_direction) {
    const std::size_t n = P.size();
    if (n < 2) throw input_error("need at least two points for an avoiding pair");
    if (target == 0) target = 1;

    // A singleton pair is always mutually avoiding: the fallback result.
    AvoidingPair best{IndexSet({std::size_t{0}}), IndexSet({std::size_t{1}}), true};
    std::size_t best_min = 1;

    const std::size_t grow_cap = std::max(target, cfg.heuristic_grow_cap);
    const std::size_t stall_window = cfg.heuristic_stall_window
                                         ? cfg.heuristic_stall_window
                                         : std::max<std::size_t>(256, n);

    // One candidate family: nested prefixes of alist vs blist. The
    // verified-size predicate is monotone (subsets of mutually avoiding
    // sets are mutually avoiding), so binary search applies.
    auto scan_lists = [&](const std::vector<std::size_t>& alist,
                          const std::vector<std::size_t>& blist) -> bool {
        const std::size_t max_m = std::min({alist.size(), blist.size(), n / 2});
        if (max_m == 0) return false;
        auto verified = [&](std::size_t m) {
            std::vector<std::size_t> a(alist.begin(),
                                       alist.begin() + static_cast<std::ptrdiff_t>(m));
            std::vector<std::size_t> b(blist.begin(),
                                       blist.begin() + static_cast<std::ptrdiff_t>(m));
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            std::vector<std::size_t> inter;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) return false;
            return lists_mutually_avoiding(P, a, b);
        };
        std::size_t lo, hi;
        if (verified(std::min(target, max_m))) {
            lo = std::min(target, max_m);
            hi = std::min(max_m, grow_cap);
        } else {
            lo = 0;
            hi = std::min(target, max_m) - 1;
        }
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo + 1) / 2;
            if (verified(mid)) lo = mid;
            else hi = mid - 1;
        }
        if (lo > best_min) {
            std::vector<std::size_t> a(alist.begin(),
                                       alist.begin() + static_cast<std::ptrdiff_t>(lo));
            std::vector<std::size_t> b(blist.begin(),
                                       blist.begin() + static_cast<std::ptrdiff_t>(lo));
            best = AvoidingPair{IndexSet(a), IndexSet(b), true};
            best_min = lo;
            return true;
        }
        return false;
    };

    std::vector<Rational> keys(n);
    std::vector<Rational> dist(n);
    std::size_t since_improvement = 0;
    while (best_min < target && since_improvement < stall_window) {
        if (!next_direction(keys)) break;
        ++since_improvement;
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (keys[a] != keys[b]) return keys[a] < keys[b];
            return Point::lex_less(P[a], P[b]);
        });
        std::vector<std::size_t> suffix(order.rbegin(), order.rend());
        auto neighborhood = [&](std::size_t center) {
            for (std::size_t i = 0; i < n; ++i) {
                Rational s;
                for (std::size_t c = 0; c < P.dim(); ++c) {
                    Rational diff = P[i][c] - P[center][c];
                    s += diff * diff;
                }
                dist[i] = s;
            }
            std::vector<std::size_t> nb(n);
            std::iota(nb.begin(), nb.end(), 0);
            std::sort(nb.begin(), nb.end(), [&](std::size_t a, std::size_t b) {
                if (dist[a] != dist[b]) return dist[a] < dist[b];
                return a < b;
            });
            return nb;
        };
        bool improved = scan_lists(order, suffix);
        improved |= scan_lists(neighborhood(order.front()), neighborhood(order.back()));
        if (improved) since_improvement = 0;
    }
    return best;
}

} // namespace detail

AvoidingPair find_avoiding_heuristic(const PointSeq& P, std::size_t target,
                                     const SearchConfig& cfg) {
    if (P.dim() != 2) throw input_error("find_avoiding_heuristic requires dimension 2");
    const std::size_t n = P.size();
    if (n < 2) throw input_error("need at least two points for an avoiding pair");

    // Directions defined by point pairs, deduplicated up to scaling and
    // optionally strided down to the configured budget.
    const std::size_t total_pairs = n * (n - 1) / 2;
    const std::size_t cap = cfg.heuristic_direction_cap;
    const std::size_t stride =
        (cap == 0 || total_pairs <= cap) ? 1 : (total_pairs + cap - 1) / cap;
    std::size_t i = 0, j = 0, pair_index = 0;
    std::set<std::pair<std::string, std::string>> seen;
    auto next_direction = [&, n](std::vector<Rational>& keys) {
        while (true) {
            if (++j >= n) {
                if (++i + 1 >= n) return false;
                j = i + 1;
            }
            if (pair_index++ % stride != 0) continue;
            Rational ux = P[j][0] - P[i][0];
            Rational uy = P[j][1] - P[i][1];
            // canonical primitive direction for deduplication
            Integer gx = ux.numerator() * uy.denominator();
            Integer gy = uy.numerator() * ux.denominator();
            Integer g = gcd(gx, gy);
            if (sgn(g) != 0) { gx /= g; gy /= g; }
            if (sgn(gx) < 0 || (sgn(gx) == 0 && sgn(gy) < 0)) { gx = -gx; gy = -gy; }
            if (!seen.emplace(gx.get_str(), gy.get_str()).second) continue;
            for (std::size_t t = 0; t < n; ++t) keys[t] = ux * P[t][0] + uy * P[t][1];
            return true;
        }
    };
    return detail::heuristic_directional_scan(P, target, cfg, next_direction);
}

// ---------------------------------------------------------------------------
// Brute-force maximum crossing family (max clique in the crossing graph)

CrossingFamily max_crossing_family_bruteforce(const PointSeq& P, const SearchConfig& cfg) {
    if (P.dim() != 2) throw input_error("crossing family search requires dimension 2");
    const std::size_t n = P.size();
    if (n > cfg.crossing_cap) {
        std::ostringstream os;
        os << "brute-force crossing search refused: n = " << n << " exceeds cap "
           << cfg.crossing_cap;
        throw cap_exceeded(os.str());
    }
    std::vector<Simplex> segs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            segs.push_back(Simplex{{i, j}});
    const std::size_t s = segs.size();
    if (s == 0) return CrossingFamily{{}, true};

    const std::size_t words = (s + 63) / 64;
    std::vector<std::uint64_t> adj(s * words, 0);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            if (segments_properly_cross(P, segs[i], segs[j])) {
                adj[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
                adj[j * words + i / 64] |= std::uint64_t{1} << (i % 64);
            }

    std::vector<std::size_t> best, cur;
    std::vector<std::uint64_t> cand(words);
    for (std::size_t w = 0; w < words; ++w) cand[w] = ~std::uint64_t{0};
    if (s % 64) cand[words - 1] = (std::uint64_t{1} << (s % 64)) - 1;

    auto popcount = [&](const std::vector<std::uint64_t>& m) {
        std::size_t c = 0;
        for (auto w : m) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    };

    std::function<void(std::vector<std::uint64_t>)> dfs = [&](std::vector<std::uint64_t> candidates) {
        if (cur.size() > best.size()) best = cur;
        std::size_t remaining = popcount(candidates);
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = candidates[w];
            while (bits) {
                if (cur.size() + remaining <= best.size()) return;
                std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                candidates[w] &= ~(std::uint64_t{1} << (v % 64));
                --remaining;
                std::vector<std::uint64_t> next(words);
                for (std::size_t t = 0; t < words; ++t)
                    next[t] = candidates[t] & adj[v * words + t];
                cur.push_back(v);
                dfs(std::move(next));
                cur.pop_back();
            }
        }
    };
    dfs(cand);

    std::vector<Simplex> fam;
    fam.reserve(best.size());
    for (auto v : best) fam.push_back(segs[v]);
    std::sort(fam.begin(), fam.end());
    if (!is_crossing_family(P, fam))
        throw internal_error("brute-force crossing family failed re-verification");
    return CrossingFamily{std::move(fam), true};
}

} // namespace avoidkit
