#include "avoidkit/sametype.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/highdim.hpp"
#include "avoidkit/rng.hpp"

namespace avoidkit {

namespace {

/// Binomial table for ranking sorted k-subsets of {0..n-1}.
std::vector<std::vector<std::size_t>> binomials(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> c(n + 1, std::vector<std::size_t>(k + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (std::size_t j = 1; j <= k && j <= i; ++j)
            c[i][j] = c[i - 1][j - 1] + (i > j ? c[i - 1][j] : 0);
    }
    return c;
}

} // namespace

OrderType::OrderType(std::size_t dim, std::size_t n, std::vector<Orientation> signs)
    : dim_(dim), n_(n), signs_(std::move(signs)) {}

Orientation OrderType::sign_of(const std::vector<std::size_t>& tuple) const {
    if (tuple.size() != dim_ + 1)
        throw input_error("order type lookup needs a (d+1)-tuple");
    auto c = binomials(n_, dim_ + 1);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) rank += c[tuple[i]][i + 1];
    if (rank >= signs_.size()) throw input_error("order type lookup out of range");
    return signs_[rank];
}

OrderType order_type(const PointSeq& P) {
    const std::size_t d = P.dim();
    std::vector<Orientation> signs;
    std::vector<Point> tuple;
    for_each_combination(P.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
        tuple.clear();
        for (auto i : idx) tuple.push_back(P[i]);
        Orientation o = orient(tuple);
        if (o == Orientation::zero) {
            std::ostringstream os;
            os << "degenerate (d+1)-tuple (indices";
            for (auto i : idx) os << " " << i;
            os << "): points lie on a common hyperplane";
            throw input_error(os.str());
        }
        signs.push_back(o);
        return true;
    });
    return OrderType(d, P.size(), std::move(signs));
}

std::string to_string(DecisionMethod m) {
    switch (m) {
        case DecisionMethod::exhaustive: return "exhaustive";
        case DecisionMethod::separation: return "separation";
        case DecisionMethod::sampled: return "sampled";
    }
    return "?";
}

namespace {

void check_parts(const PointSeq& P, const PartitionParts& parts) {
    for (const auto& part : parts.parts) {
        part.check_bounds(P.size());
        if (part.empty()) throw input_error("partition parts must be nonempty");
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!parts.parts[i].disjoint_from(parts.parts[j]))
                throw input_error("partition parts must be pairwise disjoint");
}

/// Orientation-evaluation count for exhaustive checking, saturating.
std::size_t exhaustive_cost(const PartitionParts& parts, std::size_t d, std::size_t cap) {
    std::size_t total = 0;
    bool over = false;
    for_each_combination(parts.size(), d + 1, [&](const std::vector<std::size_t>& tup) {
        std::size_t prod = 1;
        for (auto t : tup) {
            std::size_t s = parts.parts[t].size();
            if (prod > cap / s) { over = true; return false; }
            prod *= s;
        }
        total += prod;
        if (total > cap) { over = true; return false; }
        return true;
    });
    return over ? cap + 1 : total;
}

/// All transversals of one (d+1)-tuple of parts share one orientation?
bool tuple_constant(const PointSeq& P, const PartitionParts& parts,
                    const std::vector<std::size_t>& tup, std::size_t* evals) {
    const std::size_t t = tup.size();
    std::vector<std::size_t> digit(t, 0);
    Orientation first = Orientation::zero;
    bool have_first = false, constant = true;
    std::vector<Point> pts;
    while (true) {
        pts.clear();
        for (std::size_t i = 0; i < t; ++i)
            pts.push_back(P[parts.parts[tup[i]][digit[i]]]);
        Orientation o = orient(pts);
        if (evals) ++*evals;
        if (!have_first) { first = o; have_first = true; }
        else if (o != first) { constant = false; break; }
        std::size_t pos = t;
        bool done = false;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < parts.parts[tup[pos]].size()) break;
            digit[pos] = 0;
            if (pos == 0) done = true;
        }
        if (done) break;
    }
    return constant;
}

/// Sufficient condition for one tuple: every bipartition of the tuple's
/// parts has strictly separable hulls.
bool tuple_separated(const PointSeq& P, const PartitionParts& parts,
                     const std::vector<std::size_t>& tup) {
    const std::size_t t = tup.size();
    // Iterate bipartitions via subsets containing the first element;
    // the all-ones mask leaves the right side empty and is skipped.
    for (std::size_t mask = 0; mask < (std::size_t{1} << (t - 1)); ++mask) {
        std::vector<Point> left, right;
        for (std::size_t i = 0; i < t; ++i) {
            bool in_left = i == 0 || (mask >> (i - 1)) & 1;
            for (auto idx : parts.parts[tup[i]].indices())
                (in_left ? left : right).push_back(P[idx]);
        }
        if (right.empty()) continue;
        if (!try_separating_hyperplane(left, right)) return false;
    }
    return true;
}

} // namespace

SameTypeReport same_type_transversals_report(const PointSeq& P, const PartitionParts& parts,
                                             const SameTypeConfig& cfg) {
    check_parts(P, parts);
    const std::size_t d = P.dim();
    SameTypeReport report;
    if (parts.size() < d + 1) {
        report.same_type = true;
        report.method = DecisionMethod::exhaustive;
        return report;
    }

    const std::size_t cost = exhaustive_cost(parts, d, cfg.exhaustive_cap);
    if (cfg.force_exhaustive || cost <= cfg.exhaustive_cap) {
        bool ok = true;
        for_each_combination(parts.size(), d + 1, [&](const std::vector<std::size_t>& tup) {
            if (!tuple_constant(P, parts, tup, &report.evaluations)) { ok = false; return false; }
            return true;
        });
        report.same_type = ok;
        report.method = DecisionMethod::exhaustive;
        return report;
    }

    // Separation proves same-type; a failed separation only demotes the
    // decision to sampling, which can still falsify.
    bool separated = true;
    for_each_combination(parts.size(), d + 1, [&](const std::vector<std::size_t>& tup) {
        if (!tuple_separated(P, parts, tup)) { separated = false; return false; }
        return true;
    });
    if (separated) {
        report.same_type = true;
        report.method = DecisionMethod::separation;
        return report;
    }

    Rng rng(cfg.seed);
    std::vector<std::size_t> part_tuple(d + 1);
    std::vector<Point> pts;
    const std::size_t k = parts.size();
    std::vector<std::vector<std::size_t>> tuples;
    for_each_combination(k, d + 1, [&](const std::vector<std::size_t>& tup) {
        tuples.push_back(tup);
        return true;
    });
    std::vector<Orientation> reference(tuples.size(), Orientation::zero);
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
        pts.clear();
        for (auto t : tuples[ti]) pts.push_back(P[parts.parts[t][0]]);
        reference[ti] = orient(pts);
        ++report.evaluations;
    }
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        Rng sub = rng.split(trial);
        std::size_t ti = sub.below(tuples.size());
        pts.clear();
        for (auto t : tuples[ti]) {
            const IndexSet& part = parts.parts[t];
            pts.push_back(P[part[sub.below(part.size())]]);
        }
        ++report.evaluations;
        if (orient(pts) != reference[ti]) {
            report.same_type = false;
            report.method = DecisionMethod::sampled;
            return report;
        }
    }
    report.same_type = true;
    report.method = DecisionMethod::sampled;
    return report;
}

bool same_type_transversals(const PointSeq& P, const PartitionParts& parts,
                            const SameTypeConfig& cfg) {
    return same_type_transversals_report(P, parts, cfg).same_type;
}

std::size_t nearest_to_centroid(const PointSeq& P, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw input_error("nearest_to_centroid of empty set");
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (auto i : indices) pts.push_back(P[i]);
    Point c = centroid(pts);
    std::size_t best = indices[0];
    Rational best_dist;
    bool have = false;
    for (auto i : indices) {
        Rational dist;
        for (std::size_t j = 0; j < P.dim(); ++j) {
            Rational diff = P[i][j] - c[j];
            dist += diff * diff;
        }
        if (!have || dist < best_dist || (dist == best_dist && i < best)) {
            best = i;
            best_dist = dist;
            have = true;
        }
    }
    return best;
}

PartitionResult same_type_partition(const PointSeq& P, std::size_t k,
                                    const SameTypeConfig& cfg) {
    const std::size_t n = P.size();
    const std::size_t d = P.dim();
    if (k == 0) throw input_error("partition requires k >= 1");
    if (n < k * (d + 1)) {
        std::ostringstream os;
        os << "partition into k = " << k << " parts needs at least " << k * (d + 1)
           << " points in dimension " << d << ", have " << n;
        throw input_error(os.str());
    }

    // Order by increasing first coordinate (full lexicographic compare
    // breaks ties) and cut into k equitable contiguous blocks.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return Point::lex_less(P[a], P[b]);
    });
    std::vector<std::vector<std::size_t>> blocks(k);
    const std::size_t base = n / k, extra = n % k;
    std::size_t at = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t len = base + (i < extra ? 1 : 0);
        blocks[i].assign(order.begin() + static_cast<std::ptrdiff_t>(at),
                         order.begin() + static_cast<std::ptrdiff_t>(at + len));
        at += len;
    }

    PartitionResult result;
    std::vector<std::vector<std::size_t>> current = blocks;
    while (true) {
        PartitionParts parts;
        for (const auto& blk : current) parts.parts.push_back(IndexSet(blk));
        SameTypeReport rep = same_type_transversals_report(P, parts, cfg);
        bool all_singletons = true;
        for (const auto& blk : current) all_singletons &= blk.size() == 1;
        if (rep.same_type) {
            result.parts = std::move(parts);
            result.method = rep.method;
            result.singleton_fallback = all_singletons && result.shrink_rounds > 0;
            std::size_t min_size = current[0].size();
            for (const auto& blk : current) min_size = std::min(min_size, blk.size());
            result.epsilon_hat = Rational(static_cast<long>(min_size), static_cast<long>(n));
            return result;
        }
        if (all_singletons)
            throw internal_error("singleton parts must have same-type transversals");
        // Shrink every block toward its centroid, keeping the central
        // three quarters (at least one point, strictly decreasing).
        ++result.shrink_rounds;
        for (auto& blk : current) {
            if (blk.size() == 1) continue;
            std::size_t next = std::max<std::size_t>(1, (blk.size() * 3) / 4);
            if (next == blk.size()) --next;
            std::vector<Point> pts;
            pts.reserve(blk.size());
            for (auto i : blk) pts.push_back(P[i]);
            Point c = centroid(pts);
            std::vector<std::pair<Rational, std::size_t>> ranked;
            ranked.reserve(blk.size());
            for (auto i : blk) {
                Rational dist;
                for (std::size_t j = 0; j < d; ++j) {
                    Rational diff = P[i][j] - c[j];
                    dist += diff * diff;
                }
                ranked.emplace_back(std::move(dist), i);
            }
            std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return a.second < b.second;
            });
            blk.clear();
            for (std::size_t i = 0; i < next; ++i) blk.push_back(ranked[i].second);
            std::sort(blk.begin(), blk.end());
        }
    }
}

FractionalRdResult fractional_rd(const PointSeq& P, std::size_t k,
                                 const FractionalRdConfig& cfg) {
    const std::size_t d = P.dim();
    if (d < 2) throw input_error("fractional_rd requires dimension >= 2");
    if (k == 0) throw input_error("fractional_rd requires k >= 1");
    const std::size_t kprime =
        cfg.parts_override != 0 ? cfg.parts_override
                                : std::max(2 * k * k, (d + 2) * k);
    if (kprime < 2 * k)
        throw input_error("fractional_rd needs at least 2k parts");

    FractionalRdResult out;
    out.partition = same_type_partition(P, kprime, cfg.sametype);

    for (const auto& part : out.partition.parts.parts)
        out.representatives.push_back(nearest_to_centroid(P, part.indices()));

    std::vector<Point> rep_points;
    rep_points.reserve(kprime);
    for (auto i : out.representatives) rep_points.push_back(P[i]);
    PointSeq reps(d, std::move(rep_points));

    const std::size_t cap = d == 2 ? cfg.search.avoiding_cap : cfg.search.avoiding_cap_rd;
    AvoidingPair rep_pair;
    if (reps.size() <= cap) {
        rep_pair = d == 2 ? max_avoiding_bruteforce(reps, cfg.search)
                          : max_avoiding_bruteforce_rd(reps, cfg.search);
    } else {
        rep_pair = d == 2 ? find_avoiding_heuristic(reps, k, cfg.search)
                          : find_avoiding_heuristic_rd(reps, k, cfg.search);
    }
    if (std::min(rep_pair.a.size(), rep_pair.b.size()) < k) {
        std::ostringstream os;
        os << "representatives admit no mutually avoiding pair of size " << k
           << " (best " << std::min(rep_pair.a.size(), rep_pair.b.size())
           << "); try a larger part count k'";
        throw verification_error(os.str());
    }
    out.rep_pair = rep_pair;

    auto take_parts = [&](const IndexSet& rep_set) {
        std::vector<IndexSet> parts;
        for (std::size_t i = 0; i < k; ++i)
            parts.push_back(out.partition.parts.parts[rep_set[i]]);
        return parts;
    };
    out.family.k = k;
    out.family.a_parts = take_parts(rep_pair.a);
    out.family.b_parts = take_parts(rep_pair.b);

    if (!verify_fractional(P, out.family, cfg.verify))
        throw verification_error(
            "fractional_rd output failed transversal mutual-avoidance verification");
    return out;
}

} // namespace avoidkit
