#include "avoidkit/fractional.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/rng.hpp"

namespace avoidkit {

bool Wedge::contains_strict(const Point& x) const {
    for (const auto& c : constraints)
        if (orient({c.p, c.q, x}) != c.required) return false;
    return true;
}

SupportPair support_of(const PointSeq& P, const AvoidingPair& pair) {
    if (P.dim() != 2) throw input_error("support_of requires dimension 2");
    if (!pair.verified) throw input_error("support_of requires a verified pair");
    const std::size_t m = pair.a.size();
    if (pair.b.size() != m) throw input_error("support_of requires |A| = |B|");
    if (m < 5 || m % 4 != 1)
        throw input_error("support_of requires |A| = |B| congruent to 1 mod 4 (at least 5)");

    SupportPair s;
    s.source = pair;
    s.a_order = radial_order(P, pair.a, P[pair.b[0]], RotationSense::clockwise);
    s.b_order = radial_order(P, pair.b, P[pair.a[0]], RotationSense::counterclockwise);
    for (std::size_t pos = 0; pos < m; pos += 4) {
        s.a_prime.push_back(s.a_order[pos]);
        s.b_prime.push_back(s.b_order[pos]);
    }
    return s;
}

namespace {

/// One side's wedges: region i is bounded by the lines from the two
/// extreme support points of the opposite side through own_prime[i] and
/// own_prime[i+1], each oriented to contain the witness.
std::vector<Wedge> side_regions(const PointSeq& P,
                                const std::vector<std::size_t>& own_prime,
                                const std::vector<std::size_t>& own_order,
                                const std::vector<std::size_t>& opp_prime) {
    const std::size_t m = own_prime.size();
    std::vector<Wedge> regions;
    regions.reserve(m - 1);
    const Point& opp_first = P[opp_prime.front()];
    const Point& opp_last = P[opp_prime.back()];
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const Point& ai = P[own_prime[i]];
        const Point& aj = P[own_prime[i + 1]];
        // Witness: the radially intermediate original point between the
        // two support positions when the labeling provides one, else the
        // segment midpoint.
        Point witness = midpoint(ai, aj);
        const bool labeled = 4 * (i + 1) < own_order.size() &&
                             own_order[4 * i] == own_prime[i] &&
                             own_order[4 * (i + 1)] == own_prime[i + 1];
        if (labeled) witness = P[own_order[4 * i + 2]];
        Wedge w;
        for (const Point* apex : {&opp_first, &opp_last}) {
            for (const Point* corner : {&ai, &aj}) {
                Orientation required = orient({*apex, *corner, witness});
                if (required == Orientation::zero)
                    throw input_error("degenerate support: witness lies on a bounding line");
                w.constraints.push_back({*apex, *corner, required});
            }
        }
        regions.push_back(std::move(w));
    }
    return regions;
}

std::vector<std::size_t> region_counts(const PointSeq& P, const std::vector<Wedge>& regions) {
    std::vector<std::size_t> counts(regions.size(), 0);
    for (std::size_t r = 0; r < regions.size(); ++r)
        for (std::size_t i = 0; i < P.size(); ++i)
            if (regions[r].contains_strict(P[i])) ++counts[r];
    return counts;
}

} // namespace

RegionFamily build_regions(const PointSeq& P, const SupportPair& support) {
    if (support.size() < 2)
        throw input_error("build_regions requires a support of size at least 2");
    RegionFamily rf;
    rf.a_regions = side_regions(P, support.a_prime, support.a_order, support.b_prime);
    rf.b_regions = side_regions(P, support.b_prime, support.b_order, support.a_prime);
    rf.counts_a = region_counts(P, rf.a_regions);
    rf.counts_b = region_counts(P, rf.b_regions);
    return rf;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
select_dense_regions(const RegionFamily& rf, std::size_t k) {
    if (k == 0) throw input_error("select_dense_regions requires k >= 1");
    if (rf.a_regions.size() < k || rf.b_regions.size() < k) {
        std::ostringstream os;
        os << "select_dense_regions: need at least " << k << " regions per side, have "
           << rf.a_regions.size() << " / " << rf.b_regions.size();
        throw input_error(os.str());
    }
    auto top_k = [&](const std::vector<std::size_t>& counts) {
        std::vector<std::size_t> idx(counts.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (counts[a] != counts[b]) return counts[a] > counts[b];
            return a < b;
        });
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    };
    return {top_k(rf.counts_a), top_k(rf.counts_b)};
}

FractionalFamily fractional_family(const PointSeq& P, std::size_t k,
                                   const FractionalConfig& cfg, FractionalTrace* trace) {
    if (P.dim() != 2) throw input_error("fractional_family requires dimension 2");
    const std::size_t m = cfg.pair_size;
    if (m < 5 || m % 4 != 1)
        throw input_error("fractional pipeline needs a pair size congruent to 1 mod 4 (at least 5)");
    if ((m - 1) / 4 < k) {
        std::ostringstream os;
        os << "pair size m = " << m << " yields only " << (m - 1) / 4
           << " regions per side; need m >= " << 4 * k + 1 << " for k = " << k;
        throw input_error(os.str());
    }

    AvoidingPair pair = find_avoiding_heuristic(P, m, cfg.search);
    if (std::min(pair.a.size(), pair.b.size()) < m) {
        std::ostringstream os;
        os << "no mutually avoiding pair of size " << m << " found (best min size "
           << std::min(pair.a.size(), pair.b.size()) << "); try a smaller m";
        throw verification_error(os.str());
    }

    // Trim both sides to exactly m, keeping radially consecutive points.
    auto trim = [&](const IndexSet& set, const Point& pivot, RotationSense sense) {
        std::vector<std::size_t> order = radial_order(P, set, pivot, sense);
        order.resize(m);
        return IndexSet(order);
    };
    IndexSet a_trim = trim(pair.a, P[pair.b[0]], RotationSense::clockwise);
    IndexSet b_trim = trim(pair.b, P[a_trim[0]], RotationSense::counterclockwise);
    if (!mutually_avoiding(P, a_trim, b_trim))
        throw internal_error("trimmed avoiding pair failed re-verification");
    AvoidingPair trimmed{a_trim, b_trim, true};

    SupportPair support = support_of(P, trimmed);
    RegionFamily rf = build_regions(P, support);
    auto [a_sel, b_sel] = select_dense_regions(rf, k);
    if (trace) {
        trace->pair = trimmed;
        trace->support = support;
        trace->regions = rf;
        trace->selected_a = a_sel;
        trace->selected_b = b_sel;
    }

    auto collect = [&](const std::vector<Wedge>& regions, const std::vector<std::size_t>& sel) {
        std::vector<IndexSet> parts;
        for (auto r : sel) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < P.size(); ++i)
                if (regions[r].contains_strict(P[i])) members.push_back(i);
            if (members.empty()) {
                std::ostringstream os;
                os << "selected region " << r << " is empty; the input cannot support k = " << k;
                throw verification_error(os.str());
            }
            parts.push_back(IndexSet(std::move(members)));
        }
        return parts;
    };

    FractionalFamily fam;
    fam.k = k;
    fam.a_parts = collect(rf.a_regions, a_sel);
    fam.b_parts = collect(rf.b_regions, b_sel);

    std::vector<const IndexSet*> all;
    for (const auto& p : fam.a_parts) all.push_back(&p);
    for (const auto& p : fam.b_parts) all.push_back(&p);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (!all[i]->disjoint_from(*all[j]))
                throw internal_error("fractional parts are not pairwise disjoint");
    return fam;
}

namespace {

void check_family(const PointSeq& P, const FractionalFamily& fam) {
    if (fam.a_parts.size() != fam.k || fam.b_parts.size() != fam.k)
        throw input_error("fractional family must have k parts per side");
    for (const auto& part : fam.a_parts) {
        part.check_bounds(P.size());
        if (part.empty()) throw input_error("fractional family has an empty part");
    }
    for (const auto& part : fam.b_parts) {
        part.check_bounds(P.size());
        if (part.empty()) throw input_error("fractional family has an empty part");
    }
}

/// Number of transversal pairs, saturating at cap + 1.
std::size_t transversal_count(const FractionalFamily& fam, std::size_t cap) {
    std::size_t count = 1;
    auto mul = [&](std::size_t s) {
        if (count > cap) return;
        if (s != 0 && count > cap / s) count = cap + 1;
        else count *= s;
    };
    for (const auto& p : fam.a_parts) mul(p.size());
    for (const auto& p : fam.b_parts) mul(p.size());
    return std::min(count, cap + 1);
}

/// Mixed-radix enumeration over one choice per part; visit returns false
/// to stop early.
bool for_each_transversal(const FractionalFamily& fam,
                          const std::function<bool(const std::vector<std::size_t>&,
                                                   const std::vector<std::size_t>&)>& visit) {
    const std::size_t k = fam.k;
    std::vector<std::size_t> digit(2 * k, 0);
    std::vector<std::size_t> a(k), b(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = fam.a_parts[i][digit[i]];
            b[i] = fam.b_parts[i][digit[k + i]];
        }
        if (!visit(a, b)) return false;
        std::size_t pos = 2 * k;
        while (pos > 0) {
            --pos;
            std::size_t radix =
                pos < k ? fam.a_parts[pos].size() : fam.b_parts[pos - k].size();
            if (++digit[pos] < radix) break;
            digit[pos] = 0;
            if (pos == 0) return true;
        }
    }
}

} // namespace

bool verify_fractional(const PointSeq& P, const FractionalFamily& fam,
                       const VerifyConfig& cfg) {
    check_family(P, fam);
    const std::size_t count = transversal_count(fam, cfg.exhaustive_cap);
    bool all_ok = true;
    auto check = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        if (!mutually_avoiding(P, IndexSet(a), IndexSet(b))) {
            all_ok = false;
            return false;
        }
        return true;
    };
    if (cfg.force_exhaustive || count <= cfg.exhaustive_cap) {
        for_each_transversal(fam, check);
        return all_ok;
    }
    Rng rng(cfg.seed);
    std::vector<std::size_t> a(fam.k), b(fam.k);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        Rng sub = rng.split(t);
        for (std::size_t i = 0; i < fam.k; ++i) {
            a[i] = fam.a_parts[i][sub.below(fam.a_parts[i].size())];
            b[i] = fam.b_parts[i][sub.below(fam.b_parts[i].size())];
        }
        if (!check(a, b)) return false;
    }
    return true;
}

bool verify_crossing_variant(const PointSeq& P, const FractionalFamily& fam,
                             const VerifyConfig& cfg) {
    if (P.dim() != 2) throw input_error("verify_crossing_variant requires dimension 2");
    check_family(P, fam);
    const std::size_t k = fam.k;

    // Index pairs (i, j = k-1-i) with i < j; the middle index (odd k)
    // pairs a segment with itself and is skipped.
    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
    for (std::size_t i = 0; 2 * i + 1 < k; ++i) index_pairs.emplace_back(i, k - 1 - i);
    if (index_pairs.empty()) return true;

    auto cross_ok = [&](std::size_t a, std::size_t b, std::size_t a2, std::size_t b2) {
        return segments_properly_cross(P, Simplex{{std::min(a, b), std::max(a, b)}},
                                       Simplex{{std::min(a2, b2), std::max(a2, b2)}});
    };

    std::size_t quads = 0;
    bool small = true;
    for (auto [i, j] : index_pairs) {
        std::size_t q = fam.a_parts[i].size() * fam.b_parts[j].size();
        std::size_t r = fam.a_parts[j].size() * fam.b_parts[i].size();
        if (q != 0 && r > (cfg.exhaustive_cap + 1) / q) { small = false; break; }
        quads += q * r;
        if (quads > cfg.exhaustive_cap) { small = false; break; }
    }

    if (cfg.force_exhaustive || small) {
        for (auto [i, j] : index_pairs)
            for (auto a : fam.a_parts[i].indices())
                for (auto b : fam.b_parts[j].indices())
                    for (auto a2 : fam.a_parts[j].indices())
                        for (auto b2 : fam.b_parts[i].indices())
                            if (!cross_ok(a, b, a2, b2)) return false;
        return true;
    }

    Rng rng(cfg.seed);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        Rng sub = rng.split(t);
        for (auto [i, j] : index_pairs) {
            std::size_t a = fam.a_parts[i][sub.below(fam.a_parts[i].size())];
            std::size_t b = fam.b_parts[j][sub.below(fam.b_parts[j].size())];
            std::size_t a2 = fam.a_parts[j][sub.below(fam.a_parts[j].size())];
            std::size_t b2 = fam.b_parts[i][sub.below(fam.b_parts[i].size())];
            if (!cross_ok(a, b, a2, b2)) return false;
        }
    }
    return true;
}

} // namespace avoidkit
