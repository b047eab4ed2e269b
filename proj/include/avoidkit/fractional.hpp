#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "avoidkit/avoidance.hpp"
#include "avoidkit/geometry.hpp"

namespace avoidkit {

/// The sub-pair of a mutually avoiding pair keeping every fourth point
/// of the radial labelings (positions 1, 5, 9, ... one-based). The full
/// labelings are kept so the region builder can pick interior witness
/// points.
struct SupportPair {
    std::vector<std::size_t> a_prime;
    std::vector<std::size_t> b_prime;
    AvoidingPair source;
    std::vector<std::size_t> a_order; // radial clockwise labeling of A
    std::vector<std::size_t> b_order; // radial counterclockwise labeling of B

    std::size_t size() const { return a_prime.size(); }
};

/// Intersection of oriented half-planes; each constraint is an oriented
/// line through two points together with the orientation sign a member
/// point must have. Membership is strict, so boundary points never count.
struct Wedge {
    struct Constraint {
        Point p;
        Point q;
        Orientation required;
    };
    std::vector<Constraint> constraints;

    bool contains_strict(const Point& x) const;
};

struct RegionFamily {
    std::vector<Wedge> a_regions;
    std::vector<Wedge> b_regions;
    std::vector<std::size_t> counts_a;
    std::vector<std::size_t> counts_b;
};

struct FractionalFamily {
    std::vector<IndexSet> a_parts;
    std::vector<IndexSet> b_parts;
    std::size_t k = 0;
};

struct VerifyConfig {
    std::size_t trials = 1000;
    std::size_t exhaustive_cap = 200000;
    std::uint64_t seed = 0;
    bool force_exhaustive = false;
};

/// Labels A in radial clockwise order around the first point of B and B
/// counterclockwise around the first point of A, then keeps positions
/// congruent to 1 mod 4. Requires |A| = |B| = 1 (mod 4).
SupportPair support_of(const PointSeq& P, const AvoidingPair& pair);

/// The wedge regions spanned by consecutive support points: region i on
/// the A side is bounded by the four lines from the first and last
/// support points of B' through a'_i and a'_{i+1}, oriented toward the
/// radially intermediate witness. Also counts the points of P strictly
/// inside each region.
RegionFamily build_regions(const PointSeq& P, const SupportPair& support);

/// The k regions with the largest counts on each side, ties broken by
/// smaller region index; returned in ascending index order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
select_dense_regions(const RegionFamily& rf, std::size_t k);

struct FractionalConfig {
    std::size_t pair_size = 9; // m: avoiding-pair size to search for (1 mod 4)
    SearchConfig search;
};

/// Intermediate pipeline state, for reports and diagnostics.
struct FractionalTrace {
    AvoidingPair pair;
    SupportPair support;
    RegionFamily regions;
    std::vector<std::size_t> selected_a;
    std::vector<std::size_t> selected_b;
};

/// Full planar pipeline: find a verified avoiding pair of size m, take
/// its support, build the wedge regions, select the k densest per side,
/// and return the points strictly inside them as the 2k parts. Errors
/// when the pair cannot be found or any selected part is empty.
FractionalFamily fractional_family(const PointSeq& P, std::size_t k,
                                   const FractionalConfig& cfg = {},
                                   FractionalTrace* trace = nullptr);

/// True iff every checked transversal pair (one point per part) is
/// mutually avoiding: exhaustive when the number of transversal pairs is
/// at most the cap, otherwise over seeded sampled transversals.
bool verify_fractional(const PointSeq& P, const FractionalFamily& fam,
                       const VerifyConfig& cfg = {});

/// True iff every checked segment joining A_i to B_{k+1-i} properly
/// crosses every checked segment joining A_{k+1-i} to B_i (indices
/// one-based in that formula; the self-paired middle index is skipped).
bool verify_crossing_variant(const PointSeq& P, const FractionalFamily& fam,
                             const VerifyConfig& cfg = {});

} // namespace avoidkit
