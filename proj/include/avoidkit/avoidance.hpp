#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "avoidkit/geometry.hpp"

namespace avoidkit {

/// Sorted set of indices into a PointSeq.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<std::size_t> indices);

    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }
    const std::vector<std::size_t>& indices() const { return indices_; }
    bool contains(std::size_t i) const;
    bool disjoint_from(const IndexSet& other) const;
    void check_bounds(std::size_t n) const;

    bool operator==(const IndexSet&) const = default;
    bool operator<(const IndexSet& other) const { return indices_ < other.indices_; }

private:
    std::vector<std::size_t> indices_;
};

struct AvoidingPair {
    IndexSet a;
    IndexSet b;
    bool verified = false;
};

/// A (d-1)-simplex given by the indices of its d vertices. In the plane
/// this is a segment.
struct Simplex {
    std::vector<std::size_t> vertex_indices;

    bool operator==(const Simplex&) const = default;
    bool operator<(const Simplex& other) const { return vertex_indices < other.vertex_indices; }
    bool shares_vertex(const Simplex& other) const;
};

struct CrossingFamily {
    std::vector<Simplex> simplices;
    bool verified = false;

    std::size_t size() const { return simplices.size(); }
};

enum class RotationSense { clockwise, counterclockwise };

struct SearchConfig {
    std::size_t avoiding_cap = 14;    // brute-force cap for pair enumeration
    std::size_t avoiding_cap_rd = 12; // brute-force cap in dimension >= 3
    std::size_t crossing_cap = 12;    // brute-force cap for crossing families
    std::size_t heuristic_direction_cap = 0; // 0 = all point-pair directions
    std::size_t heuristic_grow_cap = 24;     // stop growing candidates past this size
    std::size_t heuristic_stall_window = 0;  // directions without improvement, 0 = max(256, n)
};

namespace detail {

/// Directional scan shared by the planar and R^d heuristics: for each
/// direction's projection keys, tries prefix/suffix blocks and extreme
/// neighborhoods, binary-searching the largest verified block size.
/// next_direction fills the key vector for one direction and returns
/// false when the supply is exhausted.
AvoidingPair heuristic_directional_scan(
    const PointSeq& P, std::size_t target, const SearchConfig& cfg,
    const std::function<bool(std::vector<Rational>&)>& next_direction);

} // namespace detail

/// True iff no hyperplane spanned by d points of A meets conv(B).
/// With fewer than d points in A no hyperplane is generated and the
/// answer is true by definition.
bool avoids(const PointSeq& P, const IndexSet& A, const IndexSet& B);

/// avoids(A, B) and avoids(B, A); throws input_error when A and B overlap.
bool mutually_avoiding(const PointSeq& P, const IndexSet& A, const IndexSet& B);

/// Indices of A sorted by angle around pivot in the given sense,
/// linearized to start at the first point hit by a ray sweep from the
/// direction pivot - centroid(A).
std::vector<std::size_t> radial_order(const PointSeq& P, const IndexSet& A,
                                      const Point& pivot, RotationSense sense);

/// Pairs the i-th point of A (radial clockwise around a point of B)
/// with the i-th point of B (radial counterclockwise around a point of
/// A); falls back to the mirrored pairings when the canonical one fails
/// verification. The returned family is verified pairwise crossing.
CrossingFamily crossing_family_from_avoiding(const PointSeq& P, const AvoidingPair& pair);

/// Exact relative-interior intersection of two (d-1)-simplices: the
/// maximum-slack feasibility program over the common point's barycentric
/// coordinates has a strictly positive optimum.
bool relative_interiors_intersect(const PointSeq& P, const Simplex& s1, const Simplex& s2);

/// True iff the vertex sets are disjoint and the relative interiors of
/// the two simplices intersect.
bool strongly_cross(const PointSeq& P, const Simplex& s1, const Simplex& s2);

/// Orientation-based proper-crossing test for planar segments; agrees
/// with strongly_cross in dimension 2 and is cheap enough for bulk
/// verification loops.
bool segments_properly_cross(const PointSeq& P, const Simplex& s1, const Simplex& s2);

bool is_crossing_family(const PointSeq& P, const std::vector<Simplex>& fam);

/// Exhaustive maximum of min(|A|, |B|) over disjoint mutually avoiding
/// pairs, lexicographically smallest optimum. Works in any dimension.
AvoidingPair max_avoiding_bruteforce(const PointSeq& P, const SearchConfig& cfg = {});

/// Planar best-effort search for a verified pair with min size >=
/// target: sweeps the point-pair directions, tries extreme blocks and
/// extreme neighborhoods per direction, shrinking or growing the block
/// size around the target. Always returns a verified pair.
AvoidingPair find_avoiding_heuristic(const PointSeq& P, std::size_t target,
                                     const SearchConfig& cfg = {});

/// Exhaustive maximum crossing family over planar segments (max clique
/// in the crossing graph), lexicographically smallest optimum.
CrossingFamily max_crossing_family_bruteforce(const PointSeq& P, const SearchConfig& cfg = {});

/// Precomputed side masks: for every d-subset of points, the bitmask of
/// points strictly on each side of its spanned hyperplane. Backs the
/// brute-force searches.
class SideMaskTable {
public:
    SideMaskTable(const PointSeq& P);

    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }

    /// True iff every point of B lies strictly on one common side of the
    /// hyperplane spanned by the given d-subset.
    bool one_side(const std::vector<std::size_t>& h, const std::vector<std::size_t>& B) const;

    /// avoids() restricted to index vectors, using the mask table.
    bool avoids_masked(const std::vector<std::size_t>& A, const std::vector<std::size_t>& B) const;

private:
    std::size_t rank_of(const std::vector<std::size_t>& h) const;

    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::size_t words_ = 0;
    std::vector<std::vector<std::size_t>> ranks_; // binomial rank helpers
    std::vector<std::uint64_t> pos_, neg_;
};

} // namespace avoidkit
