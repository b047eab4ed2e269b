#pragma once

#include <optional>
#include <vector>

#include "avoidkit/avoidance.hpp"
#include "avoidkit/geometry.hpp"

namespace avoidkit {

/// Central projection of B through one apex of A onto a separating
/// hyperplane, with the chart (the dropped coordinate) recorded so order
/// types of different frames can be compared literally.
struct ProjectionFrame {
    std::size_t apex_index = 0;
    Hyperplane plane{{Rational(1)}, Rational(0)};
    PointSeq images{1, {}};       // dimension d-1, one image per point of B
    std::size_t dropped_coord = 0; // chart: coordinate removed from plane points
};

/// Max-slack strict separation: a hyperplane with A strictly on the
/// negative side and B strictly on the positive side, or std::nullopt
/// when the hulls intersect. Output is canonical (coprime integer normal,
/// first nonzero component positive).
std::optional<Hyperplane> try_separating_hyperplane(const std::vector<Point>& A,
                                                    const std::vector<Point>& B);

/// Same as try_separating_hyperplane on index sets; throws
/// verification_error "not separable" when the hulls intersect.
Hyperplane separating_hyperplane(const PointSeq& P, const IndexSet& A, const IndexSet& B);

/// One frame per apex a in A: the images of all b in B on h, expressed
/// in the (d-1)-chart that drops the largest-normal coordinate.
std::vector<ProjectionFrame> project_through(const PointSeq& P, const IndexSet& A,
                                             const IndexSet& B, const Hyperplane& h);

/// Best-effort verified avoiding pair search in R^d: sweeps normals of
/// hyperplanes spanned by point d-tuples, takes extreme blocks and
/// extreme neighborhoods, shrinking or growing around the target size.
AvoidingPair find_avoiding_heuristic_rd(const PointSeq& P, std::size_t target,
                                        const SearchConfig& cfg = {});

/// Exhaustive maximum min-size mutually avoiding pair in R^d (same
/// enumeration as the planar oracle; the cap defaults to 12 here).
AvoidingPair max_avoiding_bruteforce_rd(const PointSeq& P, const SearchConfig& cfg = {});

struct CrossingRdResult {
    CrossingFamily family;
    bool single_simplex_fallback = false;
};

/// Recursive crossing-family construction: base case d = 2 via the
/// avoiding pair; for d >= 3, separate a mutually avoiding pair, project
/// B through the apexes onto the separator, recurse in dimension d-1,
/// and lift each base simplex with its own apex. The returned family is
/// verified pairwise strongly crossing.
CrossingRdResult crossing_family_rd(const PointSeq& P, const SearchConfig& cfg = {});

} // namespace avoidkit
