#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "avoidkit/rational.hpp"

namespace avoidkit {

/// Sign of an oriented (d+1)-tuple: +1, -1, or 0 (degenerate).
enum class Orientation : int { negative = -1, zero = 0, positive = 1 };

inline int to_int(Orientation o) { return static_cast<int>(o); }
Orientation orientation_from_sign(int s);

/// A point in R^d with exact rational coordinates. Immutable after
/// construction. Also caches integer homogeneous coordinates
/// (w, x_1*w, ..., x_d*w) with w > 0, which the predicates use so that
/// orientation tests reduce to integer determinants.
class Point {
public:
    explicit Point(std::vector<Rational> coords);
    Point(std::initializer_list<Rational> coords);

    std::size_t dim() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Rational>& coords() const { return coords_; }

    /// homo()[0] = w > 0, homo()[i] = coords[i-1] * w, all integers.
    const std::vector<Integer>& homo() const { return homo_; }

    bool operator==(const Point& other) const { return coords_ == other.coords_; }
    bool operator!=(const Point& other) const { return !(*this == other); }

    /// Lexicographic coordinate comparison.
    static bool lex_less(const Point& a, const Point& b);

    std::string str() const;

private:
    std::vector<Rational> coords_;
    std::vector<Integer> homo_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point scale(const Rational& t, const Point& p);
Rational dot(const std::vector<Rational>& a, const Point& p);
Point midpoint(const Point& a, const Point& b);
Point centroid(const std::vector<Point>& pts);

/// Ordered finite point sequence in R^d. All points share the dimension
/// and are pairwise distinct.
class PointSeq {
public:
    PointSeq(std::size_t dim, std::vector<Point> points);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }

    bool operator==(const PointSeq& other) const {
        return dim_ == other.dim_ && points_ == other.points_;
    }

private:
    std::size_t dim_;
    std::vector<Point> points_;
};

/// Oriented hyperplane {x : <normal, x> = offset}; normal is nonzero.
struct Hyperplane {
    std::vector<Rational> normal;
    Rational offset;

    Hyperplane(std::vector<Rational> n, Rational c);

    std::size_t dim() const { return normal.size(); }
    /// Sign of <normal, p> - offset.
    int side(const Point& p) const;
    /// Rescale so normal and offset are coprime integers and the first
    /// nonzero normal component is positive.
    Hyperplane canonical() const;
};

/// Sign of the determinant of a square integer matrix (fraction-free
/// Bareiss elimination; the matrix is consumed).
int det_sign(std::vector<std::vector<Integer>> m);

/// Exact determinant of a square rational matrix (Bareiss after
/// clearing row denominators).
Rational det(const std::vector<std::vector<Rational>>& m);

/// Orientation of a (d+1)-tuple of points in R^d: the sign of the
/// (d+1)x(d+1) determinant whose first row is all ones and whose j-th
/// column carries the coordinates of the j-th point below it.
Orientation orient(const std::vector<Point>& tuple);

/// True iff no d+1 members lie on a common hyperplane.
bool general_position(const PointSeq& P);

struct SideCounts {
    std::size_t num_positive = 0;
    std::size_t num_negative = 0;
    std::size_t num_zero = 0;
    bool operator==(const SideCounts&) const = default;
};

/// Classifies every q in Q against the hyperplane spanned by h_points
/// (d affinely independent points): counts of orient(h_points + q).
SideCounts side_counts(const std::vector<Point>& h_points, const std::vector<Point>& Q);

/// Indices of the convex hull vertices of a planar point sequence, in
/// counterclockwise order, starting at the lexicographically smallest
/// vertex. Collinear non-extreme points are excluded.
std::vector<std::size_t> convex_hull_2d(const PointSeq& P);

/// Exact intersection of line(p, q) with hyperplane h. Throws
/// input_error "no intersection" when the line is parallel to h and
/// "degenerate" when it lies inside h.
Point line_hyperplane_intersection(const Point& p, const Point& q, const Hyperplane& h);

/// The hyperplane through d affinely independent points (normal via
/// cofactor expansion). Throws input_error if the points are affinely
/// dependent.
Hyperplane hyperplane_through(const std::vector<Point>& pts);

/// Visits every k-subset of {0,...,n-1} in lexicographic order.
void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit);

} // namespace avoidkit
