#include "avoidkit/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace avoidkit {

Orientation orientation_from_sign(int s) {
    if (s > 0) return Orientation::positive;
    if (s < 0) return Orientation::negative;
    return Orientation::zero;
}

Point::Point(std::vector<Rational> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw input_error("point must have at least one coordinate");
    Integer w = 1;
    for (const auto& c : coords_) {
        Integer den = c.denominator();
        w = w / gcd(w, den) * den;
    }
    homo_.reserve(coords_.size() + 1);
    homo_.push_back(w);
    for (const auto& c : coords_)
        homo_.push_back(c.numerator() * (w / c.denominator()));
}

Point::Point(std::initializer_list<Rational> coords) : Point(std::vector<Rational>(coords)) {}

bool Point::lex_less(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.dim() && i < b.dim(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.dim() < b.dim();
}

std::string Point::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) os << ", ";
        os << coords_[i];
    }
    os << ")";
    return os.str();
}

Point operator+(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw input_error("dimension mismatch in point addition");
    std::vector<Rational> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
    return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw input_error("dimension mismatch in point subtraction");
    std::vector<Rational> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return Point(std::move(c));
}

Point scale(const Rational& t, const Point& p) {
    std::vector<Rational> c(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) c[i] = t * p[i];
    return Point(std::move(c));
}

Rational dot(const std::vector<Rational>& a, const Point& p) {
    if (a.size() != p.dim()) throw input_error("dimension mismatch in dot product");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * p[i];
    return s;
}

Point midpoint(const Point& a, const Point& b) {
    return scale(Rational(1, 2), a + b);
}

Point centroid(const std::vector<Point>& pts) {
    if (pts.empty()) throw input_error("centroid of empty set");
    Point s = pts[0];
    for (std::size_t i = 1; i < pts.size(); ++i) s = s + pts[i];
    return scale(Rational(1, static_cast<long>(pts.size())), s);
}

PointSeq::PointSeq(std::size_t dim, std::vector<Point> points)
    : dim_(dim), points_(std::move(points)) {
    if (dim_ == 0) throw input_error("point sequence dimension must be positive");
    for (const auto& p : points_)
        if (p.dim() != dim_)
            throw input_error("point dimension does not match sequence dimension");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (points_[i] == points_[j])
                throw input_error("points in a sequence must be pairwise distinct");
}

Hyperplane::Hyperplane(std::vector<Rational> n, Rational c)
    : normal(std::move(n)), offset(std::move(c)) {
    bool nonzero = false;
    for (const auto& v : normal) nonzero |= !v.is_zero();
    if (!nonzero) throw input_error("hyperplane normal must be nonzero");
}

int Hyperplane::side(const Point& p) const {
    return (dot(normal, p) - offset).sign();
}

Hyperplane Hyperplane::canonical() const {
    Integer l = offset.denominator();
    for (const auto& v : normal) {
        Integer den = v.denominator();
        l = l / gcd(l, den) * den;
    }
    std::vector<Integer> num(normal.size() + 1);
    for (std::size_t i = 0; i < normal.size(); ++i)
        num[i] = normal[i].numerator() * (l / normal[i].denominator());
    num[normal.size()] = offset.numerator() * (l / offset.denominator());
    Integer g = 0;
    for (const auto& v : num) g = gcd(g, v);
    int flip = 1;
    for (const auto& v : num)
        if (sgn(v) != 0) { flip = sgn(v) > 0 ? 1 : -1; break; }
    std::vector<Rational> n(normal.size());
    for (std::size_t i = 0; i < normal.size(); ++i) n[i] = Rational(Integer(flip * num[i] / g));
    return Hyperplane(std::move(n), Rational(Integer(flip * num[normal.size()] / g)));
}

namespace {

int sign_3x3(const std::vector<Integer>& a, const std::vector<Integer>& b,
             const std::vector<Integer>& c) {
    Integer det = a[0] * (b[1] * c[2] - c[1] * b[2])
                - b[0] * (a[1] * c[2] - c[1] * a[2])
                + c[0] * (a[1] * b[2] - b[1] * a[2]);
    return sgn(det);
}

/// Bareiss fraction-free elimination; returns the exact determinant.
Integer det_bareiss(std::vector<std::vector<Integer>>& m) {
    const std::size_t n = m.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && sgn(m[pivot][k]) == 0) ++pivot;
        if (pivot == n) return Integer(0);
        if (pivot != k) { std::swap(m[pivot], m[k]); sign = -sign; }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

} // namespace

int det_sign(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw input_error("determinant of a non-square matrix");
    if (n == 0) return 1;
    if (n == 1) return sgn(m[0][0]);
    if (n == 2) { Integer d = m[0][0] * m[1][1] - m[0][1] * m[1][0]; return sgn(d); }
    if (n == 3) {
        // column views
        std::vector<Integer> a{m[0][0], m[1][0], m[2][0]};
        std::vector<Integer> b{m[0][1], m[1][1], m[2][1]};
        std::vector<Integer> c{m[0][2], m[1][2], m[2][2]};
        return sign_3x3(a, b, c);
    }
    return sgn(det_bareiss(m));
}

Rational det(const std::vector<std::vector<Rational>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw input_error("determinant of a non-square matrix");
    if (n == 0) return Rational(1);
    // Clear each row's denominators; divide the integer determinant by
    // the product of the row scales at the end.
    std::vector<std::vector<Integer>> mi(n, std::vector<Integer>(n));
    Integer scale_product = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) {
            Integer den = m[i][j].denominator();
            l = l / gcd(l, den) * den;
        }
        for (std::size_t j = 0; j < n; ++j)
            mi[i][j] = m[i][j].numerator() * (l / m[i][j].denominator());
        scale_product *= l;
    }
    Integer d = det_bareiss(mi);
    return Rational(d, scale_product);
}

Orientation orient(const std::vector<Point>& tuple) {
    if (tuple.empty()) throw input_error("orient of empty tuple");
    const std::size_t d = tuple[0].dim();
    if (tuple.size() != d + 1)
        throw input_error("orient expects d+1 points in dimension d");
    for (const auto& p : tuple)
        if (p.dim() != d) throw input_error("orient tuple has mixed dimensions");
    // Column j is the homogeneous coordinate vector of point j; the
    // positive scale w_j per column leaves the sign unchanged.
    if (d == 2)
        return orientation_from_sign(sign_3x3(tuple[0].homo(), tuple[1].homo(), tuple[2].homo()));
    std::vector<std::vector<Integer>> m(d + 1, std::vector<Integer>(d + 1));
    for (std::size_t j = 0; j <= d; ++j)
        for (std::size_t i = 0; i <= d; ++i)
            m[i][j] = tuple[j].homo()[i];
    return orientation_from_sign(det_sign(std::move(m)));
}

bool general_position(const PointSeq& P) {
    const std::size_t d = P.dim();
    if (P.size() < d + 1) return true;
    bool ok = true;
    std::vector<Point> tuple;
    for_each_combination(P.size(), d + 1, [&](const std::vector<std::size_t>& idx) {
        tuple.clear();
        for (auto i : idx) tuple.push_back(P[i]);
        if (orient(tuple) == Orientation::zero) { ok = false; return false; }
        return true;
    });
    return ok;
}

Hyperplane hyperplane_through(const std::vector<Point>& pts) {
    if (pts.empty()) throw input_error("hyperplane through empty set");
    const std::size_t d = pts[0].dim();
    if (pts.size() != d)
        throw input_error("hyperplane in dimension d needs exactly d points");
    for (const auto& p : pts)
        if (p.dim() != d) throw input_error("hyperplane points have mixed dimensions");
    // Cofactor expansion of the orient determinant along the column of
    // the query point q: orient(pts..., q) = <normal, q> - offset, so
    // side tests agree with orient exactly.
    std::vector<Rational> normal(d);
    auto minor_det = [&](std::size_t skip_row) {
        std::vector<std::vector<Rational>> sub;
        sub.reserve(d);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == skip_row) continue;
            std::vector<Rational> row(d);
            for (std::size_t j = 0; j < d; ++j)
                row[j] = i == 0 ? Rational(1) : pts[j][i - 1];
            sub.push_back(std::move(row));
        }
        return det(sub);
    };
    int base_sign = (d % 2 == 0) ? 1 : -1; // sign of cofactor for the last column, row i=0
    Rational a0 = Rational(base_sign) * minor_det(0);
    bool nonzero = false;
    for (std::size_t i = 1; i <= d; ++i) {
        int s = ((i + d) % 2 == 0) ? 1 : -1;
        normal[i - 1] = Rational(s) * minor_det(i);
        nonzero |= !normal[i - 1].is_zero();
    }
    if (!nonzero)
        throw input_error("degenerate hyperplane: points are affinely dependent");
    return Hyperplane(std::move(normal), -a0);
}

SideCounts side_counts(const std::vector<Point>& h_points, const std::vector<Point>& Q) {
    Hyperplane h = hyperplane_through(h_points); // throws on degenerate h_points
    SideCounts counts;
    for (const auto& q : Q) {
        int s = h.side(q);
        if (s > 0) ++counts.num_positive;
        else if (s < 0) ++counts.num_negative;
        else ++counts.num_zero;
    }
    return counts;
}

std::vector<std::size_t> convex_hull_2d(const PointSeq& P) {
    if (P.dim() != 2) throw input_error("convex_hull_2d requires dimension 2");
    if (P.size() == 0) throw input_error("convex hull of empty sequence");
    const std::size_t n = P.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return Point::lex_less(P[a], P[b]);
    });
    if (n == 1) return idx;
    auto cross_sign = [&](std::size_t o, std::size_t a, std::size_t b) {
        return to_int(orient({P[o], P[a], P[b]}));
    };
    std::vector<std::size_t> hull;
    // lower chain then upper chain; strict turns drop collinear points
    for (std::size_t pass = 0; pass < 2; ++pass) {
        std::size_t start = hull.size();
        for (std::size_t t = 0; t < n; ++t) {
            std::size_t i = idx[pass == 0 ? t : n - 1 - t];
            while (hull.size() >= start + 2 &&
                   cross_sign(hull[hull.size() - 2], hull[hull.size() - 1], i) <= 0)
                hull.pop_back();
            hull.push_back(i);
        }
        hull.pop_back(); // endpoint repeats as the next chain's start
    }
    if (hull.empty()) hull.push_back(idx[0]); // n == 2 collapses to the two extremes
    return hull;
}

Point line_hyperplane_intersection(const Point& p, const Point& q, const Hyperplane& h) {
    if (p.dim() != q.dim() || p.dim() != h.dim())
        throw input_error("dimension mismatch in line/hyperplane intersection");
    if (p == q) throw input_error("line requires two distinct points");
    Rational vp = dot(h.normal, p) - h.offset;
    Rational vq = dot(h.normal, q) - h.offset;
    if (vp == vq) {
        if (vp.is_zero()) throw input_error("degenerate: line lies in the hyperplane");
        throw input_error("no intersection: line is parallel to the hyperplane");
    }
    // p + t (q - p) with t = vp / (vp - vq)
    Rational t = vp / (vp - vq);
    std::vector<Rational> c(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i)
        c[i] = p[i] + t * (q[i] - p[i]);
    return Point(std::move(c));
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k == 0) { visit(idx); return; }
    while (true) {
        if (!visit(idx)) return;
        // advance to the next combination in lexicographic order
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace avoidkit
