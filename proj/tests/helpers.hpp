#pragma once

#include <string>
#include <vector>

#include "avoidkit/geometry.hpp"
#include "avoidkit/rng.hpp"

namespace avoidkit::testing {

/// Independent determinant oracle: plain Laplace cofactor expansion
/// over rationals. Deliberately naive; the library uses fraction-free
/// elimination, so agreement between the two is a real cross-check.
inline Rational cofactor_det(const std::vector<std::vector<Rational>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Rational(1);
    if (n == 1) return m[0][0];
    Rational total;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Rational>> sub(n - 1, std::vector<Rational>(n - 1));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub[r - 1][cc++] = m[r][c];
            }
        }
        Rational term = m[0][j] * cofactor_det(sub);
        if (j % 2 == 0) total += term;
        else total -= term;
    }
    return total;
}

/// The orientation determinant exactly as defined: first row all ones,
/// column j the coordinates of point j.
inline Rational orient_det_oracle(const std::vector<Point>& tuple) {
    const std::size_t d = tuple[0].dim();
    std::vector<std::vector<Rational>> m(d + 1, std::vector<Rational>(d + 1));
    for (std::size_t j = 0; j <= d; ++j) {
        m[0][j] = Rational(1);
        for (std::size_t i = 1; i <= d; ++i) m[i][j] = tuple[j][i - 1];
    }
    return cofactor_det(m);
}

inline Point pt(std::initializer_list<long> coords) {
    std::vector<Rational> c;
    for (long v : coords) c.push_back(Rational(v));
    return Point(std::move(c));
}

inline Point ptq(std::initializer_list<const char*> coords) {
    std::vector<Rational> c;
    for (const char* v : coords) c.push_back(Rational::parse(v));
    return Point(std::move(c));
}

inline PointSeq seq2(std::initializer_list<Point> pts) {
    return PointSeq(2, std::vector<Point>(pts));
}

inline PointSeq seq3(std::initializer_list<Point> pts) {
    return PointSeq(3, std::vector<Point>(pts));
}

inline Point random_point(Rng& rng, std::size_t d, long denom = 64, long span = 512) {
    std::vector<Rational> c(d);
    for (auto& v : c)
        v = Rational(static_cast<long>(rng.below(static_cast<std::uint64_t>(span * denom))) -
                         span * denom / 2,
                     denom);
    return Point(std::move(c));
}

/// Random invertible rational affine map x -> M x + t (retries until
/// det(M) != 0).
struct AffineMap {
    std::vector<std::vector<Rational>> linear;
    std::vector<Rational> shift;

    Point apply(const Point& p) const {
        const std::size_t d = shift.size();
        std::vector<Rational> out(d);
        for (std::size_t i = 0; i < d; ++i) {
            Rational s = shift[i];
            for (std::size_t j = 0; j < d; ++j) s += linear[i][j] * p[j];
            out[i] = s;
        }
        return Point(std::move(out));
    }

    Rational det() const { return cofactor_det(linear); }
};

inline AffineMap random_affine(Rng& rng, std::size_t d, bool orientation_preserving = false) {
    while (true) {
        AffineMap map;
        map.linear.assign(d, std::vector<Rational>(d));
        map.shift.assign(d, Rational(0));
        for (auto& row : map.linear)
            for (auto& v : row)
                v = Rational(static_cast<long>(rng.below(41)) - 20,
                             1 + static_cast<long>(rng.below(4)));
        for (auto& v : map.shift)
            v = Rational(static_cast<long>(rng.below(201)) - 100, 1 + static_cast<long>(rng.below(8)));
        Rational dt = map.det();
        if (dt.is_zero()) continue;
        if (orientation_preserving && dt.sign() < 0) continue;
        return map;
    }
}

inline PointSeq apply_map(const AffineMap& map, const PointSeq& P) {
    std::vector<Point> pts;
    pts.reserve(P.size());
    for (const auto& p : P.points()) pts.push_back(map.apply(p));
    return PointSeq(P.dim(), std::move(pts));
}

/// Two tight clusters far apart along a skew axis; in general position
/// for the seeds the tests use (asserted by callers). Larger spread_den
/// makes the clusters tighter.
PointSeq two_clusters(std::size_t per_cluster, std::uint64_t seed, std::size_t dim = 2,
                      long spread_den = 512);

/// Four points making one obvious mutually avoiding 2+2 pair.
inline PointSeq two_far_pairs_helper() {
    return seq2({pt({0, 0}), pt({1, 0}), pt({0, 100}), pt({1, 101})});
}

} // namespace avoidkit::testing
