#include "helpers.hpp"

#include "avoidkit/errors.hpp"

namespace avoidkit::testing {

PointSeq two_clusters(std::size_t per_cluster, std::uint64_t seed, std::size_t dim,
                      long spread_den) {
    // two clusters of radius 1024/spread_den around centers ~1200 apart;
    // redrawn with derived sub-seeds until the union is in general position
    for (std::uint64_t attempt = 0; attempt < 200; ++attempt) {
        Rng rng = Rng(seed).split(attempt);
        std::vector<Point> pts;
        for (std::size_t cluster = 0; cluster < 2; ++cluster) {
            for (std::size_t i = 0; i < per_cluster; ++i) {
                std::vector<Rational> c(dim);
                for (std::size_t j = 0; j < dim; ++j) {
                    long offset = cluster == 0 ? 0 : (j == 0 ? 1000 : 700);
                    c[j] = Rational(offset) +
                           Rational(static_cast<long>(rng.below(2048)) - 1024, spread_den);
                }
                pts.push_back(Point(std::move(c)));
            }
        }
        try {
            PointSeq P(dim, std::move(pts));
            if (general_position(P)) return P;
        } catch (const input_error&) {
        }
    }
    throw internal_error("two_clusters: could not reach general position");
}

} // namespace avoidkit::testing
