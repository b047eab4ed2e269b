#include <doctest.h>

#include <algorithm>

#include "avoidkit/avoidance.hpp"
#include "avoidkit/errors.hpp"
#include "avoidkit/rng.hpp"
#include "helpers.hpp"

using namespace avoidkit;
using namespace avoidkit::testing;

namespace {

PointSeq unit_square() {
    return seq2({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
}

PointSeq two_far_pairs() {
    // A = {0,1} on the x axis, B = {2,3} far above
    return seq2({pt({0, 0}), pt({1, 0}), pt({0, 100}), pt({1, 101})});
}

} // namespace

TEST_CASE("avoids on the two-cluster example") {
    PointSeq P = two_far_pairs();
    CHECK(avoids(P, IndexSet({0, 1}), IndexSet({2, 3})));
    CHECK(avoids(P, IndexSet({2, 3}), IndexSet({0, 1})));
    CHECK(mutually_avoiding(P, IndexSet({0, 1}), IndexSet({2, 3})));
}

TEST_CASE("square diagonals are not avoiding") {
    PointSeq P = unit_square();
    // A = one diagonal, B = the other: the diagonals cross
    CHECK_FALSE(avoids(P, IndexSet({0, 3}), IndexSet({1, 2})));
    CHECK_FALSE(mutually_avoiding(P, IndexSet({0, 3}), IndexSet({1, 2})));
}

TEST_CASE("tiny sets avoid vacuously") {
    PointSeq P = unit_square();
    CHECK(avoids(P, IndexSet({0}), IndexSet({3})));
    CHECK(mutually_avoiding(P, IndexSet({0}), IndexSet({3})));
}

TEST_CASE("avoids input validation") {
    PointSeq P = unit_square();
    CHECK_THROWS_AS(avoids(P, IndexSet({0, 1}), IndexSet{}), input_error);
    CHECK_THROWS_AS(mutually_avoiding(P, IndexSet({0, 1}), IndexSet({1, 2})), input_error);
    CHECK_THROWS_AS(avoids(P, IndexSet({0, 9}), IndexSet({1})), input_error);
}

TEST_CASE("mutual avoidance is symmetric and monotone under subsets") {
    Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        PointSeq P = two_clusters(5, 1000 + trial);
        IndexSet A({0, 1, 2, 3, 4}), B({5, 6, 7, 8, 9});
        if (!mutually_avoiding(P, A, B)) continue;
        CHECK(mutually_avoiding(P, B, A));
        // random subsets keep the property
        for (int sub = 0; sub < 5; ++sub) {
            std::vector<std::size_t> a_sub, b_sub;
            for (auto i : A.indices())
                if (rng.below(2)) a_sub.push_back(i);
            for (auto i : B.indices())
                if (rng.below(2)) b_sub.push_back(i);
            if (a_sub.empty() || b_sub.empty()) continue;
            CHECK(mutually_avoiding(P, IndexSet(a_sub), IndexSet(b_sub)));
        }
    }
}

TEST_CASE("radial order around an outside pivot") {
    PointSeq P = seq2({pt({1, 0}), pt({0, 1}), pt({-1, 0}), pt({0, -5})});
    IndexSet A({0, 1, 2});
    std::vector<std::size_t> ccw = radial_order(P, A, P[3], RotationSense::counterclockwise);
    CHECK(ccw == std::vector<std::size_t>{0, 1, 2});
    std::vector<std::size_t> cw = radial_order(P, A, P[3], RotationSense::clockwise);
    CHECK(cw == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("radial order edge cases") {
    PointSeq P = seq2({pt({3, 4}), pt({0, 0})});
    CHECK(radial_order(P, IndexSet({0}), P[1], RotationSense::clockwise) ==
          std::vector<std::size_t>{0});
    CHECK_THROWS_AS(radial_order(P, IndexSet({0, 1}), P[1], RotationSense::clockwise),
                    input_error);
}

TEST_CASE("avoiding pairs see each other in one fixed rotational order") {
    for (int trial = 0; trial < 8; ++trial) {
        PointSeq P = two_clusters(5, 2000 + trial);
        IndexSet A({0, 1, 2, 3, 4}), B({5, 6, 7, 8, 9});
        if (!mutually_avoiding(P, A, B)) continue;
        std::vector<std::size_t> reference =
            radial_order(P, A, P[B[0]], RotationSense::clockwise);
        for (std::size_t bi = 1; bi < B.size(); ++bi)
            CHECK(radial_order(P, A, P[B[bi]], RotationSense::clockwise) == reference);
    }
}

TEST_CASE("segment crossing predicates agree in the plane") {
    Rng rng(37);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<Point> pts;
        while (pts.size() < 4) {
            Point p = random_point(rng, 2, 8, 24);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        bool degenerate = false;
        for_each_combination(4, 3, [&](const std::vector<std::size_t>& idx) {
            if (orient_det_oracle({pts[idx[0]], pts[idx[1]], pts[idx[2]]}).is_zero())
                degenerate = true;
            return !degenerate;
        });
        if (degenerate) continue;
        PointSeq P(2, pts);
        Simplex s1{{0, 1}}, s2{{2, 3}};
        CHECK(segments_properly_cross(P, s1, s2) == strongly_cross(P, s1, s2));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("strongly_cross planar basics") {
    PointSeq P = seq2({pt({0, 0}), pt({1, 1}), pt({1, 0}), pt({0, 1})});
    CHECK(strongly_cross(P, Simplex{{0, 1}}, Simplex{{2, 3}}));
    // shared endpoint
    CHECK_FALSE(strongly_cross(P, Simplex{{0, 1}}, Simplex{{0, 2}}));
    // disjoint segments
    PointSeq Q = seq2({pt({0, 0}), pt({1, 0}), pt({0, 5}), pt({1, 7})});
    CHECK_FALSE(strongly_cross(Q, Simplex{{0, 1}}, Simplex{{2, 3}}));
}

TEST_CASE("strongly_cross for triangles in space") {
    // T2's plane cuts the first triangle's plane inside both interiors
    PointSeq P = seq3({pt({0, 0, 0}), pt({4, 0, 0}), pt({0, 4, 0}), pt({1, 1, -3}),
                       pt({1, 2, 3}), pt({2, 1, 3})});
    CHECK(strongly_cross(P, Simplex{{0, 1, 2}}, Simplex{{3, 4, 5}}));
    CHECK(strongly_cross(P, Simplex{{3, 4, 5}}, Simplex{{0, 1, 2}})); // symmetric
    // sharing a vertex disqualifies
    CHECK_FALSE(strongly_cross(P, Simplex{{0, 1, 2}}, Simplex{{0, 4, 5}}));
    // far-away triangle
    PointSeq Q = seq3({pt({0, 0, 0}), pt({4, 0, 0}), pt({0, 4, 0}), pt({0, 0, 9}),
                       pt({1, 0, 9}), pt({0, 1, 9})});
    CHECK_FALSE(strongly_cross(Q, Simplex{{0, 1, 2}}, Simplex{{3, 4, 5}}));
}

TEST_CASE("is_crossing_family basics") {
    PointSeq P = seq2({pt({0, 0}), pt({1, 1}), pt({1, 0}), pt({0, 1}), pt({5, 5}),
                       pt({6, 5})});
    CHECK(is_crossing_family(P, {}));
    CHECK(is_crossing_family(P, {Simplex{{0, 1}}}));
    CHECK(is_crossing_family(P, {Simplex{{0, 1}}, Simplex{{2, 3}}}));
    CHECK_FALSE(is_crossing_family(P, {Simplex{{0, 1}}, Simplex{{2, 3}}, Simplex{{4, 5}}}));
}

TEST_CASE("crossing family extraction from a verified pair") {
    PointSeq P = two_far_pairs();
    AvoidingPair pair{IndexSet({0, 1}), IndexSet({2, 3}), true};
    CrossingFamily fam = crossing_family_from_avoiding(P, pair);
    CHECK(fam.size() == 2);
    CHECK(fam.verified);
    CHECK(is_crossing_family(P, fam.simplices));
}

TEST_CASE("crossing family extraction for k = 1") {
    PointSeq P = seq2({pt({0, 0}), pt({9, 2})});
    AvoidingPair pair{IndexSet({0}), IndexSet({1}), true};
    CrossingFamily fam = crossing_family_from_avoiding(P, pair);
    CHECK(fam.size() == 1);
    CHECK(fam.verified);
}

TEST_CASE("crossing family extraction at k = 4 on a cluster instance") {
    PointSeq P = two_clusters(4, 40);
    AvoidingPair pair = max_avoiding_bruteforce(P);
    REQUIRE(pair.verified);
    std::size_t k = std::min(pair.a.size(), pair.b.size());
    REQUIRE(k == 4);
    CrossingFamily fam = crossing_family_from_avoiding(P, pair);
    CHECK(fam.size() == 4);
    CHECK(is_crossing_family(P, fam.simplices));
}

TEST_CASE("brute-force avoiding oracle on the unit square") {
    AvoidingPair pair = max_avoiding_bruteforce(unit_square());
    CHECK(pair.verified);
    CHECK(std::min(pair.a.size(), pair.b.size()) == 2);
    // lexicographically smallest optimum: bottom edge vs top edge
    CHECK(pair.a.indices() == std::vector<std::size_t>{0, 1});
    CHECK(pair.b.indices() == std::vector<std::size_t>{2, 3});
}

TEST_CASE("brute-force avoiding oracle on three points") {
    PointSeq P = seq2({pt({0, 0}), pt({5, 1}), pt({2, 4})});
    AvoidingPair pair = max_avoiding_bruteforce(P);
    CHECK(std::min(pair.a.size(), pair.b.size()) == 1);
    CHECK(pair.a.indices() == std::vector<std::size_t>{0});
    CHECK(pair.b.indices() == std::vector<std::size_t>{1});
}

TEST_CASE("brute-force oracle meets the sqrt(n/12) bound at n = 12") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        Rng rng(seed);
        std::vector<Point> pts;
        while (pts.size() < 12) {
            Point p = random_point(rng, 2, 32, 256);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        PointSeq P(2, pts);
        if (!general_position(P)) continue;
        AvoidingPair pair = max_avoiding_bruteforce(P);
        CHECK(std::min(pair.a.size(), pair.b.size()) >= 1);
    }
}

TEST_CASE("brute-force cap is enforced") {
    Rng rng(41);
    std::vector<Point> pts;
    while (pts.size() < 15) {
        Point p = random_point(rng, 2, 32, 256);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    CHECK_THROWS_AS(max_avoiding_bruteforce(PointSeq(2, pts)), cap_exceeded);
}

TEST_CASE("avoiding oracle min size is affine invariant") {
    Rng rng(43);
    PointSeq P = two_clusters(3, 77);
    AvoidingPair base = max_avoiding_bruteforce(P);
    std::size_t base_min = std::min(base.a.size(), base.b.size());
    for (int trial = 0; trial < 4; ++trial) {
        AffineMap map = random_affine(rng, 2);
        AvoidingPair mapped = max_avoiding_bruteforce(apply_map(map, P));
        CHECK(std::min(mapped.a.size(), mapped.b.size()) == base_min);
    }
}

TEST_CASE("heuristic recovers two distant clusters of five") {
    PointSeq P = two_clusters(5, 99);
    AvoidingPair pair = find_avoiding_heuristic(P, 5);
    CHECK(pair.verified);
    CHECK(std::min(pair.a.size(), pair.b.size()) >= 5);
    CHECK(mutually_avoiding(P, pair.a, pair.b));
}

TEST_CASE("heuristic returns singletons for n = 2") {
    PointSeq P = seq2({pt({0, 0}), pt({1, 3})});
    AvoidingPair pair = find_avoiding_heuristic(P, 1);
    CHECK(pair.a.size() == 1);
    CHECK(pair.b.size() == 1);
    CHECK(pair.verified);
}

TEST_CASE("brute-force crossing family on square, triangle, hexagon") {
    CHECK(max_crossing_family_bruteforce(unit_square()).size() == 2);

    PointSeq triangle = seq2({pt({0, 0}), pt({5, 1}), pt({2, 4})});
    CHECK(max_crossing_family_bruteforce(triangle).size() == 1);

    PointSeq hexagon = seq2({pt({0, 0}), pt({2, 0}), pt({3, 2}), pt({2, 4}), pt({0, 4}),
                             pt({-1, 2})});
    CrossingFamily fam = max_crossing_family_bruteforce(hexagon);
    CHECK(fam.size() == 3);
    CHECK(is_crossing_family(hexagon, fam.simplices));
}

TEST_CASE("crossing oracle cap is enforced") {
    Rng rng(47);
    std::vector<Point> pts;
    while (pts.size() < 13) {
        Point p = random_point(rng, 2, 32, 256);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    CHECK_THROWS_AS(max_crossing_family_bruteforce(PointSeq(2, pts)), cap_exceeded);
}

TEST_CASE("extraction size never beats the crossing oracle") {
    for (std::uint64_t seed : {11, 12, 13}) {
        Rng rng(seed);
        std::vector<Point> pts;
        while (pts.size() < 10) {
            Point p = random_point(rng, 2, 16, 64);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        PointSeq P(2, pts);
        if (!general_position(P)) continue;
        CrossingFamily oracle = max_crossing_family_bruteforce(P);
        AvoidingPair pair = max_avoiding_bruteforce(P);
        std::size_t k = std::min(pair.a.size(), pair.b.size());
        auto first_k = [&](const IndexSet& s) {
            std::vector<std::size_t> v(s.indices().begin(),
                                       s.indices().begin() + static_cast<std::ptrdiff_t>(k));
            return IndexSet(v);
        };
        CrossingFamily built =
            crossing_family_from_avoiding(P, AvoidingPair{first_k(pair.a), first_k(pair.b), true});
        CHECK(built.size() <= oracle.size());
        CHECK(built.size() == k);
    }
}
