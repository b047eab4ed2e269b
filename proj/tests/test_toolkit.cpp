#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/toolkit.hpp"
#include "helpers.hpp"

using namespace avoidkit;
using namespace avoidkit::testing;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("moment curve generator is the parabola at integer parameters") {
    GenSpec spec;
    spec.kind = GenKind::moment_curve;
    spec.n = 5;
    spec.dim = 2;
    GenResult res = generate(spec);
    CHECK(res.retries == 0);
    REQUIRE(res.points.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        long t = static_cast<long>(i) + 1;
        CHECK(res.points[i] == pt({t, t * t}));
    }
    CHECK(general_position(res.points));
    // convex position: the hull uses every point
    CHECK(convex_hull_2d(res.points).size() == 5);
}

TEST_CASE("uniform generation is deterministic and in general position") {
    GenSpec spec;
    spec.kind = GenKind::uniform;
    spec.n = 40;
    spec.dim = 2;
    spec.seed = 4242;
    GenResult a = generate(spec);
    GenResult b = generate(spec);
    CHECK(a.points == b.points);
    CHECK(a.retries == b.retries);
    CHECK(general_position(a.points));
}

TEST_CASE("perturbed grid stays within delta of the lattice") {
    GenSpec spec;
    spec.kind = GenKind::perturbed_grid;
    spec.n = 9;
    spec.dim = 2;
    spec.seed = 7;
    spec.delta = Rational(1, 10);
    GenResult res = generate(spec);
    REQUIRE(res.points.size() == 9);
    CHECK(general_position(res.points));
    for (std::size_t i = 0; i < 9; ++i) {
        Rational x = res.points[i][0];
        Rational y = res.points[i][1];
        Rational cx(static_cast<long>(i / 3)); // row-major: last coordinate fastest
        Rational cy(static_cast<long>(i % 3));
        CHECK((x - cx).abs() <= spec.delta);
        CHECK((y - cy).abs() <= spec.delta);
    }
}

TEST_CASE("perturbed grid validates delta") {
    GenSpec spec;
    spec.kind = GenKind::perturbed_grid;
    spec.n = 9;
    spec.dim = 2;
    spec.delta = Rational(1, 2);
    CHECK_THROWS_AS(generate(spec), input_error);
    spec.delta = Rational(0);
    CHECK_THROWS_AS(generate(spec), input_error);
}

TEST_CASE("convex generator emits convex position in the plane and space") {
    GenSpec spec;
    spec.kind = GenKind::convex;
    spec.n = 12;
    spec.dim = 2;
    spec.seed = 99;
    GenResult res = generate(spec);
    CHECK(general_position(res.points));
    CHECK(convex_hull_2d(res.points).size() == 12);

    spec.dim = 3;
    spec.n = 8;
    GenResult res3 = generate(spec);
    CHECK(general_position(res3.points));
}

TEST_CASE("points files round-trip exactly") {
    TempFile f("avoidkit_pts_roundtrip.txt");
    PointSeq P = seq2({ptq({"-3/7", "0"}), ptq({"22", "1/1024"}), ptq({"-1", "-2/3"})});
    write_points(P, f.path);
    PointSeq Q = read_points(f.path);
    CHECK(P == Q);
}

TEST_CASE("points files accept comments and report malformed rows") {
    TempFile f("avoidkit_pts_bad.txt");
    {
        std::ofstream out(f.path);
        out << "# test fixture\n2 2\n0 0\n1 2 3\n";
    }
    CHECK_THROWS_WITH_AS(read_points(f.path), doctest::Contains(":4"), input_error);
    {
        std::ofstream out(f.path);
        out << "2 3\n0 0\n1 2\n";
    }
    CHECK_THROWS_AS(read_points(f.path), input_error);
    {
        std::ofstream out(f.path);
        out << "# only comments\n";
    }
    CHECK_THROWS_WITH_AS(read_points(f.path), doctest::Contains("header"), input_error);
}

TEST_CASE("artifact reports round-trip each kind") {
    TempFile f("avoidkit_artifact.txt");

    AvoidingPair pair{IndexSet({0, 2, 5}), IndexSet({1, 3}), true};
    write_report(report_from_pair(pair), f.path);
    AvoidingPair pair2 = pair_from_report(read_report(f.path));
    CHECK(pair2.a == pair.a);
    CHECK(pair2.b == pair.b);
    CHECK(pair2.verified);

    CrossingFamily fam{{Simplex{{0, 3}}, Simplex{{1, 2}}}, true};
    write_report(report_from_family(fam), f.path);
    CrossingFamily fam2 = family_from_report(read_report(f.path));
    CHECK(fam2.simplices == fam.simplices);

    FractionalFamily ff;
    ff.k = 2;
    ff.a_parts = {IndexSet({0, 1}), IndexSet({2})};
    ff.b_parts = {IndexSet({3}), IndexSet({4, 5})};
    write_report(report_from_fractional(ff), f.path);
    FractionalFamily ff2 = fractional_from_report(read_report(f.path));
    CHECK(ff2.k == 2);
    CHECK(ff2.a_parts[1] == ff.a_parts[1]);
    CHECK(ff2.b_parts[0] == ff.b_parts[0]);

    PartitionParts parts;
    parts.parts = {IndexSet({0, 1}), IndexSet({2, 3})};
    write_report(report_from_partition(parts), f.path);
    CHECK(partition_from_report(read_report(f.path)).parts == parts.parts);
}

TEST_CASE("svg rendering with overlays") {
    TempFile f("avoidkit_render.svg");
    PointSeq P = two_far_pairs_helper();
    std::vector<Overlay> overlays;
    overlays.push_back(MarkedPointsOverlay{IndexSet({0, 1}), "seta"});
    overlays.push_back(HullOverlay{IndexSet({0, 1, 2}), ""});
    overlays.push_back(SegmentsOverlay{{Simplex{{0, 2}}, Simplex{{1, 3}}}, ""});
    overlays.push_back(LinesOverlay{{{0, 1}}, ""});
    render_svg(P, overlays, f.path);
    std::string svg = slurp(f.path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("svg rendering rejects non-planar input") {
    TempFile f("avoidkit_render3d.svg");
    PointSeq P = seq3({pt({0, 0, 0}), pt({1, 1, 1})});
    CHECK_THROWS_AS(render_svg(P, {}, f.path), input_error);
}

TEST_CASE("wedge overlays render as clipped polygons") {
    TempFile f("avoidkit_wedge.svg");
    PointSeq P = seq2({pt({0, 0}), pt({10, 0}), pt({0, 10}), pt({10, 10}), pt({5, 5})});
    Wedge w;
    w.constraints.push_back({pt({0, 0}), pt({10, 0}), Orientation::positive});
    w.constraints.push_back({pt({0, 0}), pt({0, 10}), Orientation::negative});
    render_svg(P, {WedgeOverlay{w, ""}}, f.path);
    CHECK(slurp(f.path).find("<polygon") != std::string::npos);
}

TEST_CASE("the sqrt(n/12) bound column") {
    CHECK(bound_sqrt_n12(1) == 1);
    CHECK(bound_sqrt_n12(12) == 1);
    CHECK(bound_sqrt_n12(13) == 2);
    CHECK(bound_sqrt_n12(48) == 2);
    CHECK(bound_sqrt_n12(108) == 3);
    CHECK(bound_sqrt_n12(192) == 4);
}

TEST_CASE("bench emits deterministic rows and survives row failures") {
    std::vector<GenSpec> specs;
    GenSpec a;
    a.kind = GenKind::uniform;
    a.n = 12;
    a.dim = 2;
    a.seed = 5;
    specs.push_back(a);
    GenSpec bad;
    bad.kind = GenKind::perturbed_grid;
    bad.n = 9;
    bad.dim = 2;
    bad.seed = 1;
    bad.delta = Rational(0); // invalid: recorded in-row
    specs.push_back(bad);

    std::vector<BenchRow> rows = bench_rows(specs);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == "ok");
    CHECK(rows[0].method == "oracle");
    CHECK(rows[0].avoiding_min_size >= 1);
    CHECK(rows[0].crossing_size == rows[0].avoiding_min_size);
    CHECK(rows[1].status.substr(0, 6) == "error:");

    std::string csv1 = bench_csv(rows);
    std::string csv2 = bench_csv(bench_rows(specs));
    CHECK(csv1 == csv2);
    CHECK(csv1.find("# format=1") == 0);
}

TEST_CASE("empty bench specs give a header-only csv") {
    std::string csv = bench_csv(bench_rows({}));
    CHECK(csv ==
          "# format=1\nkind,n,dim,seed,delta,avoiding_min_size,crossing_size,bound_sqrt_n12,"
          "method,status\n");
}

TEST_CASE("bench spec lines parse") {
    GenSpec s = parse_gen_spec_line("uniform 48 2 1234");
    CHECK(s.kind == GenKind::uniform);
    CHECK(s.n == 48);
    CHECK(s.dim == 2);
    CHECK(s.seed == 1234);
    GenSpec g = parse_gen_spec_line("perturbed_grid 9 2 7 1/20");
    CHECK(g.delta == Rational(1, 20));
    CHECK_THROWS_AS(parse_gen_spec_line("mystery 9 2 7"), input_error);
    CHECK_THROWS_AS(parse_gen_spec_line("uniform 9"), input_error);
}
