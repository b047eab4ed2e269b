// Python bindings for the main operations. Points travel as lists of
// coordinate strings ("p/q" or integers) so exactness survives the
// language boundary; indices and verdicts come back as plain Python
// structures.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "avoidkit/errors.hpp"
#include "avoidkit/fractional.hpp"
#include "avoidkit/highdim.hpp"
#include "avoidkit/sametype.hpp"
#include "avoidkit/toolkit.hpp"

namespace py = pybind11;
using namespace avoidkit;

namespace {

Rational coord_from_py(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return Rational(Integer(py::cast<std::string>(py::str(h))));
    return Rational::parse(py::cast<std::string>(py::str(h)));
}

Point point_from_py(const py::sequence& seq) {
    std::vector<Rational> coords;
    coords.reserve(py::len(seq));
    for (const auto& c : seq) coords.push_back(coord_from_py(c));
    return Point(std::move(coords));
}

PointSeq seq_from_py(const py::sequence& pts) {
    if (py::len(pts) == 0) throw input_error("point list must be nonempty");
    std::vector<Point> points;
    points.reserve(py::len(pts));
    for (const auto& row : pts) points.push_back(point_from_py(py::cast<py::sequence>(row)));
    const std::size_t dim = points[0].dim();
    return PointSeq(dim, std::move(points));
}

py::list seq_to_py(const PointSeq& P) {
    py::list out;
    for (const auto& p : P.points()) {
        py::list row;
        for (std::size_t i = 0; i < p.dim(); ++i) row.append(p[i].str());
        out.append(row);
    }
    return out;
}

py::dict pair_to_py(const AvoidingPair& pair) {
    py::dict d;
    d["a"] = pair.a.indices();
    d["b"] = pair.b.indices();
    d["verified"] = pair.verified;
    return d;
}

py::list family_to_py(const CrossingFamily& fam) {
    py::list out;
    for (const auto& s : fam.simplices) out.append(s.vertex_indices);
    return out;
}

std::vector<Simplex> family_from_py(const py::sequence& fam) {
    std::vector<Simplex> out;
    for (const auto& s : fam) out.push_back(Simplex{py::cast<std::vector<std::size_t>>(s)});
    return out;
}

py::dict fractional_to_py(const FractionalFamily& fam) {
    py::dict d;
    py::list a, b;
    for (const auto& part : fam.a_parts) a.append(part.indices());
    for (const auto& part : fam.b_parts) b.append(part.indices());
    d["k"] = fam.k;
    d["a_parts"] = a;
    d["b_parts"] = b;
    return d;
}

FractionalFamily fractional_from_py(std::size_t k, const py::sequence& a_parts,
                                    const py::sequence& b_parts) {
    FractionalFamily fam;
    fam.k = k;
    for (const auto& p : a_parts)
        fam.a_parts.push_back(IndexSet(py::cast<std::vector<std::size_t>>(p)));
    for (const auto& p : b_parts)
        fam.b_parts.push_back(IndexSet(py::cast<std::vector<std::size_t>>(p)));
    return fam;
}

VerifyConfig verify_config(std::size_t trials, std::size_t cap, std::uint64_t seed,
                           bool exhaustive) {
    VerifyConfig vc;
    vc.trials = trials;
    vc.exhaustive_cap = cap;
    vc.seed = seed;
    vc.force_exhaustive = exhaustive;
    return vc;
}

} // namespace

PYBIND11_MODULE(_avoidkit, m) {
    m.doc() = "mutually avoiding sets, crossing families, and positive-fraction "
              "families over exact rational arithmetic";

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<cap_exceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<verification_error>(m, "VerificationError", PyExc_RuntimeError);

    m.def("orient", [](const py::sequence& tuple) {
        std::vector<Point> pts;
        for (const auto& row : tuple) pts.push_back(point_from_py(py::cast<py::sequence>(row)));
        return to_int(orient(pts));
    }, py::arg("tuple"), "Sign of the orientation determinant of d+1 points in R^d.");

    m.def("general_position", [](const py::sequence& pts) {
        return general_position(seq_from_py(pts));
    }, py::arg("points"));

    m.def("convex_hull", [](const py::sequence& pts) {
        return convex_hull_2d(seq_from_py(pts));
    }, py::arg("points"), "Counterclockwise hull indices, planar input.");

    m.def("avoids", [](const py::sequence& pts, const std::vector<std::size_t>& a,
                       const std::vector<std::size_t>& b) {
        return avoids(seq_from_py(pts), IndexSet(a), IndexSet(b));
    }, py::arg("points"), py::arg("a"), py::arg("b"));

    m.def("mutually_avoiding", [](const py::sequence& pts, const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
        return mutually_avoiding(seq_from_py(pts), IndexSet(a), IndexSet(b));
    }, py::arg("points"), py::arg("a"), py::arg("b"));

    m.def("max_avoiding_bruteforce", [](const py::sequence& pts, std::size_t cap) {
        SearchConfig cfg;
        cfg.avoiding_cap = cap;
        cfg.avoiding_cap_rd = cap;
        PointSeq P = seq_from_py(pts);
        return pair_to_py(P.dim() == 2 ? max_avoiding_bruteforce(P, cfg)
                                       : max_avoiding_bruteforce_rd(P, cfg));
    }, py::arg("points"), py::arg("cap") = 14);

    m.def("find_avoiding_heuristic", [](const py::sequence& pts, std::size_t target) {
        PointSeq P = seq_from_py(pts);
        return pair_to_py(P.dim() == 2 ? find_avoiding_heuristic(P, target)
                                       : find_avoiding_heuristic_rd(P, target));
    }, py::arg("points"), py::arg("target"));

    m.def("crossing_family_from_avoiding",
          [](const py::sequence& pts, const std::vector<std::size_t>& a,
             const std::vector<std::size_t>& b) {
              PointSeq P = seq_from_py(pts);
              AvoidingPair pair{IndexSet(a), IndexSet(b), false};
              pair.verified = mutually_avoiding(P, pair.a, pair.b);
              if (!pair.verified)
                  throw verification_error("the given pair is not mutually avoiding");
              return family_to_py(crossing_family_from_avoiding(P, pair));
          }, py::arg("points"), py::arg("a"), py::arg("b"));

    m.def("strongly_cross", [](const py::sequence& pts, const std::vector<std::size_t>& s1,
                               const std::vector<std::size_t>& s2) {
        return strongly_cross(seq_from_py(pts), Simplex{s1}, Simplex{s2});
    }, py::arg("points"), py::arg("s1"), py::arg("s2"));

    m.def("is_crossing_family", [](const py::sequence& pts, const py::sequence& fam) {
        return is_crossing_family(seq_from_py(pts), family_from_py(fam));
    }, py::arg("points"), py::arg("family"));

    m.def("max_crossing_family_bruteforce", [](const py::sequence& pts, std::size_t cap) {
        SearchConfig cfg;
        cfg.crossing_cap = cap;
        return family_to_py(max_crossing_family_bruteforce(seq_from_py(pts), cfg));
    }, py::arg("points"), py::arg("cap") = 12);

    m.def("fractional_family", [](const py::sequence& pts, std::size_t k, std::size_t m) {
        FractionalConfig cfg;
        cfg.pair_size = m;
        return fractional_to_py(fractional_family(seq_from_py(pts), k, cfg));
    }, py::arg("points"), py::arg("k") = 2, py::arg("m") = 9);

    m.def("verify_fractional",
          [](const py::sequence& pts, std::size_t k, const py::sequence& a_parts,
             const py::sequence& b_parts, std::size_t trials, std::size_t cap,
             std::uint64_t seed, bool exhaustive) {
              return verify_fractional(seq_from_py(pts), fractional_from_py(k, a_parts, b_parts),
                                       verify_config(trials, cap, seed, exhaustive));
          }, py::arg("points"), py::arg("k"), py::arg("a_parts"), py::arg("b_parts"),
          py::arg("trials") = 1000, py::arg("cap") = 200000, py::arg("seed") = 0,
          py::arg("exhaustive") = false);

    m.def("verify_crossing_variant",
          [](const py::sequence& pts, std::size_t k, const py::sequence& a_parts,
             const py::sequence& b_parts, std::size_t trials, std::size_t cap,
             std::uint64_t seed, bool exhaustive) {
              return verify_crossing_variant(seq_from_py(pts),
                                             fractional_from_py(k, a_parts, b_parts),
                                             verify_config(trials, cap, seed, exhaustive));
          }, py::arg("points"), py::arg("k"), py::arg("a_parts"), py::arg("b_parts"),
          py::arg("trials") = 1000, py::arg("cap") = 200000, py::arg("seed") = 0,
          py::arg("exhaustive") = false);

    m.def("order_type_signs", [](const py::sequence& pts) {
        OrderType ot = order_type(seq_from_py(pts));
        std::vector<int> out;
        out.reserve(ot.signs().size());
        for (auto s : ot.signs()) out.push_back(to_int(s));
        return out;
    }, py::arg("points"), "Orientation of every (d+1)-tuple, lexicographic tuple order.");

    m.def("same_type_transversals",
          [](const py::sequence& pts, const py::sequence& parts, std::size_t cap,
             std::size_t trials, std::uint64_t seed, bool exhaustive) {
              PartitionParts pp;
              for (const auto& p : parts)
                  pp.parts.push_back(IndexSet(py::cast<std::vector<std::size_t>>(p)));
              SameTypeConfig cfg;
              cfg.exhaustive_cap = cap;
              cfg.trials = trials;
              cfg.seed = seed;
              cfg.force_exhaustive = exhaustive;
              SameTypeReport rep = same_type_transversals_report(seq_from_py(pts), pp, cfg);
              py::dict d;
              d["same_type"] = rep.same_type;
              d["method"] = to_string(rep.method);
              d["evaluations"] = rep.evaluations;
              return d;
          }, py::arg("points"), py::arg("parts"), py::arg("cap") = 200000,
          py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("exhaustive") = false);

    m.def("same_type_partition", [](const py::sequence& pts, std::size_t k) {
        PartitionResult res = same_type_partition(seq_from_py(pts), k);
        py::dict d;
        py::list parts;
        for (const auto& p : res.parts.parts) parts.append(p.indices());
        d["parts"] = parts;
        d["epsilon_hat"] = res.epsilon_hat.str();
        d["method"] = to_string(res.method);
        d["singleton_fallback"] = res.singleton_fallback;
        d["shrink_rounds"] = res.shrink_rounds;
        return d;
    }, py::arg("points"), py::arg("k"));

    m.def("fractional_rd", [](const py::sequence& pts, std::size_t k, std::size_t kprime) {
        FractionalRdConfig cfg;
        cfg.parts_override = kprime;
        FractionalRdResult res = fractional_rd(seq_from_py(pts), k, cfg);
        py::dict d = fractional_to_py(res.family);
        d["epsilon_hat"] = res.partition.epsilon_hat.str();
        d["representatives"] = res.representatives;
        return d;
    }, py::arg("points"), py::arg("k") = 2, py::arg("kprime") = 0);

    m.def("separating_hyperplane", [](const py::sequence& pts, const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
        Hyperplane h = separating_hyperplane(seq_from_py(pts), IndexSet(a), IndexSet(b));
        py::dict d;
        py::list normal;
        for (const auto& v : h.normal) normal.append(v.str());
        d["normal"] = normal;
        d["offset"] = h.offset.str();
        return d;
    }, py::arg("points"), py::arg("a"), py::arg("b"));

    m.def("crossing_family_rd", [](const py::sequence& pts) {
        CrossingRdResult res = crossing_family_rd(seq_from_py(pts));
        py::dict d;
        d["simplices"] = family_to_py(res.family);
        d["single_simplex_fallback"] = res.single_simplex_fallback;
        return d;
    }, py::arg("points"));

    m.def("generate", [](const std::string& kind, std::size_t n, std::size_t dim,
                         std::uint64_t seed, const std::string& delta) {
        GenSpec spec;
        spec.kind = gen_kind_from_string(kind);
        spec.n = n;
        spec.dim = dim;
        spec.seed = seed;
        if (spec.kind == GenKind::perturbed_grid) spec.delta = Rational::parse(delta);
        return seq_to_py(generate(spec).points);
    }, py::arg("kind"), py::arg("n"), py::arg("dim") = 2, py::arg("seed") = 0,
       py::arg("delta") = "1/100");

    m.def("read_points", [](const std::string& path) { return seq_to_py(read_points(path)); },
          py::arg("path"));

    m.def("write_points", [](const py::sequence& pts, const std::string& path) {
        write_points(seq_from_py(pts), path);
    }, py::arg("points"), py::arg("path"));

    m.def("render_svg", [](const py::sequence& pts, const std::string& path) {
        render_svg(seq_from_py(pts), {}, path);
    }, py::arg("points"), py::arg("path"));

    m.def("bound_sqrt_n12", &bound_sqrt_n12, py::arg("n"),
          "Smallest integer m with 12 m^2 >= n.");
}
