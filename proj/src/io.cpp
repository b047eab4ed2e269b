#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/toolkit.hpp"

namespace avoidkit {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw input_error(os.str());
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

bool is_comment_or_blank(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

} // namespace

PointSeq read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open points file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    std::size_t d = 0, n = 0;
    bool have_header = false;
    std::vector<Point> pts;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        auto toks = tokens_of(line);
        if (!have_header) {
            if (toks.size() != 2) parse_fail(path, lineno, "expected header 'd n'");
            try {
                long dv = std::stol(toks[0]);
                long nv = std::stol(toks[1]);
                if (dv < 1 || nv < 0) parse_fail(path, lineno, "header needs d >= 1 and n >= 0");
                d = static_cast<std::size_t>(dv);
                n = static_cast<std::size_t>(nv);
            } catch (const std::logic_error&) {
                parse_fail(path, lineno, "malformed header 'd n'");
            }
            have_header = true;
            continue;
        }
        if (pts.size() == n) parse_fail(path, lineno, "more point rows than the header announced");
        if (toks.size() != d) {
            std::ostringstream os;
            os << "point row " << pts.size() + 1 << " has " << toks.size()
               << " coordinates, expected " << d;
            parse_fail(path, lineno, os.str());
        }
        std::vector<Rational> coords(d);
        for (std::size_t i = 0; i < d; ++i) {
            try {
                coords[i] = Rational::parse(toks[i]);
            } catch (const input_error& e) {
                parse_fail(path, lineno, e.what());
            }
        }
        pts.push_back(Point(std::move(coords)));
    }
    if (!have_header) parse_fail(path, lineno, "missing header 'd n'");
    if (pts.size() != n) {
        std::ostringstream os;
        os << "expected " << n << " point rows, found " << pts.size();
        parse_fail(path, lineno, os.str());
    }
    return PointSeq(d, std::move(pts));
}

void write_points(const PointSeq& P, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    out << P.dim() << " " << P.size() << "\n";
    for (const auto& p : P.points()) {
        for (std::size_t i = 0; i < P.dim(); ++i) {
            if (i) out << " ";
            out << p[i].str();
        }
        out << "\n";
    }
    if (!out) throw input_error("write failed for '" + path + "'");
}

// --- key=value reports -----------------------------------------------------

void Report::add(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
}

void Report::add_indices(const std::string& key, const std::vector<std::size_t>& idx) {
    std::ostringstream os;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) os << " ";
        os << idx[i];
    }
    entries.emplace_back(key, os.str());
}

std::optional<std::string> Report::get(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return std::nullopt;
}

std::string Report::require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw input_error("artifact is missing the '" + key + "' entry");
    return *v;
}

std::vector<std::string> Report::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
        if (k == key) out.push_back(v);
    return out;
}

Report read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open artifact file '" + path + "'");
    Report report;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(path, lineno, "expected key=value");
        report.entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return report;
}

void write_report(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    for (const auto& [k, v] : report.entries) out << k << "=" << v << "\n";
    if (!out) throw input_error("write failed for '" + path + "'");
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::istringstream is(text);
    long v;
    while (is >> v) {
        if (v < 0) throw input_error("negative index in artifact");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

Report report_from_pair(const AvoidingPair& pair) {
    Report r;
    r.add("type", "avoiding_pair");
    r.add_indices("a", pair.a.indices());
    r.add_indices("b", pair.b.indices());
    r.add("verified", pair.verified ? "1" : "0");
    return r;
}

AvoidingPair pair_from_report(const Report& report) {
    if (report.require("type") != "avoiding_pair")
        throw input_error("artifact is not an avoiding_pair");
    AvoidingPair pair;
    pair.a = IndexSet(parse_index_list(report.require("a")));
    pair.b = IndexSet(parse_index_list(report.require("b")));
    pair.verified = report.get("verified").value_or("0") == "1";
    return pair;
}

Report report_from_family(const CrossingFamily& fam) {
    Report r;
    r.add("type", "crossing_family");
    r.add("size", std::to_string(fam.size()));
    for (const auto& s : fam.simplices) r.add_indices("simplex", s.vertex_indices);
    r.add("verified", fam.verified ? "1" : "0");
    return r;
}

CrossingFamily family_from_report(const Report& report) {
    if (report.require("type") != "crossing_family")
        throw input_error("artifact is not a crossing_family");
    CrossingFamily fam;
    for (const auto& s : report.get_all("simplex"))
        fam.simplices.push_back(Simplex{parse_index_list(s)});
    fam.verified = report.get("verified").value_or("0") == "1";
    return fam;
}

Report report_from_fractional(const FractionalFamily& fam) {
    Report r;
    r.add("type", "fractional_family");
    r.add("k", std::to_string(fam.k));
    for (const auto& p : fam.a_parts) r.add_indices("a_part", p.indices());
    for (const auto& p : fam.b_parts) r.add_indices("b_part", p.indices());
    return r;
}

FractionalFamily fractional_from_report(const Report& report) {
    if (report.require("type") != "fractional_family")
        throw input_error("artifact is not a fractional_family");
    FractionalFamily fam;
    fam.k = static_cast<std::size_t>(std::stoul(report.require("k")));
    for (const auto& p : report.get_all("a_part"))
        fam.a_parts.push_back(IndexSet(parse_index_list(p)));
    for (const auto& p : report.get_all("b_part"))
        fam.b_parts.push_back(IndexSet(parse_index_list(p)));
    if (fam.a_parts.size() != fam.k || fam.b_parts.size() != fam.k)
        throw input_error("fractional_family artifact has inconsistent part counts");
    return fam;
}

Report report_from_partition(const PartitionParts& parts) {
    Report r;
    r.add("type", "partition");
    r.add("parts", std::to_string(parts.size()));
    for (const auto& p : parts.parts) r.add_indices("part", p.indices());
    return r;
}

PartitionParts partition_from_report(const Report& report) {
    if (report.require("type") != "partition")
        throw input_error("artifact is not a partition");
    PartitionParts parts;
    for (const auto& p : report.get_all("part"))
        parts.parts.push_back(IndexSet(parse_index_list(p)));
    return parts;
}

// --- SVG ---------------------------------------------------------------

namespace {

struct Viewport {
    Rational minx, miny, width, height;

    // data coordinates, y negated so the picture keeps the usual
    // mathematical orientation under SVG's downward y axis
    std::pair<std::string, std::string> map(const Point& p) const {
        return {p[0].decimal(6), (-p[1]).decimal(6)};
    }

    std::string view_box() const {
        return minx.decimal(6) + " " + (-(miny + height)).decimal(6) + " " +
               width.decimal(6) + " " + height.decimal(6);
    }
};

Viewport viewport_of(const PointSeq& P) {
    Rational minx = P[0][0], maxx = P[0][0], miny = P[0][1], maxy = P[0][1];
    for (const auto& p : P.points()) {
        minx = std::min(minx, p[0]);
        maxx = std::max(maxx, p[0]);
        miny = std::min(miny, p[1]);
        maxy = std::max(maxy, p[1]);
    }
    Rational w = maxx - minx, h = maxy - miny;
    if (w.is_zero()) w = Rational(1);
    if (h.is_zero()) h = Rational(1);
    Rational margin_w = w * Rational(1, 20), margin_h = h * Rational(1, 20);
    return Viewport{minx - margin_w, miny - margin_h,
                    w + Rational(2) * margin_w, h + Rational(2) * margin_h};
}

/// Clips the convex viewport rectangle against one oriented line,
/// keeping the side where orient(p, q, x) == required.
std::vector<Point> clip_polygon(const std::vector<Point>& poly, const Point& p,
                                const Point& q, Orientation required) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % n];
        int sc = to_int(orient({p, q, cur})) * to_int(required);
        int sn = to_int(orient({p, q, nxt})) * to_int(required);
        if (sc >= 0) out.push_back(cur);
        if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
            Hyperplane line = hyperplane_through({p, q});
            out.push_back(line_hyperplane_intersection(cur, nxt, line));
        }
    }
    return out;
}

std::vector<Point> viewport_corners(const Viewport& v) {
    Rational maxx = v.minx + v.width, maxy = v.miny + v.height;
    return {Point({v.minx, v.miny}), Point({maxx, v.miny}), Point({maxx, maxy}),
            Point({v.minx, maxy})};
}

} // namespace

void render_svg(const PointSeq& P, const std::vector<Overlay>& overlays,
                const std::string& path) {
    if (P.dim() != 2) throw input_error("SVG rendering requires dimension 2");
    if (P.size() == 0) throw input_error("SVG rendering requires at least one point");
    Viewport view = viewport_of(P);

    // strokes and radii scale with the autosized view box
    const Rational scale = view.width < view.height ? view.width : view.height;
    std::string r_small = (scale * Rational(1, 150)).decimal(6);
    std::string r_big = (scale * Rational(1, 100)).decimal(6);
    std::string w_stroke = (scale * Rational(1, 400)).decimal(6);
    std::string w_thin = (scale * Rational(1, 900)).decimal(6);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << view.view_box()
        << "\">\n";
    svg << "<style>\n"
           ".pt{fill:#333;}\n"
           ".seta{fill:#c62828;}\n"
           ".setb{fill:#1565c0;}\n"
           ".hull{fill:none;stroke:#555;stroke-width:" << w_stroke << ";}\n"
           ".seg{stroke:#2e7d32;stroke-width:" << w_stroke << ";}\n"
           ".line{stroke:#999;stroke-width:" << w_thin << ";}\n"
           ".wedge{fill:#ffd54f;fill-opacity:0.35;stroke:none;}\n"
           "</style>\n";

    auto point_at = [&](const Point& p, const char* cls, const std::string& r) {
        auto [x, y] = view.map(p);
        svg << "<circle class=\"" << cls << "\" cx=\"" << x << "\" cy=\"" << y
            << "\" r=\"" << r << "\"/>\n";
    };
    auto segment = [&](const Point& a, const Point& b, const std::string& cls) {
        auto [x1, y1] = view.map(a);
        auto [x2, y2] = view.map(b);
        svg << "<line class=\"" << cls << "\" x1=\"" << x1 << "\" y1=\"" << y1
            << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\"/>\n";
    };
    auto polygon = [&](const std::vector<Point>& poly, const std::string& cls) {
        if (poly.size() < 3) return;
        svg << "<polygon class=\"" << cls << "\" points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i) {
            auto [x, y] = view.map(poly[i]);
            if (i) svg << " ";
            svg << x << "," << y;
        }
        svg << "\"/>\n";
    };

    for (const auto& overlay : overlays) {
        std::visit(
            [&](const auto& ov) {
                using T = std::decay_t<decltype(ov)>;
                if constexpr (std::is_same_v<T, MarkedPointsOverlay>) {
                    for (auto i : ov.indices.indices())
                        point_at(P[i], ov.cls.empty() ? "seta" : ov.cls.c_str(), r_big);
                } else if constexpr (std::is_same_v<T, HullOverlay>) {
                    std::vector<Point> pts;
                    for (auto i : ov.indices.indices()) pts.push_back(P[i]);
                    PointSeq sub(2, pts);
                    std::vector<std::size_t> hull = convex_hull_2d(sub);
                    std::vector<Point> poly;
                    for (auto h : hull) poly.push_back(sub[h]);
                    if (poly.size() >= 3)
                        polygon(poly, ov.cls.empty() ? "hull" : ov.cls);
                    else if (poly.size() == 2)
                        segment(poly[0], poly[1], ov.cls.empty() ? "hull" : ov.cls);
                } else if constexpr (std::is_same_v<T, SegmentsOverlay>) {
                    for (const auto& s : ov.segments)
                        segment(P[s.vertex_indices[0]], P[s.vertex_indices[1]],
                                ov.cls.empty() ? "seg" : ov.cls);
                } else if constexpr (std::is_same_v<T, LinesOverlay>) {
                    for (const auto& [i, j] : ov.pairs) {
                        // clip the full line to the viewport rectangle
                        Hyperplane line = hyperplane_through({P[i], P[j]});
                        std::vector<Point> corners = viewport_corners(view);
                        std::vector<Point> hits;
                        for (std::size_t e = 0; e < 4; ++e) {
                            const Point& a = corners[e];
                            const Point& b = corners[(e + 1) % 4];
                            int sa = line.side(a), sb = line.side(b);
                            if (sa == 0) hits.push_back(a);
                            if ((sa > 0 && sb < 0) || (sa < 0 && sb > 0))
                                hits.push_back(line_hyperplane_intersection(a, b, line));
                        }
                        if (hits.size() >= 2)
                            segment(hits.front(), hits.back(),
                                    ov.cls.empty() ? "line" : ov.cls);
                    }
                } else if constexpr (std::is_same_v<T, WedgeOverlay>) {
                    std::vector<Point> poly = viewport_corners(view);
                    for (const auto& c : ov.wedge.constraints) {
                        poly = clip_polygon(poly, c.p, c.q, c.required);
                        if (poly.size() < 3) break;
                    }
                    polygon(poly, ov.cls.empty() ? "wedge" : ov.cls);
                }
            },
            overlay);
    }

    for (const auto& p : P.points()) point_at(p, "pt", r_small);
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw input_error("cannot open '" + path + "' for writing");
    out << svg.str();
    if (!out) throw input_error("write failed for '" + path + "'");
}

} // namespace avoidkit
