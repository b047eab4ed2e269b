#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "avoidkit/avoidance.hpp"
#include "avoidkit/fractional.hpp"
#include "avoidkit/geometry.hpp"
#include "avoidkit/sametype.hpp"

namespace avoidkit {

enum class GenKind { uniform, perturbed_grid, convex, moment_curve };

GenKind gen_kind_from_string(const std::string& s);
std::string to_string(GenKind kind);

struct GenSpec {
    GenKind kind = GenKind::uniform;
    std::size_t n = 1;
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    Rational delta; // perturbation radius, perturbed_grid only
};

struct GenResult {
    PointSeq points;
    std::size_t retries = 0;
};

/// Deterministic seeded generation; uniform and perturbed-grid outputs
/// are re-drawn with derived sub-seeds until they are in general
/// position (at most 1000 retries, count reported).
GenResult generate(const GenSpec& spec);

PointSeq read_points(const std::string& path);
void write_points(const PointSeq& P, const std::string& path);

// --- artifact reports: line-oriented key=value text ---------------------

/// Ordered key=value lines; keys may repeat (parts, simplices).
struct Report {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value);
    void add_indices(const std::string& key, const std::vector<std::size_t>& idx);
    std::optional<std::string> get(const std::string& key) const;
    std::string require(const std::string& key) const;
    std::vector<std::string> get_all(const std::string& key) const;
};

Report read_report(const std::string& path);
void write_report(const Report& report, const std::string& path);

Report report_from_pair(const AvoidingPair& pair);
AvoidingPair pair_from_report(const Report& report);
Report report_from_family(const CrossingFamily& fam);
CrossingFamily family_from_report(const Report& report);
Report report_from_fractional(const FractionalFamily& fam);
FractionalFamily fractional_from_report(const Report& report);
Report report_from_partition(const PartitionParts& parts);
PartitionParts partition_from_report(const Report& report);

std::vector<std::size_t> parse_index_list(const std::string& text);

// --- SVG rendering -------------------------------------------------------

struct MarkedPointsOverlay {
    IndexSet indices;
    std::string cls; // CSS class, e.g. "seta"
};
struct HullOverlay {
    IndexSet indices;
    std::string cls;
};
struct SegmentsOverlay {
    std::vector<Simplex> segments;
    std::string cls;
};
/// Full lines through point pairs, clipped to the viewport.
struct LinesOverlay {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::string cls;
};
struct WedgeOverlay {
    Wedge wedge;
    std::string cls;
};

using Overlay = std::variant<MarkedPointsOverlay, HullOverlay, SegmentsOverlay,
                             LinesOverlay, WedgeOverlay>;

/// Planar SVG with the points and the overlays in declaration order;
/// exact arithmetic throughout, decimal output with 6 digits only at
/// the final write.
void render_svg(const PointSeq& P, const std::vector<Overlay>& overlays,
                const std::string& path);

// --- bench ---------------------------------------------------------------

struct BenchRow {
    GenSpec spec;
    std::size_t avoiding_min_size = 0;
    std::size_t crossing_size = 0;
    std::size_t bound_sqrt_n12 = 0; // smallest integer m with 12 m^2 >= n
    std::string method;             // oracle | heuristic
    std::string status;             // ok | error: ...
};

/// Smallest integer m >= 1 with 12 m^2 >= n.
std::size_t bound_sqrt_n12(std::size_t n);

std::vector<BenchRow> bench_rows(const std::vector<GenSpec>& specs, const SearchConfig& cfg = {});
std::string bench_csv(const std::vector<BenchRow>& rows);
void bench(const std::vector<GenSpec>& specs, const std::string& out_path,
           const SearchConfig& cfg = {});

/// Parses one bench spec line: `kind n dim seed [delta]`.
GenSpec parse_gen_spec_line(const std::string& line);

} // namespace avoidkit
