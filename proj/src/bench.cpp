#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "avoidkit/errors.hpp"
#include "avoidkit/highdim.hpp"
#include "avoidkit/parallel.hpp"
#include "avoidkit/toolkit.hpp"

namespace avoidkit {

std::size_t thread_budget() {
    if (const char* env = std::getenv("AVOIDKIT_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::min<std::size_t>(hw == 0 ? 1 : hw, 8);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

GenSpec parse_gen_spec_line(const std::string& line) {
    std::istringstream is(line);
    std::string kind;
    if (!(is >> kind)) throw input_error("empty bench spec line");
    GenSpec spec;
    spec.kind = gen_kind_from_string(kind);
    long n = 0, dim = 0;
    unsigned long long seed = 0;
    if (!(is >> n >> dim >> seed))
        throw input_error("bench spec line needs 'kind n dim seed [delta]'");
    if (n < 1 || dim < 1) throw input_error("bench spec needs n >= 1 and dim >= 1");
    spec.n = static_cast<std::size_t>(n);
    spec.dim = static_cast<std::size_t>(dim);
    spec.seed = seed;
    std::string delta;
    if (is >> delta) spec.delta = Rational::parse(delta);
    else if (spec.kind == GenKind::perturbed_grid) spec.delta = Rational(1, 100);
    return spec;
}

std::vector<BenchRow> bench_rows(const std::vector<GenSpec>& specs, const SearchConfig& cfg) {
    std::vector<BenchRow> rows(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) {
        BenchRow row;
        row.spec = specs[i];
        row.bound_sqrt_n12 = bound_sqrt_n12(specs[i].n);
        try {
            GenResult gen = generate(specs[i]);
            const PointSeq& P = gen.points;
            AvoidingPair pair;
            if (P.size() <= (P.dim() == 2 ? cfg.avoiding_cap : cfg.avoiding_cap_rd)) {
                row.method = "oracle";
                pair = max_avoiding_bruteforce(P, cfg);
            } else {
                row.method = "heuristic";
                if (P.dim() == 2) {
                    pair = find_avoiding_heuristic(P, row.bound_sqrt_n12, cfg);
                } else {
                    pair = find_avoiding_heuristic_rd(P, row.bound_sqrt_n12, cfg);
                }
            }
            row.avoiding_min_size = std::min(pair.a.size(), pair.b.size());
            if (P.dim() == 2) {
                const std::size_t k = row.avoiding_min_size;
                auto first_k = [&](const IndexSet& s) {
                    std::vector<std::size_t> v(
                        s.indices().begin(),
                        s.indices().begin() + static_cast<std::ptrdiff_t>(k));
                    return IndexSet(v);
                };
                AvoidingPair trimmed{first_k(pair.a), first_k(pair.b), true};
                CrossingFamily fam = crossing_family_from_avoiding(P, trimmed);
                row.crossing_size = fam.size();
            } else {
                CrossingRdResult res = crossing_family_rd(P, cfg);
                row.crossing_size = res.family.size();
            }
            row.status = "ok";
        } catch (const std::exception& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            row.status = "error: " + msg;
        }
        rows[i] = std::move(row);
    });
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "# format=1\n";
    os << "kind,n,dim,seed,delta,avoiding_min_size,crossing_size,bound_sqrt_n12,method,status\n";
    for (const auto& row : rows) {
        os << to_string(row.spec.kind) << "," << row.spec.n << "," << row.spec.dim << ","
           << row.spec.seed << "," << row.spec.delta.str() << "," << row.avoiding_min_size
           << "," << row.crossing_size << "," << row.bound_sqrt_n12 << "," << row.method
           << "," << row.status << "\n";
    }
    return os.str();
}

void bench(const std::vector<GenSpec>& specs, const std::string& out_path,
           const SearchConfig& cfg) {
    std::vector<BenchRow> rows = bench_rows(specs, cfg);
    std::ofstream out(out_path);
    if (!out) throw input_error("cannot open '" + out_path + "' for writing");
    out << bench_csv(rows);
    if (!out) throw input_error("write failed for '" + out_path + "'");
}

} // namespace avoidkit
