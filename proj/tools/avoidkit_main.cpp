// avoidkit command line: generators, search, verification, reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "avoidkit/errors.hpp"
#include "avoidkit/fractional.hpp"
#include "avoidkit/highdim.hpp"
#include "avoidkit/sametype.hpp"
#include "avoidkit/toolkit.hpp"

using namespace avoidkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

void emit(const Report& report, const std::string& output_path) {
    for (const auto& [k, v] : report.entries) std::cout << k << "=" << v << "\n";
    if (!output_path.empty()) write_report(report, output_path);
}

std::string join_sizes(const std::vector<IndexSet>& parts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << " ";
        os << parts[i].size();
    }
    return os.str();
}

std::string join_counts(const std::vector<std::size_t>& counts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) os << " ";
        os << counts[i];
    }
    return os.str();
}

std::vector<Overlay> overlays_for_pair(const AvoidingPair& pair) {
    std::vector<Overlay> ov;
    std::vector<std::pair<std::size_t, std::size_t>> lines;
    auto add_side = [&](const IndexSet& s, const std::string& cls) {
        ov.push_back(HullOverlay{s, ""});
        ov.push_back(MarkedPointsOverlay{s, cls});
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                lines.emplace_back(s[i], s[j]);
    };
    add_side(pair.a, "seta");
    add_side(pair.b, "setb");
    ov.insert(ov.begin(), LinesOverlay{lines, ""});
    return ov;
}

std::vector<Overlay> overlays_for_artifact(const Report& artifact) {
    std::string type = artifact.require("type");
    std::vector<Overlay> ov;
    if (type == "avoiding_pair") {
        return overlays_for_pair(pair_from_report(artifact));
    } else if (type == "crossing_family") {
        CrossingFamily fam = family_from_report(artifact);
        ov.push_back(SegmentsOverlay{fam.simplices, ""});
    } else if (type == "fractional_family") {
        FractionalFamily fam = fractional_from_report(artifact);
        for (const auto& part : fam.a_parts) ov.push_back(MarkedPointsOverlay{part, "seta"});
        for (const auto& part : fam.b_parts) ov.push_back(MarkedPointsOverlay{part, "setb"});
    } else if (type == "partition") {
        PartitionParts parts = partition_from_report(artifact);
        for (std::size_t i = 0; i < parts.size(); ++i)
            ov.push_back(MarkedPointsOverlay{parts.parts[i], i % 2 ? "setb" : "seta"});
    } else {
        throw input_error("cannot render artifact type '" + type + "'");
    }
    return ov;
}

int run(int argc, char** argv) {
    CLI::App app{"mutually avoiding sets, crossing families, and positive-fraction "
                 "families over exact rational arithmetic"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "generate a seeded point set");
    std::string gen_kind = "uniform", gen_delta = "1/100", gen_out;
    std::size_t gen_n = 32, gen_dim = 2;
    std::uint64_t gen_seed = 0;
    gen_cmd->add_option("--kind", gen_kind, "uniform|perturbed_grid|convex|moment_curve");
    gen_cmd->add_option("--n", gen_n, "point count")->required();
    gen_cmd->add_option("--dim", gen_dim, "ambient dimension");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--delta", gen_delta, "perturbation radius (perturbed_grid)");
    gen_cmd->add_option("--output", gen_out, "points file")->required();

    // ---- find-avoiding ----
    auto* fa_cmd = app.add_subcommand("find-avoiding", "search for a mutually avoiding pair");
    std::string fa_in, fa_out, fa_svg;
    std::size_t fa_target = 0, fa_cap = 14;
    bool fa_oracle = false;
    fa_cmd->add_option("--input", fa_in, "points file")->required();
    fa_cmd->add_option("--m", fa_target, "target min size (heuristic exits once reached)");
    fa_cmd->add_option("--cap", fa_cap, "brute-force cap");
    fa_cmd->add_flag("--oracle", fa_oracle, "force the exhaustive oracle");
    fa_cmd->add_option("--output", fa_out, "artifact file");
    fa_cmd->add_option("--svg", fa_svg, "render the pair to this SVG");

    // ---- find-crossing ----
    auto* fc_cmd = app.add_subcommand("find-crossing", "search for a crossing family");
    std::string fc_in, fc_out, fc_svg;
    std::size_t fc_cap = 12;
    bool fc_oracle = false;
    fc_cmd->add_option("--input", fc_in, "points file")->required();
    fc_cmd->add_option("--cap", fc_cap, "brute-force cap");
    fc_cmd->add_flag("--oracle", fc_oracle, "force the exhaustive oracle");
    fc_cmd->add_option("--output", fc_out, "artifact file");
    fc_cmd->add_option("--svg", fc_svg, "render the family to this SVG");

    // ---- fractional ----
    auto* fr_cmd = app.add_subcommand("fractional", "positive-fraction family pipeline");
    std::string fr_in, fr_out, fr_svg;
    std::size_t fr_k = 2, fr_m = 9, fr_trials = 1000, fr_cap = 200000;
    std::uint64_t fr_seed = 0;
    bool fr_exhaustive = false;
    fr_cmd->add_option("--input", fr_in, "points file")->required();
    fr_cmd->add_option("--k", fr_k, "number of parts per side");
    fr_cmd->add_option("--m", fr_m, "avoiding-pair size (1 mod 4)");
    fr_cmd->add_option("--trials", fr_trials, "sampled transversal checks");
    fr_cmd->add_option("--cap", fr_cap, "exhaustive verification cap");
    fr_cmd->add_option("--seed", fr_seed, "sampling seed");
    fr_cmd->add_flag("--exhaustive", fr_exhaustive, "force exhaustive verification");
    fr_cmd->add_option("--output", fr_out, "artifact file");
    fr_cmd->add_option("--svg", fr_svg, "render the wedge regions and parts to this SVG");

    // ---- fractional-rd ----
    auto* rd_cmd = app.add_subcommand("fractional-rd", "positive-fraction family in R^d");
    std::string rd_in, rd_out;
    std::size_t rd_k = 2, rd_kprime = 0, rd_trials = 1000, rd_cap = 200000;
    std::uint64_t rd_seed = 0;
    bool rd_exhaustive = false;
    rd_cmd->add_option("--input", rd_in, "points file")->required();
    rd_cmd->add_option("--k", rd_k, "number of parts per side");
    rd_cmd->add_option("--kprime", rd_kprime, "partition part count (0 = default schedule)");
    rd_cmd->add_option("--trials", rd_trials, "sampled transversal checks");
    rd_cmd->add_option("--cap", rd_cap, "exhaustive verification cap");
    rd_cmd->add_option("--seed", rd_seed, "sampling seed");
    rd_cmd->add_flag("--exhaustive", rd_exhaustive, "force exhaustive verification");
    rd_cmd->add_option("--output", rd_out, "artifact file");

    // ---- crossing-rd ----
    auto* cr_cmd = app.add_subcommand("crossing-rd", "recursive crossing family in R^d");
    std::string cr_in, cr_out;
    std::size_t cr_cap = 12;
    cr_cmd->add_option("--input", cr_in, "points file")->required();
    cr_cmd->add_option("--cap", cr_cap, "brute-force cap for the pair search");
    cr_cmd->add_option("--output", cr_out, "artifact file");

    // ---- sametype-partition ----
    auto* sp_cmd = app.add_subcommand("sametype-partition", "same-type transversal partition");
    std::string sp_in, sp_out;
    std::size_t sp_k = 3, sp_cap = 200000, sp_trials = 1000;
    std::uint64_t sp_seed = 0;
    sp_cmd->add_option("--input", sp_in, "points file")->required();
    sp_cmd->add_option("--k", sp_k, "number of parts");
    sp_cmd->add_option("--cap", sp_cap, "exhaustive orientation-evaluation cap");
    sp_cmd->add_option("--trials", sp_trials, "sampling trials beyond the cap");
    sp_cmd->add_option("--seed", sp_seed, "sampling seed");
    sp_cmd->add_option("--output", sp_out, "artifact file");

    // ---- verify ----
    auto* vf_cmd = app.add_subcommand("verify", "re-verify an artifact against its points");
    std::string vf_in, vf_artifact;
    std::size_t vf_trials = 1000, vf_cap = 200000;
    std::uint64_t vf_seed = 0;
    bool vf_exhaustive = false;
    vf_cmd->add_option("--input", vf_in, "points file")->required();
    vf_cmd->add_option("--artifact", vf_artifact, "artifact file")->required();
    vf_cmd->add_option("--trials", vf_trials, "sampled checks");
    vf_cmd->add_option("--cap", vf_cap, "exhaustive cap");
    vf_cmd->add_option("--seed", vf_seed, "sampling seed");
    vf_cmd->add_flag("--exhaustive", vf_exhaustive, "force exhaustive verification");

    // ---- bench ----
    auto* bn_cmd = app.add_subcommand("bench", "tabulate achieved sizes for spec rows");
    std::string bn_in, bn_out;
    std::size_t bn_cap = 14;
    bn_cmd->add_option("--input", bn_in, "spec file: lines 'kind n dim seed [delta]'")
        ->required();
    bn_cmd->add_option("--output", bn_out, "CSV output")->required();
    bn_cmd->add_option("--cap", bn_cap, "brute-force cap");

    // ---- render ----
    auto* rn_cmd = app.add_subcommand("render", "render points and an optional artifact");
    std::string rn_in, rn_artifact, rn_out;
    rn_cmd->add_option("--input", rn_in, "points file")->required();
    rn_cmd->add_option("--artifact", rn_artifact, "artifact file");
    rn_cmd->add_option("--output", rn_out, "SVG output")->required();

    CLI11_PARSE(app, argc, argv);

    if (gen_cmd->parsed()) {
        GenSpec spec;
        spec.kind = gen_kind_from_string(gen_kind);
        spec.n = gen_n;
        spec.dim = gen_dim;
        spec.seed = gen_seed;
        if (spec.kind == GenKind::perturbed_grid) spec.delta = Rational::parse(gen_delta);
        GenResult res = generate(spec);
        write_points(res.points, gen_out);
        Report r;
        r.add("type", "gen");
        r.add("kind", gen_kind);
        r.add("n", std::to_string(spec.n));
        r.add("dim", std::to_string(spec.dim));
        r.add("seed", std::to_string(spec.seed));
        r.add("retries", std::to_string(res.retries));
        r.add("output", gen_out);
        emit(r, "");
        return kExitOk;
    }

    if (fa_cmd->parsed()) {
        PointSeq P = read_points(fa_in);
        SearchConfig cfg;
        cfg.avoiding_cap = fa_cap;
        cfg.avoiding_cap_rd = fa_cap;
        AvoidingPair pair;
        std::string method;
        if (fa_oracle || P.size() <= (P.dim() == 2 ? cfg.avoiding_cap : cfg.avoiding_cap_rd)) {
            method = "oracle";
            pair = P.dim() == 2 ? max_avoiding_bruteforce(P, cfg)
                                : max_avoiding_bruteforce_rd(P, cfg);
        } else {
            method = "heuristic";
            std::size_t target = fa_target ? fa_target : bound_sqrt_n12(P.size());
            pair = P.dim() == 2 ? find_avoiding_heuristic(P, target, cfg)
                                : find_avoiding_heuristic_rd(P, target, cfg);
        }
        Report r = report_from_pair(pair);
        r.add("method", method);
        r.add("min_size", std::to_string(std::min(pair.a.size(), pair.b.size())));
        emit(r, fa_out);
        if (!fa_svg.empty() && P.dim() == 2) render_svg(P, overlays_for_pair(pair), fa_svg);
        if (fa_target != 0 && std::min(pair.a.size(), pair.b.size()) < fa_target) {
            std::cerr << "requested min size " << fa_target << " not reached\n";
            return kExitVerification;
        }
        return kExitOk;
    }

    if (fc_cmd->parsed()) {
        PointSeq P = read_points(fc_in);
        SearchConfig cfg;
        cfg.crossing_cap = fc_cap;
        CrossingFamily fam;
        std::string method;
        if (fc_oracle || (P.dim() == 2 && P.size() <= cfg.crossing_cap)) {
            method = "oracle";
            fam = max_crossing_family_bruteforce(P, cfg);
        } else {
            method = "pipeline";
            fam = crossing_family_rd(P, cfg).family;
        }
        Report r = report_from_family(fam);
        r.add("method", method);
        emit(r, fc_out);
        if (!fc_svg.empty() && P.dim() == 2)
            render_svg(P, {SegmentsOverlay{fam.simplices, ""}}, fc_svg);
        return kExitOk;
    }

    if (fr_cmd->parsed()) {
        PointSeq P = read_points(fr_in);
        FractionalConfig cfg;
        cfg.pair_size = fr_m;
        FractionalTrace trace;
        FractionalFamily fam = fractional_family(P, fr_k, cfg, &trace);
        VerifyConfig vc;
        vc.trials = fr_trials;
        vc.exhaustive_cap = fr_cap;
        vc.seed = fr_seed;
        vc.force_exhaustive = fr_exhaustive;
        bool ok = verify_fractional(P, fam, vc);
        bool crossing_ok = verify_crossing_variant(P, fam, vc);
        Report r = report_from_fractional(fam);
        r.add("alpha", join_counts(trace.regions.counts_a));
        r.add("beta", join_counts(trace.regions.counts_b));
        r.add_indices("selected_a", trace.selected_a);
        r.add_indices("selected_b", trace.selected_b);
        r.add("part_sizes_a", join_sizes(fam.a_parts));
        r.add("part_sizes_b", join_sizes(fam.b_parts));
        r.add("seed", std::to_string(fr_seed));
        r.add("verdict", ok ? "pass" : "fail");
        r.add("crossing_verdict", crossing_ok ? "pass" : "fail");
        emit(r, fr_out);
        if (!fr_svg.empty()) {
            std::vector<Overlay> ov;
            for (auto i : trace.selected_a)
                ov.push_back(WedgeOverlay{trace.regions.a_regions[i], ""});
            for (auto i : trace.selected_b)
                ov.push_back(WedgeOverlay{trace.regions.b_regions[i], ""});
            for (const auto& part : fam.a_parts) ov.push_back(MarkedPointsOverlay{part, "seta"});
            for (const auto& part : fam.b_parts) ov.push_back(MarkedPointsOverlay{part, "setb"});
            render_svg(P, ov, fr_svg);
        }
        return ok && crossing_ok ? kExitOk : kExitVerification;
    }

    if (rd_cmd->parsed()) {
        PointSeq P = read_points(rd_in);
        FractionalRdConfig cfg;
        cfg.parts_override = rd_kprime;
        cfg.verify.trials = rd_trials;
        cfg.verify.exhaustive_cap = rd_cap;
        cfg.verify.seed = rd_seed;
        cfg.verify.force_exhaustive = rd_exhaustive;
        FractionalRdResult res = fractional_rd(P, rd_k, cfg);
        Report r = report_from_fractional(res.family);
        r.add("kprime", std::to_string(res.partition.parts.size()));
        r.add("epsilon_hat", res.partition.epsilon_hat.str());
        r.add("partition_method", to_string(res.partition.method));
        r.add("part_sizes_a", join_sizes(res.family.a_parts));
        r.add("part_sizes_b", join_sizes(res.family.b_parts));
        r.add("seed", std::to_string(rd_seed));
        r.add("verdict", "pass"); // fractional_rd verifies before returning
        emit(r, rd_out);
        return kExitOk;
    }

    if (cr_cmd->parsed()) {
        PointSeq P = read_points(cr_in);
        SearchConfig cfg;
        cfg.avoiding_cap = cr_cap;
        cfg.avoiding_cap_rd = cr_cap;
        CrossingRdResult res = crossing_family_rd(P, cfg);
        Report r = report_from_family(res.family);
        r.add("single_simplex_fallback", res.single_simplex_fallback ? "1" : "0");
        r.add("size", std::to_string(res.family.size()));
        emit(r, cr_out);
        return kExitOk;
    }

    if (sp_cmd->parsed()) {
        PointSeq P = read_points(sp_in);
        SameTypeConfig cfg;
        cfg.exhaustive_cap = sp_cap;
        cfg.trials = sp_trials;
        cfg.seed = sp_seed;
        PartitionResult res = same_type_partition(P, sp_k, cfg);
        Report r = report_from_partition(res.parts);
        std::ostringstream sizes;
        for (std::size_t i = 0; i < res.parts.size(); ++i) {
            if (i) sizes << " ";
            sizes << res.parts.parts[i].size();
        }
        r.add("sizes", sizes.str());
        r.add("epsilon_hat", res.epsilon_hat.str());
        r.add("method", to_string(res.method));
        r.add("shrink_rounds", std::to_string(res.shrink_rounds));
        r.add("singleton_fallback", res.singleton_fallback ? "1" : "0");
        r.add("verdict", "pass");
        emit(r, sp_out);
        return kExitOk;
    }

    if (vf_cmd->parsed()) {
        PointSeq P = read_points(vf_in);
        Report artifact = read_report(vf_artifact);
        std::string type = artifact.require("type");
        VerifyConfig vc;
        vc.trials = vf_trials;
        vc.exhaustive_cap = vf_cap;
        vc.seed = vf_seed;
        vc.force_exhaustive = vf_exhaustive;
        bool ok = false;
        Report r;
        r.add("type", "verify");
        r.add("artifact_type", type);
        if (type == "avoiding_pair") {
            AvoidingPair pair = pair_from_report(artifact);
            ok = mutually_avoiding(P, pair.a, pair.b);
        } else if (type == "crossing_family") {
            CrossingFamily fam = family_from_report(artifact);
            ok = is_crossing_family(P, fam.simplices);
        } else if (type == "fractional_family") {
            FractionalFamily fam = fractional_from_report(artifact);
            ok = verify_fractional(P, fam, vc);
            if (P.dim() == 2) {
                bool crossing_ok = verify_crossing_variant(P, fam, vc);
                r.add("crossing_verdict", crossing_ok ? "pass" : "fail");
                ok = ok && crossing_ok;
            }
        } else if (type == "partition") {
            PartitionParts parts = partition_from_report(artifact);
            SameTypeConfig cfg;
            cfg.exhaustive_cap = vf_cap;
            cfg.trials = vf_trials;
            cfg.seed = vf_seed;
            cfg.force_exhaustive = vf_exhaustive;
            SameTypeReport rep = same_type_transversals_report(P, parts, cfg);
            r.add("method", to_string(rep.method));
            ok = rep.same_type;
        } else {
            throw input_error("cannot verify artifact type '" + type + "'");
        }
        r.add("verdict", ok ? "pass" : "fail");
        emit(r, "");
        return ok ? kExitOk : kExitVerification;
    }

    if (bn_cmd->parsed()) {
        std::ifstream in(bn_in);
        if (!in) throw input_error("cannot open spec file '" + bn_in + "'");
        std::vector<GenSpec> specs;
        std::string line;
        while (std::getline(in, line)) {
            bool blank = true;
            for (char ch : line) {
                if (ch == '#') break;
                if (!std::isspace(static_cast<unsigned char>(ch))) { blank = false; break; }
            }
            if (blank) continue;
            specs.push_back(parse_gen_spec_line(line));
        }
        SearchConfig cfg;
        cfg.avoiding_cap = bn_cap;
        bench(specs, bn_out, cfg);
        std::cout << "rows=" << specs.size() << "\noutput=" << bn_out << "\n";
        return kExitOk;
    }

    if (rn_cmd->parsed()) {
        PointSeq P = read_points(rn_in);
        std::vector<Overlay> overlays;
        if (!rn_artifact.empty()) overlays = overlays_for_artifact(read_report(rn_artifact));
        render_svg(P, overlays, rn_out);
        std::cout << "output=" << rn_out << "\n";
        return kExitOk;
    }

    return kExitInput;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
}
