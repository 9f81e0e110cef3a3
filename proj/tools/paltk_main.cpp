#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paltk/constructions.hpp"
#include "paltk/core.hpp"
#include "paltk/extremal.hpp"
#include "paltk/gadgets.hpp"
#include "paltk/hom.hpp"
#include "paltk/lagrangian.hpp"
#include "paltk/painting.hpp"
#include "paltk/regularity.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUnknown = 2;

struct Digest {
    std::uint64_t value = 0xcbf29ce484222325ULL;
    void feed(const std::string& data) {
        for (unsigned char ch : data) {
            value ^= ch;
            value *= 0x100000001b3ULL;
        }
    }
    std::string hex() const {
        std::ostringstream out;
        out << "fnv1a:" << std::hex << value;
        return out.str();
    }
};

std::string read_input(const std::string& path, Digest& digest) {
    std::string text;
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    digest.feed(path);
    digest.feed(text);
    return text;
}

ordered_json verdict_json(paltk::Verdict v) {
    switch (v) {
        case paltk::Verdict::kYes:
            return true;
        case paltk::Verdict::kNo:
            return false;
        default:
            return "unknown";
    }
}

ordered_json palette_json(const paltk::Palette& p) {
    ordered_json out;
    out["color_count"] = p.color_count();
    auto patterns = ordered_json::array();
    for (const auto& q : p.patterns()) patterns.push_back({q[0], q[1], q[2]});
    out["patterns"] = std::move(patterns);
    return out;
}

ordered_json graph_json(const paltk::ThreeGraph& f) {
    ordered_json out;
    out["vertex_count"] = f.vertex_count();
    auto edges = ordered_json::array();
    for (const auto& e : f.edges()) edges.push_back({e[0], e[1], e[2]});
    out["edges"] = std::move(edges);
    return out;
}

ordered_json painting_json(const paltk::Painting& w) {
    ordered_json out;
    out["order"] = w.order;
    auto colors = ordered_json::array();
    for (const auto& [pr, color] : w.pair_coloring) {
        colors.push_back({pr.first, pr.second, color});
    }
    out["pair_coloring"] = std::move(colors);
    return out;
}

ordered_json witness_json(const paltk::IrregularityWitness& w) {
    ordered_json out;
    out["triple"] = {w.triple[0], w.triple[1], w.triple[2]};
    out["witness_sets"] = {w.witness_sets[0], w.witness_sets[1], w.witness_sets[2]};
    out["base_density"] = w.base_density;
    out["witness_density"] = w.witness_density;
    return out;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
    std::vector<int> out;
    std::stringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            out.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(what) + ": bad integer '" + token + "'");
        }
    }
    if (out.empty()) throw std::runtime_error(std::string(what) + ": empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            out.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(what) + ": bad number '" + token + "'");
        }
    }
    if (out.empty()) throw std::runtime_error(std::string(what) + ": empty list");
    return out;
}

paltk::Reduced3Graph reduced3_from_json(const nlohmann::json& j) {
    std::map<paltk::VertexPair, std::vector<int>> pair_sets;
    for (const auto& entry : j.at("pair_sets")) {
        pair_sets[{entry.at("i").get<int>(), entry.at("j").get<int>()}] =
            entry.at("vertices").get<std::vector<int>>();
    }
    std::vector<paltk::Reduced3Graph::Constituent> constituents;
    for (const auto& entry : j.at("constituents")) {
        paltk::Reduced3Graph::Constituent con;
        con.indices = {entry.at("i").get<int>(), entry.at("j").get<int>(),
                       entry.at("k").get<int>()};
        for (const auto& e : entry.at("edges")) {
            con.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
        }
        constituents.push_back(std::move(con));
    }
    return {j.at("t").get<int>(), std::move(pair_sets), std::move(constituents)};
}

struct Emitter {
    std::string command;
    Digest digest;
    bool pretty = false;
    std::optional<std::uint64_t> seed;
    std::optional<long long> budget;
    long long nodes = 0;
    bool exceeded = false;

    int emit(ordered_json result, int exit_code) const {
        ordered_json out;
        out["command"] = command;
        out["inputs_digest"] = digest.hex();
        if (seed) out["seed"] = *seed;
        if (budget) {
            out["budget_report"] = {
                {"budget", *budget}, {"nodes", nodes}, {"exceeded", exceeded}};
        }
        out["result"] = std::move(result);
        std::cout << (pretty ? out.dump(2) : out.dump()) << "\n";
        return exit_code;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"palette toolkit: paintings, Lagrangians, palette Turan search, "
                 "weak regularity, and ordering gadgets for 3-graphs"};
    app.require_subcommand(1);

    bool pretty = false;
    int threads = 1;
    app.add_flag("--json-pretty", pretty, "indent the JSON output");
    app.add_option("--threads", threads, "cap on worker threads inside operations");

    // ---- paints / count --------------------------------------------------
    std::string paints_palette, paints_graph;
    bool paints_count = false;
    long long paints_budget = paltk::kDefaultBudget;
    auto add_paints = [&](CLI::App* cmd, bool counting) {
        cmd->add_option("--palette", paints_palette, "palette file, or - for stdin")->required();
        cmd->add_option("--graph", paints_graph, "3-graph file, or - for stdin")->required();
        if (!counting) cmd->add_flag("--count", paints_count, "also count colorings");
        cmd->add_option("--budget", paints_budget, "search node budget");
    };
    auto* cmd_paints = app.add_subcommand("paints", "does the palette paint the 3-graph");
    add_paints(cmd_paints, false);
    auto* cmd_count = app.add_subcommand("count", "number of shadow colorings that paint");
    add_paints(cmd_count, true);

    // ---- hom / iso / dominates -------------------------------------------
    std::string hom_source, hom_target;
    long long hom_budget = paltk::kDefaultBudget;
    bool hom_injective = false;
    auto* cmd_hom = app.add_subcommand("hom", "palette homomorphism source -> target");
    cmd_hom->add_option("--source", hom_source)->required();
    cmd_hom->add_option("--target", hom_target)->required();
    cmd_hom->add_option("--budget", hom_budget);
    cmd_hom->add_flag("--injective", hom_injective, "require an embedding");

    std::string iso_a, iso_b;
    auto* cmd_iso = app.add_subcommand("iso", "palette isomorphism (canonical forms)");
    cmd_iso->add_option("--a", iso_a)->required();
    cmd_iso->add_option("--b", iso_b)->required();

    std::string dom_palette;
    int dom_a = 0, dom_b = 0;
    auto* cmd_dom = app.add_subcommand("dominates", "does color b dominate color a");
    cmd_dom->add_option("--palette", dom_palette)->required();
    cmd_dom->add_option("--a", dom_a)->required();
    cmd_dom->add_option("--b", dom_b)->required();

    // ---- lagrangian / reduced ---------------------------------------------
    std::string lag_palette;
    int lag_restarts = 16, lag_iters = 1000, lag_grid = 0;
    double lag_tol = 1e-9;
    std::uint64_t lag_seed = 0;
    auto* cmd_lag = app.add_subcommand("lagrangian", "maximize the Lagrange polynomial");
    cmd_lag->add_option("--palette", lag_palette)->required();
    cmd_lag->add_option("--restarts", lag_restarts);
    cmd_lag->add_option("--iters", lag_iters);
    cmd_lag->add_option("--tol", lag_tol);
    cmd_lag->add_option("--grid", lag_grid, "also run the grid oracle at this resolution");
    cmd_lag->add_option("--seed", lag_seed, "restart sampling seed")->required();

    std::string red_palette;
    double red_tol = 1e-7;
    int red_restarts = 16;
    std::uint64_t red_seed = 0;
    auto* cmd_red = app.add_subcommand("reduced", "is every proper subpalette strictly smaller");
    cmd_red->add_option("--palette", red_palette)->required();
    cmd_red->add_option("--tol", red_tol);
    cmd_red->add_option("--restarts", red_restarts);
    cmd_red->add_option("--seed", red_seed)->required();

    // ---- expal -------------------------------------------------------------
    int expal_n = 0;
    std::string expal_family;
    bool expal_nondeg = false, expal_heuristic = false;
    long long expal_budget = 100'000'000;
    std::uint64_t expal_seed = 2024;
    auto* cmd_expal = app.add_subcommand("expal", "palette extremal number on n colors");
    cmd_expal->add_option("--n", expal_n)->required();
    cmd_expal->add_option("--family", expal_family, "comma-separated 3-graph files")->required();
    cmd_expal->add_flag("--nondegenerate", expal_nondeg);
    bool expal_exhaustive_flag = false;
    cmd_expal->add_flag("--exhaustive", expal_exhaustive_flag, "exhaustive mode (default)");
    cmd_expal->add_flag("--heuristic", expal_heuristic, "greedy lower bound instead");
    cmd_expal->add_option("--budget", expal_budget);
    cmd_expal->add_option("--seed", expal_seed, "heuristic restart seed");

    // ---- regularize / clean -----------------------------------------------
    std::string reg_palette;
    double reg_eps = 0.25;
    int reg_m = 2, reg_samples = 40, reg_max_parts = 64;
    std::uint64_t reg_seed = 0;
    auto* cmd_reg = app.add_subcommand("regularize", "weak regularity partition");
    cmd_reg->add_option("--palette", reg_palette)->required();
    cmd_reg->add_option("--eps", reg_eps)->required();
    cmd_reg->add_option("--m", reg_m)->required();
    cmd_reg->add_option("--seed", reg_seed)->required();
    cmd_reg->add_option("--samples", reg_samples);
    cmd_reg->add_option("--max-parts", reg_max_parts);

    std::string clean_palette, clean_partition;
    double clean_alpha = 0.0;
    auto* cmd_clean = app.add_subcommand("clean", "density-threshold cleaning against a partition");
    cmd_clean->add_option("--palette", clean_palette)->required();
    cmd_clean->add_option("--partition", clean_partition,
                          "JSON file {parts: [[colors]], models: [[colors]]}")
        ->required();
    cmd_clean->add_option("--alpha", clean_alpha)->required();

    // ---- construct / audit --------------------------------------------------
    std::string con_palette, con_weights, con_audit, con_out;
    int con_n = 0, con_samples = 1000;
    std::uint64_t con_seed = 0;
    auto* cmd_con = app.add_subcommand("construct", "seeded palette construction");
    cmd_con->add_option("--palette", con_palette)->required();
    cmd_con->add_option("--weights", con_weights, "comma-separated simplex point")->required();
    cmd_con->add_option("--n", con_n)->required();
    cmd_con->add_option("--seed", con_seed)->required();
    cmd_con->add_option("--audit", con_audit, "d,eta to audit the construction");
    cmd_con->add_option("--samples", con_samples);
    cmd_con->add_option("--out", con_out, "write the constructed graph to this file");

    std::string audit_graph;
    double audit_d = 0.0, audit_eta = 0.0;
    int audit_samples = 1000;
    std::uint64_t audit_seed = 0;
    bool audit_sampled = false;
    auto* cmd_audit = app.add_subcommand("audit", "(d,eta)-density audit of a 3-graph");
    cmd_audit->add_option("--graph", audit_graph)->required();
    cmd_audit->add_option("--d", audit_d)->required();
    cmd_audit->add_option("--eta", audit_eta)->required();
    cmd_audit->add_option("--samples", audit_samples);
    cmd_audit->add_option("--seed", audit_seed)->required();
    cmd_audit->add_flag("--sampled", audit_sampled, "skip the exhaustive mode");

    // ---- gadget ------------------------------------------------------------
    auto* cmd_gadget = app.add_subcommand("gadget", "ordering gadgets");
    std::string gsigma_perm, gsigma_abcd;
    bool gsigma_verify = false;
    long long gsigma_budget = 500'000'000;
    auto* cmd_gsigma = cmd_gadget->add_subcommand("gsigma", "the three-edge linear gadget");
    cmd_gsigma->add_option("--perm", gsigma_perm, "permutation, e.g. 3,1,4,2")->required();
    cmd_gsigma->add_option("--abcd", gsigma_abcd, "override the ascent/descent tuple");
    cmd_gsigma->add_flag("--verify", gsigma_verify, "exhaust all orders of the gadget");
    cmd_gsigma->add_option("--budget", gsigma_budget);
    std::string tri_palette;
    auto* cmd_tri = cmd_gadget->add_subcommand("triangles", "triangle system of a palette");
    cmd_tri->add_option("--palette", tri_palette)->required();
    cmd_gadget->require_subcommand(1);

    // ---- reduced3 ------------------------------------------------------------
    std::string r3_file, r3_graph, r3_slice;
    double r3_density = -1.0;
    long long r3_budget = paltk::kDefaultBudget;
    auto* cmd_r3 = app.add_subcommand("reduced3", "reduced 3-graph operations");
    cmd_r3->add_option("--file", r3_file, "reduced 3-graph JSON")->required();
    cmd_r3->add_option("--graph", r3_graph, "search a reduced map of this 3-graph");
    cmd_r3->add_option("--d", r3_density, "check (d,.)-density of the constituents");
    cmd_r3->add_option("--slice", r3_slice, "extract the palette slice on these indices");
    cmd_r3->add_option("--budget", r3_budget);

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    Emitter emitter;
    emitter.pretty = pretty;

    try {
        if (app.got_subcommand(cmd_paints) || app.got_subcommand(cmd_count)) {
            const bool counting = app.got_subcommand(cmd_count) || paints_count;
            emitter.command = app.got_subcommand(cmd_count) ? "count" : "paints";
            emitter.budget = paints_budget;
            const auto palette = paltk::parse_palette(read_input(paints_palette, emitter.digest));
            const auto graph = paltk::parse_three_graph(read_input(paints_graph, emitter.digest));
            const auto search = paltk::find_painting(palette, graph, paints_budget);
            emitter.nodes = search.nodes;
            emitter.exceeded = search.verdict == paltk::Verdict::kUnknown;
            ordered_json result;
            result["result"] = verdict_json(search.verdict);
            if (search.witness) result["witness"] = painting_json(*search.witness);
            if (counting) {
                const auto count = paltk::count_paintings(palette, graph, paints_budget);
                emitter.nodes += count.nodes;
                if (!count.exact) emitter.exceeded = true;
                result["count"] = count.exact ? ordered_json(count.count) : ordered_json(nullptr);
            }
            result["nodes"] = emitter.nodes;
            return emitter.emit(std::move(result),
                                emitter.exceeded ? kExitUnknown : kExitOk);
        }
        if (app.got_subcommand(cmd_hom)) {
            emitter.command = "hom";
            emitter.budget = hom_budget;
            const auto source = paltk::parse_palette(read_input(hom_source, emitter.digest));
            const auto target = paltk::parse_palette(read_input(hom_target, emitter.digest));
            const auto search = hom_injective
                                    ? paltk::find_embedding(source, target, hom_budget)
                                    : paltk::find_homomorphism(source, target, hom_budget);
            emitter.nodes = search.nodes;
            emitter.exceeded = search.verdict == paltk::Verdict::kUnknown;
            ordered_json result;
            result["result"] = verdict_json(search.verdict);
            if (search.map) result["witness_map"] = *search.map;
            return emitter.emit(std::move(result),
                                emitter.exceeded ? kExitUnknown : kExitOk);
        }
        if (app.got_subcommand(cmd_iso)) {
            emitter.command = "iso";
            const auto a = paltk::parse_palette(read_input(iso_a, emitter.digest));
            const auto b = paltk::parse_palette(read_input(iso_b, emitter.digest));
            ordered_json result;
            result["result"] = paltk::is_isomorphic(a, b);
            return emitter.emit(std::move(result), kExitOk);
        }
        if (app.got_subcommand(cmd_dom)) {
            emitter.command = "dominates";
            const auto palette = paltk::parse_palette(read_input(dom_palette, emitter.digest));
            ordered_json result;
            result["result"] = paltk::dominates(palette, dom_a, dom_b);
            return emitter.emit(std::move(result), kExitOk);
        }
        if (app.got_subcommand(cmd_lag)) {
            emitter.command = "lagrangian";
            emitter.seed = lag_seed;
            const auto palette = paltk::parse_palette(read_input(lag_palette, emitter.digest));
            const auto lag = paltk::maximize_lagrangian(palette, lag_restarts, lag_iters, lag_tol,
                                                        lag_seed, threads);
            ordered_json result;
            result["value"] = lag.value;
            result["argmax"] = lag.argmax;
            result["converged"] = lag.converged;
            result["restarts_used"] = lag.restarts_used;
            result["density"] = paltk::density(palette).to_double();
            if (lag_grid > 0) result["grid_value"] = paltk::grid_oracle(palette, lag_grid);
            return emitter.emit(std::move(result), kExitOk);
        }
        if (app.got_subcommand(cmd_red)) {
            emitter.command = "reduced";
            emitter.seed = red_seed;
            const auto palette = paltk::parse_palette(read_input(red_palette, emitter.digest));
            const auto report = paltk::is_reduced(palette, red_tol, red_restarts, 1000, red_seed);
            ordered_json result;
            result["verdict"] = report.verdict == paltk::ReducedVerdict::kReduced
                                    ? "reduced"
                                    : (report.verdict == paltk::ReducedVerdict::kNotReduced
                                           ? "not_reduced"
                                           : "inconclusive");
            result["lambda"] = report.lambda;
            result["min_margin"] = report.min_margin;
            const bool inconclusive = report.verdict == paltk::ReducedVerdict::kInconclusive;
            return emitter.emit(std::move(result), inconclusive ? kExitUnknown : kExitOk);
        }
        if (app.got_subcommand(cmd_expal)) {
            emitter.command = "expal";
            emitter.budget = expal_budget;
            if (expal_heuristic) {
                if (cmd_expal->count("--seed") == 0) {
                    throw std::runtime_error("expal --heuristic requires --seed");
                }
                emitter.seed = expal_seed;
            }
            std::vector<paltk::ThreeGraph> family;
            std::stringstream files(expal_family);
            std::string path;
            while (std::getline(files, path, ',')) {
                family.push_back(paltk::parse_three_graph(read_input(path, emitter.digest)));
            }
            paltk::ExtremalOptions options;
            options.nondegenerate = expal_nondeg;
            options.exhaustive = !expal_heuristic;
            options.budget = expal_budget;
            options.seed = expal_seed;
            const auto report = paltk::ex_pal(expal_n, family, options);
            emitter.nodes = report.nodes_searched;
            emitter.exceeded = !report.exact && !expal_heuristic;
            ordered_json result;
            result["n"] = report.n;
            result["ex_value"] = report.ex_value;
            result["exact"] = report.exact;
            result["nodes_searched"] = report.nodes_searched;
            auto list = ordered_json::array();
            for (const auto& p : report.extremal_palettes) list.push_back(palette_json(p));
            result["extremal_palettes"] = std::move(list);
            return emitter.emit(std::move(result),
                                emitter.exceeded ? kExitUnknown : kExitOk);
        }
        if (app.got_subcommand(cmd_reg)) {
            emitter.command = "regularize";
            emitter.seed = reg_seed;
            const auto palette = paltk::parse_palette(read_input(reg_palette, emitter.digest));
            paltk::RegularizeOptions options;
            options.samples = reg_samples;
            options.max_parts = reg_max_parts;
            const auto cert = paltk::regularize(palette, reg_eps, reg_m, reg_seed, options);
            ordered_json result;
            result["epsilon"] = cert.epsilon;
            result["parts"] = cert.partition.parts();
            result["exceptional"] = cert.partition.exceptional();
            auto irregular = ordered_json::array();
            for (const auto& w : cert.irregular) irregular.push_back(witness_json(w));
            result["irregular_triples"] = std::move(irregular);
            result["audited_samples"] = cert.audited_samples;
            result["energy"] = cert.energy;
            result["energy_trace"] = cert.energy_trace;
            result["rounds"] = cert.rounds;
            result["complete"] = cert.complete;
            result["meets_triple_bound"] = cert.meets_triple_bound;
            return emitter.emit(std::move(result), cert.complete ? kExitOk : kExitUnknown);
        }
        if (app.got_subcommand(cmd_clean)) {
            emitter.command = "clean";
            const auto palette = paltk::parse_palette(read_input(clean_palette, emitter.digest));
            const auto doc = nlohmann::json::parse(read_input(clean_partition, emitter.digest));
            const auto parts = doc.at("parts").get<std::vector<std::vector<int>>>();
            const auto models = doc.at("models").get<std::vector<std::vector<int>>>();
            const auto cleaned = paltk::clean(palette, parts, models, clean_alpha);
            ordered_json result;
            result["reduced_palette"] = palette_json(cleaned.reduced);
            result["cleaned_pattern_count"] = cleaned.cleaned.pattern_count();
            result["removed"] = cleaned.removed;
            result["removed_by_bucket"] = cleaned.removed_by_bucket;
            return emitter.emit(std::move(result), kExitOk);
        }
        if (app.got_subcommand(cmd_con)) {
            emitter.command = "construct";
            emitter.seed = con_seed;
            const auto palette = paltk::parse_palette(read_input(con_palette, emitter.digest));
            const paltk::WeightVector weights(parse_double_list(con_weights, "--weights"));
            emitter.digest.feed(con_weights);
            const auto construction =
                paltk::palette_construction(palette, weights, con_n, con_seed);
            ordered_json result;
            result["n"] = con_n;
            result["edges"] = construction.graph.edge_count();
            const double total = static_cast<double>(con_n) * (con_n - 1) * (con_n - 2) / 6.0;
            result["edge_density"] = construction.graph.edge_count() / total;
            result["lambda_at_weights"] = paltk::lambda_eval(palette, weights);
            if (!con_audit.empty()) {
                const auto params = parse_double_list(con_audit, "--audit");
                if (params.size() != 2) throw std::runtime_error("--audit wants d,eta");
                const auto audit = paltk::d_eta_density_audit(construction.graph, params[0],
                                                              params[1], con_samples, con_seed);
                result["audit"] = {{"dense", audit.dense},
                                   {"worst_margin", audit.worst_margin},
                                   {"exhaustive", audit.exhaustive},
                                   {"subsets_checked", audit.subsets_checked}};
            }
            if (!con_out.empty()) {
                std::ofstream out(con_out);
                if (!out) throw std::runtime_error("cannot write '" + con_out + "'");
                out << paltk::serialize(construction.graph);
                result["out"] = con_out;
            }
            return emitter.emit(std::move(result), kExitOk);
        }
        if (app.got_subcommand(cmd_audit)) {
            emitter.command = "audit";
            emitter.seed = audit_seed;
            const auto graph = paltk::parse_three_graph(read_input(audit_graph, emitter.digest));
            const auto audit = paltk::d_eta_density_audit(
                graph, audit_d, audit_eta, audit_samples, audit_seed,
                audit_sampled ? paltk::DensityAuditMode::kSampled
                              : paltk::DensityAuditMode::kAuto);
            ordered_json result;
            result["dense"] = audit.dense;
            result["worst_margin"] = audit.worst_margin;
            result["worst_subset"] = audit.worst_subset;
            result["exhaustive"] = audit.exhaustive;
            result["subsets_checked"] = audit.subsets_checked;
            return emitter.emit(std::move(result), kExitOk);
        }
        if (app.got_subcommand(cmd_gadget)) {
            if (cmd_gadget->got_subcommand(cmd_gsigma)) {
                emitter.command = "gadget gsigma";
                emitter.digest.feed(gsigma_perm);
                const auto sigma = parse_int_list(gsigma_perm, "--perm");
                std::optional<std::array<int, 4>> abcd;
                if (!gsigma_abcd.empty()) {
                    const auto vals = parse_int_list(gsigma_abcd, "--abcd");
                    if (vals.size() != 4) throw std::runtime_error("--abcd wants a,b,c,d");
                    abcd = std::array<int, 4>{vals[0], vals[1], vals[2], vals[3]};
                    emitter.digest.feed(gsigma_abcd);
                }
                const auto g = paltk::build_g_sigma(sigma, abcd);
                ordered_json result;
                result["k"] = g.k;
                result["abcd"] = {g.abcd[0], g.abcd[1], g.abcd[2], g.abcd[3]};
                result["vertex_count"] = g.vertex_count;
                result["edges"] = {g.edges[0], g.edges[1], g.edges[2]};
                int exit_code = kExitOk;
                if (gsigma_verify) {
                    emitter.budget = gsigma_budget;
                    const auto claim = paltk::verify_gsigma_claim(g, gsigma_budget);
                    emitter.nodes = claim.orders_checked;
                    emitter.exceeded = !claim.complete;
                    result["claim_holds"] =
                        claim.complete ? ordered_json(claim.holds) : ordered_json("unknown");
                    result["orders_checked"] = claim.orders_checked;
                    if (claim.counterexample_order) {
                        result["counterexample_order"] = *claim.counterexample_order;
                    }
                    if (!claim.complete) exit_code = kExitUnknown;
                }
                return emitter.emit(std::move(result), exit_code);
            }
            emitter.command = "gadget triangles";
            const auto palette = paltk::parse_palette(read_input(tri_palette, emitter.digest));
            const auto system = paltk::build_triangle_system(palette);
            const auto matching = paltk::hypergraph_from_colored_graph(system, palette);
            ordered_json result;
            result["vertex_count"] = system.vertex_count;
            auto labeled = ordered_json::array();
            for (const auto& [pr, color] : system.edge_labels) {
                labeled.push_back({pr.first, pr.second, color});
            }
            result["labeled_edges"] = std::move(labeled);
            result["hypergraph"] = graph_json(matching);
            return emitter.emit(std::move(result), kExitOk);
        }
        if (app.got_subcommand(cmd_r3)) {
            emitter.command = "reduced3";
            emitter.budget = r3_budget;
            const auto doc = nlohmann::json::parse(read_input(r3_file, emitter.digest));
            const auto reduced3 = reduced3_from_json(doc);
            ordered_json result;
            result["t"] = reduced3.index_count();
            int exit_code = kExitOk;
            if (r3_density >= 0.0) {
                result["uniformly_dense"] =
                    paltk::is_uniformly_dense_reduced(reduced3, r3_density);
            }
            if (!r3_graph.empty()) {
                const auto graph =
                    paltk::parse_three_graph(read_input(r3_graph, emitter.digest));
                const auto search = paltk::reduced_map_exists(graph, reduced3, r3_budget);
                emitter.nodes = search.nodes;
                emitter.exceeded = search.verdict == paltk::Verdict::kUnknown;
                result["reduced_map"] = verdict_json(search.verdict);
                if (search.map) {
                    result["lambda"] = search.map->index_of_vertex;
                    auto phi = ordered_json::array();
                    for (const auto& [pr, vertex] : search.map->pair_image) {
                        phi.push_back({pr.first, pr.second, vertex});
                    }
                    result["phi"] = std::move(phi);
                }
                if (emitter.exceeded) exit_code = kExitUnknown;
            }
            if (!r3_slice.empty()) {
                const auto indices = parse_int_list(r3_slice, "--slice");
                std::map<paltk::VertexPair, std::vector<int>> ident;
                if (doc.contains("identification")) {
                    for (const auto& entry : doc.at("identification")) {
                        ident[{entry.at("i").get<int>(), entry.at("j").get<int>()}] =
                            entry.at("vertices").get<std::vector<int>>();
                    }
                } else {
                    // default: identify each full pair set in listed order
                    for (std::size_t i = 0; i < indices.size(); ++i) {
                        for (std::size_t j = i + 1; j < indices.size(); ++j) {
                            const int lo = std::min(indices[i], indices[j]);
                            const int hi = std::max(indices[i], indices[j]);
                            ident[{lo, hi}] = reduced3.pair_set(lo, hi);
                        }
                    }
                }
                result["slice"] = palette_json(paltk::palette_from_slice(reduced3, indices, ident));
            }
            return emitter.emit(std::move(result), exit_code);
        }
        return kExitInputError;  // unreachable: a subcommand is required
    } catch (const paltk::ParseError& e) {
        ordered_json out;
        out["command"] = emitter.command;
        out["error"] = {{"message", e.what()}, {"line", e.line()}};
        std::cout << (pretty ? out.dump(2) : out.dump()) << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        ordered_json out;
        out["command"] = emitter.command;
        out["error"] = {{"message", e.what()}};
        std::cout << (pretty ? out.dump(2) : out.dump()) << "\n";
        return kExitInputError;
    }
}
