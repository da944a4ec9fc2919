// hcs: command-line surface over the library.  Every command reads JSON or
// DIMACS files, writes JSON/DIMACS/CSV to --out (default stdout), and maps
// errors to exit codes: 2 invalid parameter, 3 size limit, 4 experiment
// failure.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hcs/errors.hpp"
#include "hcs/experiments.hpp"
#include "hcs/gaussian.hpp"
#include "hcs/io.hpp"
#include "hcs/labelcover.hpp"
#include "hcs/operators.hpp"
#include "hcs/oracles.hpp"
#include "hcs/qfunc.hpp"
#include "hcs/reduction.hpp"

namespace {

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    hcs::SearchBudget budget;
};

void emit(const Globals& g, const std::string& payload) {
    if (g.out.empty())
        std::cout << payload;
    else
        hcs::write_text_file(g.out, payload);
}

void emit_json(const Globals& g, const hcs::Json& j) { emit(g, j.dump(2) + "\n"); }

hcs::MarkovOp operator_by_name(const std::string& kind, int q, double rho) {
    if (kind == "almost3") return hcs::gadget_operator(hcs::GadgetKind::almost3);
    if (kind == "col4") return hcs::gadget_operator(hcs::GadgetKind::col4);
    if (kind == "alpha") return hcs::gadget_operator(hcs::GadgetKind::alpha);
    if (kind == "beckner")
        return hcs::beckner(q, hcs::Rat(std::llround(rho * 1000000000.0), 1000000000LL));
    throw hcs::InvalidParameterError("unknown operator kind: " + kind);
}

// Transform outputs wrap the instance under "lc"; accept both shapes here so
// transform steps chain.
hcs::BipartiteLC bipartite_input(const std::string& path) {
    hcs::Json j = hcs::read_json_file(path);
    if (j.is_object() && j.contains("lc")) return hcs::bipartite_from_json(j.at("lc"));
    return hcs::bipartite_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analytic toolkit for hypercube reductions"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--seed", g.seed, "seed for stochastic steps");
    app.add_option("--out", g.out, "output path (default: stdout)");
    app.add_option("--budget-vertices", g.budget.max_vertices, "search budget: vertices");
    app.add_option("--budget-edges", g.budget.max_edges, "search budget: edges");
    app.add_option("--budget-seconds", g.budget.time_limit_seconds,
                   "search budget: wall seconds");

    // fourier: moments and influence profile of a function table
    std::string fourier_in;
    int fourier_k = 3;
    auto* fourier = app.add_subcommand("fourier", "analyze a function on [q]^n");
    fourier->add_option("--in", fourier_in, "QFunction JSON file")->required();
    fourier->add_option("--k", fourier_k, "low-level influence cutoff");
    fourier->callback([&] {
        hcs::QFunction f = hcs::qfunction_from_json(hcs::read_json_file(fourier_in));
        hcs::FourierTable table = hcs::transform(f, hcs::build_basis(f.q));
        hcs::Json influences = hcs::Json::array();
        hcs::Json low = hcs::Json::array();
        for (int i = 1; i <= f.n; ++i) {
            influences.push_back(hcs::influence_from_fourier(table, i));
            low.push_back(hcs::low_level_influence(table, i, fourier_k));
        }
        emit_json(g, hcs::Json{{"q", f.q},
                               {"n", f.n},
                               {"mean", hcs::mean(f)},
                               {"variance", hcs::variance(f)},
                               {"k", fourier_k},
                               {"influences", influences},
                               {"low_level_influences", low}});
    });

    // op: emit an operator with its spectrum
    std::string op_kind;
    int op_q = 3;
    double op_rho = 0.5;
    auto* op = app.add_subcommand("op", "emit a Markov operator");
    op->add_option("--kind", op_kind, "almost3|col4|alpha|beckner")->required();
    op->add_option("--q", op_q, "symbol count (beckner)");
    op->add_option("--rho", op_rho, "correlation (beckner)");
    op->callback([&] {
        hcs::MarkovOp T = operator_by_name(op_kind, op_q, op_rho);
        hcs::Json j = hcs::to_json(T);
        hcs::Json eig = hcs::Json::array();
        for (Eigen::Index i = 0; i < T.eigenvalues.size(); ++i)
            eig.push_back(T.eigenvalues(i));
        j["eigenvalues"] = std::move(eig);
        j["spectral_radius"] = hcs::spectral_radius(T);
        emit_json(g, j);
    });

    // gaussian: stability quantities
    double ga_rho = 0.0, ga_mu = 0.5, ga_nu = 0.5;
    auto* gaussian = app.add_subcommand("gaussian", "Gaussian stability bounds");
    gaussian->add_option("--rho", ga_rho, "correlation")->required();
    gaussian->add_option("--mu", ga_mu, "first mass")->required();
    gaussian->add_option("--nu", ga_nu, "second mass")->required();
    gaussian->callback([&] {
        const double upper = hcs::lambda_gauss(ga_rho, ga_mu, ga_nu);
        const double lower = ga_mu - hcs::lambda_gauss(ga_rho, ga_mu, 1.0 - ga_nu);
        emit_json(g, hcs::Json{{"rho", ga_rho},
                               {"mu", ga_mu},
                               {"nu", ga_nu},
                               {"lambda_upper", upper},
                               {"lambda_lower", lower}});
    });

    // lc: label-cover instances
    auto* lc = app.add_subcommand("lc", "label-cover instances");
    lc->require_subcommand(1);

    std::string lcg_family = "one-to-one", lcg_hidden_out;
    int lcg_vertices = 3, lcg_edges = 3, lcg_range = 2;
    auto* lc_gen = lc->add_subcommand("gen", "generate a planted instance");
    lc_gen->add_option("--family", lcg_family, "one-to-one|two-to-two|alpha");
    lc_gen->add_option("--vertices", lcg_vertices, "vertex count");
    lc_gen->add_option("--edges", lcg_edges, "edge count");
    lc_gen->add_option("--range", lcg_range, "label range");
    lc_gen->add_option("--hidden-out", lcg_hidden_out, "write the hidden labeling here");
    lc_gen->callback([&] {
        hcs::PlantedInstance planted =
            hcs::gen_planted(hcs::parse_constraint_family(lcg_family), lcg_vertices,
                             lcg_edges, lcg_range, g.seed);
        if (!lcg_hidden_out.empty())
            hcs::write_text_file(lcg_hidden_out,
                                 hcs::to_json(planted.hidden).dump(2) + "\n");
        emit_json(g, hcs::to_json(planted.instance));
    });

    std::string lce_in, lce_labels;
    auto* lc_eval = lc->add_subcommand("eval", "evaluate a t-labeling");
    lc_eval->add_option("--in", lce_in, "instance JSON file")->required();
    lc_eval->add_option("--labels", lce_labels, "TLabeling JSON file")->required();
    lc_eval->callback([&] {
        hcs::LabelCoverInstance G = hcs::instance_from_json(hcs::read_json_file(lce_in));
        hcs::TLabeling L = hcs::tlabeling_from_json(hcs::read_json_file(lce_labels));
        emit_json(g, hcs::Json{{"value", hcs::to_string(hcs::eval_sat(G, L))}});
    });

    std::string lct_step, lct_in;
    int lct_ell = 2;
    auto* lc_transform = lc->add_subcommand("transform", "bipartite transformations");
    lc_transform->add_option("--step", lct_step, "normalize|unweight|power|collapse")
        ->required();
    lc_transform->add_option("--in", lct_in, "bipartite instance JSON file")->required();
    lc_transform->add_option("--ell", lct_ell, "expansion parameter");
    lc_transform->callback([&] {
        hcs::BipartiteLC input = bipartite_input(lct_in);
        if (lct_step == "normalize") {
            hcs::NormalizedLC r = hcs::transform_normalize(input, lct_ell);
            emit_json(g, hcs::Json{{"lc", hcs::to_json(r.lc)},
                                   {"origin", r.origin},
                                   {"skipped", r.skipped}});
        } else if (lct_step == "unweight") {
            hcs::UnweightedLC r = hcs::transform_unweight(input, lct_ell);
            emit_json(g, hcs::Json{{"lc", hcs::to_json(r.lc)}, {"y0", r.y0}});
        } else if (lct_step == "power") {
            hcs::PoweredLC r = hcs::transform_power(input, lct_ell);
            emit_json(g, hcs::Json{{"lc", hcs::to_json(r.lc)},
                                   {"origin_x", r.origin_x},
                                   {"origin_choice", r.origin_choice}});
        } else if (lct_step == "collapse") {
            hcs::CollapsedLC r = hcs::transform_collapse(input);
            hcs::Json origin = hcs::Json::array();
            for (const auto& o : r.origin)
                origin.push_back(hcs::Json::array({o[0], o[1], o[2]}));
            emit_json(g, hcs::Json{{"lc", hcs::to_json(r.lc)}, {"origin", origin}});
        } else {
            throw hcs::InvalidParameterError("unknown transform step: " + lct_step);
        }
    });

    // reduce: instance -> block graph in DIMACS form
    std::string red_kind, red_in;
    auto* red = app.add_subcommand("reduce", "build the coloring gadget graph");
    red->add_option("--kind", red_kind, "almost3|col4|col3")->required();
    red->add_option("--in", red_in, "instance JSON file")->required();
    red->callback([&] {
        hcs::LabelCoverInstance G = hcs::instance_from_json(hcs::read_json_file(red_in));
        emit(g, hcs::to_dimacs(hcs::reduce(hcs::parse_reduction_kind(red_kind), G)));
    });

    // decode: independent set -> label lists
    std::string dec_kind, dec_in, dec_set;
    int dec_k = 3;
    double dec_delta = 0.05, dec_epsilon = 0.1;
    auto* dec = app.add_subcommand("decode", "decode an independent set");
    dec->add_option("--kind", dec_kind, "almost3|col4|col3")->required();
    dec->add_option("--in", dec_in, "instance JSON file")->required();
    dec->add_option("--set", dec_set, "vertex id set JSON file")->required();
    dec->add_option("--k", dec_k, "low-level influence cutoff");
    dec->add_option("--delta", dec_delta, "influence threshold");
    dec->add_option("--epsilon", dec_epsilon, "density threshold");
    dec->callback([&] {
        hcs::LabelCoverInstance G = hcs::instance_from_json(hcs::read_json_file(dec_in));
        hcs::BlockGraph bg = hcs::reduce(hcs::parse_reduction_kind(dec_kind), G);
        auto ids = hcs::ids_from_json(hcs::read_json_file(dec_set));
        emit_json(g, hcs::to_json(
                         hcs::decode_tlabeling(bg, ids, dec_k, dec_delta, dec_epsilon)));
    });

    // oracle: exact solvers
    auto* oracle = app.add_subcommand("oracle", "exact reference solvers");
    oracle->require_subcommand(1);

    std::string chrom_in;
    int chrom_qmax = 4;
    auto* chrom = oracle->add_subcommand("chrom", "chromatic number");
    chrom->add_option("--in", chrom_in, "DIMACS graph file")->required();
    chrom->add_option("--qmax", chrom_qmax, "largest color count tried");
    chrom->callback([&] {
        hcs::Graph graph = hcs::graph_from_dimacs(hcs::slurp_file(chrom_in));
        emit_json(g, hcs::to_json(hcs::chromatic_number(graph, chrom_qmax, g.budget)));
    });

    std::string mis_in;
    auto* mis = oracle->add_subcommand("mis", "maximum independent set");
    mis->add_option("--in", mis_in, "DIMACS graph file")->required();
    mis->callback([&] {
        hcs::Graph graph = hcs::graph_from_dimacs(hcs::slurp_file(mis_in));
        emit_json(g, hcs::to_json(hcs::max_independent_set(graph, g.budget)));
    });

    std::string lcb_in;
    int lcb_t = 1;
    auto* lcb = oracle->add_subcommand("lc-best", "optimal t-labeling");
    lcb->add_option("--in", lcb_in, "instance JSON file")->required();
    lcb->add_option("--t", lcb_t, "labels per vertex");
    lcb->callback([&] {
        hcs::LabelCoverInstance G = hcs::instance_from_json(hcs::read_json_file(lcb_in));
        emit_json(g, hcs::to_json(hcs::best_labeling(G, lcb_t, g.budget)));
    });

    // experiment: CSV drivers
    auto* exp = app.add_subcommand("experiment", "reproducible experiment drivers");
    exp->require_subcommand(1);
    hcs::ExperimentSpec spec;
    std::string exp_kind = "almost3";
    auto add_shape = [&](CLI::App* cmd) {
        cmd->add_option("--kind", exp_kind, "almost3|col4|col3");
        cmd->add_option("--vertices", spec.vertices, "instance vertices");
        cmd->add_option("--edges", spec.edges, "instance edges");
        cmd->add_option("--range", spec.range, "label range");
        cmd->add_option("--instances", spec.instances, "instances per run");
    };
    auto run_experiment = [&](const std::string& name) {
        spec.name = name;
        spec.seed = g.seed;
        spec.kind = hcs::parse_reduction_kind(exp_kind);
        spec.budget = g.budget;
        hcs::CsvReport report;
        if (name == "completeness")
            report = hcs::run_completeness(spec);
        else if (name == "soundness")
            report = hcs::run_soundness_probe(spec);
        else
            report = hcs::run_stability_scan(spec);
        emit(g, report.text());
    };

    auto* exp_comp = exp->add_subcommand("completeness", "planted colorings");
    add_shape(exp_comp);
    exp_comp->callback([&] { run_experiment("completeness"); });

    auto* exp_sound = exp->add_subcommand("soundness", "decode independent sets");
    add_shape(exp_sound);
    exp_sound->add_option("--k", spec.k, "low-level influence cutoff");
    exp_sound->add_option("--delta", spec.delta, "influence threshold");
    exp_sound->add_option("--epsilon", spec.epsilon, "density threshold");
    exp_sound->add_option("--set-source", spec.set_source, "class|mis|empty|random");
    exp_sound->callback([&] { run_experiment("soundness"); });

    auto* exp_stab = exp->add_subcommand("stability", "Gaussian bound scan");
    exp_stab->add_option("--family", spec.family, "constants|dictators|plurality|mixture");
    exp_stab->add_option("--op", spec.op, "beckner|almost3|alpha");
    exp_stab->add_option("--q", spec.q, "symbol count");
    exp_stab->add_option("--n", spec.n, "coordinates (pairs for alpha)");
    exp_stab->add_option("--rho-grid", spec.rho_grid, "correlation grid values");
    exp_stab->add_option("--k", spec.k, "low-level influence cutoff");
    exp_stab->add_option("--delta", spec.delta, "influence threshold");
    exp_stab->add_option("--epsilon", spec.epsilon, "mass margin");
    exp_stab->callback([&] { run_experiment("stability"); });

    // Let global flags (--seed, --out, --budget-*) appear after subcommands.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
        for (CLI::App* sub : node->get_subcommands([](const CLI::App*) { return true; })) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hcs::InvalidParameterError& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 2;
    } catch (const hcs::SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << '\n';
        return 3;
    } catch (const hcs::ExperimentFailure& e) {
        std::cerr << "experiment failure: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
