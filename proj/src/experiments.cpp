#include "hcs/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <random>
#include <sstream>

#include "hcs/errors.hpp"
#include "hcs/gaussian.hpp"

#ifndef HCS_BUILD_ID
#define HCS_BUILD_ID "unknown"
#endif

namespace hcs {

namespace {

std::string fmt_int(long long v) { return std::to_string(v); }

// Shortest round-trip decimal form, so bodies are reproducible bytes.
std::string fmt_double(double v) { return Json(v).dump(); }

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

Json spec_echo(const ExperimentSpec& spec) {
    return Json{{"name", spec.name},
                {"seed", spec.seed},
                {"kind", reduction_kind_name(spec.kind)},
                {"vertices", spec.vertices},
                {"edges", spec.edges},
                {"range", spec.range},
                {"instances", spec.instances},
                {"k", spec.k},
                {"delta", spec.delta},
                {"epsilon", spec.epsilon},
                {"set_source", spec.set_source},
                {"family", spec.family},
                {"op", spec.op},
                {"q", spec.q},
                {"n", spec.n},
                {"rho_grid", spec.rho_grid},
                {"budget",
                 Json{{"max_vertices", spec.budget.max_vertices},
                      {"max_edges", spec.budget.max_edges},
                      {"time_limit_seconds", spec.budget.time_limit_seconds}}},
                {"build", HCS_BUILD_ID}};
}

std::vector<int> hidden_labels(const PlantedInstance& planted) {
    std::vector<int> labels;
    for (const auto& set : planted.hidden.assignment) labels.push_back(set.at(0));
    return labels;
}

// Family members are [0,1]-valued with mean 1/q.
QFunction family_function(const std::string& family, int q, int ncoords) {
    if (family == "constants") {
        QFunction f = make_qfunction(q, ncoords);
        f.values.setConstant(1.0 / q);
        return f;
    }
    if (family == "dictators") return dictator(q, ncoords, 1, 0);
    if (family == "plurality") {
        QFunction p = plurality(q, ncoords);
        QFunction f = make_qfunction(q, ncoords);
        for (Eigen::Index i = 0; i < f.values.size(); ++i)
            f.values(i) = p.values(i) == 0.0 ? 1.0 : 0.0;
        return f;
    }
    if (family == "mixture") {
        // 1/q + c * (fraction of zero coordinates - 1/q); low influences for
        // moderate n, mean exactly 1/q.
        const double c = 0.25;
        QFunction f = make_qfunction(q, ncoords);
        for (std::size_t idx = 0; idx < static_cast<std::size_t>(f.values.size()); ++idx) {
            int zeros = 0;
            for (int j = 1; j <= ncoords; ++j)
                if (digit_at(idx, q, ncoords, j) == 0) ++zeros;
            f.values(static_cast<Eigen::Index>(idx)) =
                1.0 / q + c * (static_cast<double>(zeros) / ncoords - 1.0 / q);
        }
        return f;
    }
    throw InvalidParameterError("unknown function family: " + family);
}

struct TimedReport {
    CsvReport report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void finish() {
        std::chrono::duration<double, std::milli> ms =
            std::chrono::steady_clock::now() - start;
        report.wall_ms = ms.count();
    }
};

}  // namespace

std::string CsvReport::body() const {
    std::string out = join(header, ',') + "\n";
    for (const auto& row : rows) out += join(row, ',') + "\n";
    return out;
}

std::string CsvReport::text() const {
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    Json clock{{"timestamp", stamp}, {"wall_ms", wall_ms}};
    return "# " + meta.dump() + "\n# " + clock.dump() + "\n" + body();
}

CsvReport run_completeness(const ExperimentSpec& spec) {
    require(spec.instances >= 1, "instance count must be positive");
    TimedReport timed;
    CsvReport& out = timed.report;
    out.meta = spec_echo(spec);
    out.header = {"instance", "seed",           "kind",        "palette",
                  "lc_vertices", "lc_edges",    "range",       "block_vertices",
                  "block_edges", "monochromatic", "uncolored"};
    for (int i = 0; i < spec.instances; ++i) {
        const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(i);
        PlantedInstance planted = gen_planted(expected_family(spec.kind), spec.vertices,
                                              spec.edges, spec.range, seed);
        BlockGraph g = reduce(spec.kind, planted.instance);
        ColoringAssignment coloring = intended_coloring(g, hidden_labels(planted));
        ColoringReport report = verify_coloring(g, coloring);
        out.rows.push_back({fmt_int(i), fmt_int(static_cast<long long>(seed)),
                            reduction_kind_name(spec.kind), fmt_int(palette_size(spec.kind)),
                            fmt_int(spec.vertices),
                            fmt_int(static_cast<long long>(planted.instance.edges.size())),
                            fmt_int(spec.range), fmt_int(vertex_count(g)),
                            fmt_int(report.edges), fmt_int(report.monochromatic),
                            fmt_int(report.uncolored)});
        if (report.monochromatic != 0)
            throw ExperimentFailure("intended coloring produced a monochromatic edge");
    }
    timed.finish();
    return out;
}

CsvReport run_soundness_probe(const ExperimentSpec& spec) {
    require(spec.instances >= 1, "instance count must be positive");
    require(spec.set_source == "class" || spec.set_source == "mis" ||
                spec.set_source == "empty" || spec.set_source == "random",
            "unknown set source: " + spec.set_source);
    TimedReport timed;
    CsvReport& out = timed.report;
    out.meta = spec_echo(spec);
    out.header = {"instance", "seed",    "kind",      "palette",   "lc_vertices",
                  "lc_edges", "range",   "block_vertices", "block_edges", "set_source",
                  "set_size", "mis_size", "J",        "t",         "list_sizes",
                  "checked",  "satisfied", "fraction", "status"};
    for (int i = 0; i < spec.instances; ++i) {
        const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(i);
        PlantedInstance planted = gen_planted(expected_family(spec.kind), spec.vertices,
                                              spec.edges, spec.range, seed);
        BlockGraph g = reduce(spec.kind, planted.instance);
        const auto raw_edges = enumerate_edges(g);
        Graph graph = make_graph(vertex_count(g), raw_edges);
        MisResult mis = max_independent_set(graph, spec.budget);

        std::vector<long long> S;
        if (spec.set_source == "class") {
            ColoringAssignment coloring = intended_coloring(g, hidden_labels(planted));
            for (long long v = 0; v < static_cast<long long>(coloring.color.size()); ++v)
                if (coloring.color[v] == 0) S.push_back(v);
        } else if (spec.set_source == "mis") {
            for (int v : mis.witness) S.push_back(v);
        } else if (spec.set_source == "random") {
            std::mt19937_64 rng(seed);
            std::vector<long long> all(graph.n);
            for (long long v = 0; v < graph.n; ++v) all[v] = v;
            std::shuffle(all.begin(), all.end(), rng);
            S.assign(all.begin(), all.begin() + (graph.n + 2) / 3);
            std::sort(S.begin(), S.end());
        }

        std::vector<std::string> row{
            fmt_int(i), fmt_int(static_cast<long long>(seed)),
            reduction_kind_name(spec.kind), fmt_int(palette_size(spec.kind)),
            fmt_int(spec.vertices),
            fmt_int(static_cast<long long>(planted.instance.edges.size())),
            fmt_int(spec.range), fmt_int(graph.n),
            fmt_int(static_cast<long long>(graph.edges.size())), spec.set_source,
            fmt_int(static_cast<long long>(S.size())), fmt_int(mis.size)};
        try {
            DecodeResult dec = decode_tlabeling(g, S, spec.k, spec.delta, spec.epsilon);
            std::vector<std::string> sizes;
            for (int v : dec.J)
                sizes.push_back(fmt_int(
                    static_cast<long long>(dec.labeling.assignment[v].size())));
            const long long checked = static_cast<long long>(dec.checks.size());
            row.push_back(fmt_int(static_cast<long long>(dec.J.size())));
            row.push_back(fmt_int(dec.t));
            row.push_back(join(sizes, ';'));
            row.push_back(fmt_int(checked));
            row.push_back(fmt_int(dec.satisfied));
            row.push_back(checked == 0
                              ? std::string()
                              : fmt_double(static_cast<double>(dec.satisfied) / checked));
            row.push_back("ok");
        } catch (const InvalidParameterError&) {
            row.insert(row.end(), {"", "", "", "", "", ""});
            row.push_back("invalid-parameter");
        }
        out.rows.push_back(std::move(row));
    }
    timed.finish();
    return out;
}

CsvReport run_stability_scan(const ExperimentSpec& spec) {
    require(spec.n >= 1, "coordinate count must be positive");
    require(spec.op == "beckner" || spec.op == "almost3" || spec.op == "alpha",
            "unknown operator: " + spec.op);
    const bool fish = spec.op == "alpha";
    const int ncoords = fish ? 2 * spec.n : spec.n;
    if (spec.op != "beckner")
        require(spec.q == 3, "gadget operators act on three symbols");

    TimedReport timed;
    CsvReport& out = timed.report;
    out.meta = spec_echo(spec);
    out.header = {"family", "q",           "n",            "op",    "rho",
                  "mu",     "nu",          "inner",        "lambda_lower",
                  "lambda_upper", "lower", "upper",        "verdict",
                  "margin", "violating_coords"};

    const QFunction f = family_function(spec.family, spec.q, ncoords);
    std::vector<MarkovOp> ops;
    if (spec.op == "beckner") {
        require(!spec.rho_grid.empty(), "correlation grid is empty");
        for (double rho : spec.rho_grid) {
            require(rho >= 0.0 && rho < 1.0, "correlation must lie in [0, 1)");
            // Nearest rational at 1e-9 granularity; exact for grid values
            // like 0.5 or 0.25.
            ops.push_back(beckner(spec.q, Rat(std::llround(rho * 1000000000.0),
                                              1000000000LL)));
        }
    } else {
        ops.push_back(gadget_operator(spec.op == "almost3" ? GadgetKind::almost3
                                                           : GadgetKind::alpha));
    }

    for (const MarkovOp& T : ops) {
        BoundReport r = mo_bound_report(f, f, T, spec.k, spec.delta, spec.epsilon, fish);
        std::vector<std::string> coords;
        for (int c : r.violating_coords) coords.push_back(fmt_int(c));
        out.rows.push_back({spec.family, fmt_int(spec.q), fmt_int(spec.n), spec.op,
                            fmt_double(r.rho), fmt_double(r.mu), fmt_double(r.nu),
                            fmt_double(r.inner), fmt_double(r.lambda_lower),
                            fmt_double(r.lambda_upper), fmt_double(r.lower),
                            fmt_double(r.upper), verdict_name(r.verdict),
                            fmt_double(r.lambda_upper - r.inner), join(coords, ';')});
    }
    timed.finish();
    return out;
}

}  // namespace hcs
