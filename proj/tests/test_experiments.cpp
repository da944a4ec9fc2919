#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "hcs/errors.hpp"
#include "hcs/experiments.hpp"

using namespace hcs;

namespace {

int col(const CsvReport& r, const std::string& name) {
    auto it = std::find(r.header.begin(), r.header.end(), name);
    REQUIRE(it != r.header.end());
    return static_cast<int>(it - r.header.begin());
}

ExperimentSpec tiny_spec(ReductionKind kind) {
    ExperimentSpec spec;
    spec.name = "completeness";
    spec.kind = kind;
    spec.vertices = 3;
    spec.edges = 3;
    spec.range = 2;
    spec.instances = 4;
    spec.seed = 11;
    return spec;
}

}  // namespace

TEST_CASE("completeness runs report colorable instances for every kind") {
    struct Shape {
        ReductionKind kind;
        const char* name;
        const char* palette;
    };
    for (Shape s : {Shape{ReductionKind::almost3, "almost3", "3"},
                    Shape{ReductionKind::col4, "col4", "4"},
                    Shape{ReductionKind::col3, "col3", "3"}}) {
        CsvReport r = run_completeness(tiny_spec(s.kind));
        CHECK(r.rows.size() == 4);
        const int kind_col = col(r, "kind");
        const int palette = col(r, "palette");
        const int mono = col(r, "monochromatic");
        const int uncolored = col(r, "uncolored");
        for (const auto& row : r.rows) {
            CHECK(row[kind_col] == s.name);
            CHECK(row[palette] == s.palette);
            CHECK(row[mono] == "0");
            CHECK(row[uncolored] == "0");
        }
    }
}

TEST_CASE("report bodies are deterministic and metadata is commented") {
    CsvReport a = run_completeness(tiny_spec(ReductionKind::almost3));
    CsvReport b = run_completeness(tiny_spec(ReductionKind::almost3));
    CHECK(a.body() == b.body());

    std::string text = a.text();
    CHECK(text.rfind("# ", 0) == 0);
    auto second = text.find('\n') + 1;
    CHECK(text.compare(second, 2, "# ") == 0);
    CHECK(text.find("instance,seed,kind") != std::string::npos);
    CHECK(a.body().find('#') == std::string::npos);

    ExperimentSpec other = tiny_spec(ReductionKind::almost3);
    other.seed = 12;
    CHECK(run_completeness(other).body() != a.body());
}

TEST_CASE("soundness probes decode planted color classes completely") {
    ExperimentSpec spec = tiny_spec(ReductionKind::almost3);
    spec.name = "soundness";
    spec.instances = 3;
    spec.set_source = "class";
    CsvReport r = run_soundness_probe(spec);
    const int status = col(r, "status");
    const int fraction = col(r, "fraction");
    const int J = col(r, "J");
    const int t = col(r, "t");
    for (const auto& row : r.rows) {
        CHECK(row[status] == "ok");
        CHECK(row[J] == "3");  // every block is dense in its own color class
        CHECK(row[t] == "60");
        if (row[col(r, "checked")] != "0") CHECK(row[fraction] == "1.0");
    }
}

TEST_CASE("soundness probes handle degenerate and invalid sets") {
    ExperimentSpec spec = tiny_spec(ReductionKind::almost3);
    spec.name = "soundness";
    spec.instances = 2;

    spec.set_source = "empty";
    CsvReport empty = run_soundness_probe(spec);
    for (const auto& row : empty.rows) {
        CHECK(row[col(empty, "J")] == "0");
        CHECK(row[col(empty, "set_size")] == "0");
        CHECK(row[col(empty, "fraction")] == "");
        CHECK(row[col(empty, "status")] == "ok");
    }

    spec.set_source = "mis";
    CsvReport mis = run_soundness_probe(spec);
    for (const auto& row : mis.rows) {
        CHECK(row[col(mis, "status")] == "ok");
        CHECK(row[col(mis, "set_size")] == row[col(mis, "mis_size")]);
    }

    // A scattered random third of the graph is not block-structured; the
    // decoder rejects it as an invalid vertex set only when ids repeat or
    // fall outside the graph, so scattered sets still decode.
    spec.set_source = "random";
    CsvReport rnd = run_soundness_probe(spec);
    for (const auto& row : rnd.rows) {
        const std::string& s = row[col(rnd, "status")];
        CHECK((s == "ok" || s == "invalid-parameter"));
    }

    spec.set_source = "nonsense";
    CHECK_THROWS_AS(run_soundness_probe(spec), InvalidParameterError);
}

TEST_CASE("soundness probes respect the search budget") {
    ExperimentSpec spec = tiny_spec(ReductionKind::almost3);
    spec.name = "soundness";
    spec.set_source = "class";
    spec.budget.max_vertices = 5;
    CHECK_THROWS_AS(run_soundness_probe(spec), SizeLimitError);
}

TEST_CASE("stability scans flag dictators and pass low-influence families") {
    ExperimentSpec spec;
    spec.name = "stability";
    spec.q = 3;
    spec.n = 2;
    spec.k = 3;
    spec.delta = 0.05;
    spec.epsilon = 0.1;

    spec.family = "dictators";
    spec.op = "almost3";
    CsvReport dict = run_stability_scan(spec);
    REQUIRE(dict.rows.size() == 1);
    CHECK(dict.rows[0][col(dict, "verdict")] == "hypothesis-violated");
    CHECK(dict.rows[0][col(dict, "violating_coords")] == "1");

    spec.family = "constants";
    spec.op = "beckner";
    spec.rho_grid = {0.0, 0.25, 0.5};
    CsvReport flat = run_stability_scan(spec);
    REQUIRE(flat.rows.size() == 3);
    for (const auto& row : flat.rows) {
        CHECK(row[col(flat, "verdict")] == "bounds-hold");
        CHECK(std::strtod(row[col(flat, "margin")].c_str(), nullptr) >= -1e-9);
    }

    spec.family = "mixture";
    spec.n = 4;
    spec.rho_grid = {0.5};
    CsvReport mix = run_stability_scan(spec);
    REQUIRE(mix.rows.size() == 1);
    CHECK(mix.rows[0][col(mix, "verdict")] == "bounds-hold");

    spec.family = "constants";
    spec.op = "alpha";
    spec.n = 2;
    CsvReport fish = run_stability_scan(spec);
    REQUIRE(fish.rows.size() == 1);
    CHECK(fish.rows[0][col(fish, "verdict")] == "bounds-hold");

    spec.family = "dictators";
    CsvReport fish_dict = run_stability_scan(spec);
    CHECK(fish_dict.rows[0][col(fish_dict, "verdict")] == "hypothesis-violated");
    CHECK(fish_dict.rows[0][col(fish_dict, "violating_coords")] == "1");
}

TEST_CASE("experiment specs are validated") {
    ExperimentSpec spec = tiny_spec(ReductionKind::almost3);
    spec.instances = 0;
    CHECK_THROWS_AS(run_completeness(spec), InvalidParameterError);

    ExperimentSpec stab;
    stab.q = 3;
    stab.n = 1;
    stab.family = "mystery";
    CHECK_THROWS_AS(run_stability_scan(stab), InvalidParameterError);

    stab.family = "constants";
    stab.op = "mystery";
    CHECK_THROWS_AS(run_stability_scan(stab), InvalidParameterError);

    stab.op = "beckner";
    stab.rho_grid = {1.5};
    CHECK_THROWS_AS(run_stability_scan(stab), InvalidParameterError);

    stab.rho_grid = {0.5};
    stab.q = 2;
    stab.op = "almost3";
    CHECK_THROWS_AS(run_stability_scan(stab), InvalidParameterError);
}
