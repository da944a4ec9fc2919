#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcs/io.hpp"
#include "hcs/oracles.hpp"
#include "hcs/reduction.hpp"

namespace hcs {

// Shared knob bag for the experiment drivers; each driver validates the
// subset it reads.  Instance i derives its generator seed as seed + i.
struct ExperimentSpec {
    std::string name;
    std::uint64_t seed = 1;

    // completeness / soundness: planted label-cover shape
    ReductionKind kind = ReductionKind::almost3;
    int vertices = 3;
    int edges = 3;
    int range = 2;  // label range of the generated instances
    int instances = 20;

    // soundness: decoder parameters and the independent-set source
    int k = 3;
    double delta = 0.05;
    double epsilon = 0.1;
    std::string set_source = "class";  // class | mis | empty | random

    // stability: function family, operator and correlation grid
    std::string family = "dictators";  // constants | dictators | plurality | mixture
    std::string op = "beckner";        // beckner | almost3 | alpha
    int q = 3;
    int n = 2;  // coordinates (pair count for the alpha operator)
    std::vector<double> rho_grid = {0.5};

    SearchBudget budget;
};

// CSV artifact: text() = '#'-prefixed JSON metadata line, '#'-prefixed
// timestamp line, then body().  Bodies are byte-identical across reruns of
// the same spec; only the timestamp line varies.
struct CsvReport {
    Json meta;
    double wall_ms = 0.0;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string body() const;
    std::string text() const;
};

// Plants satisfiable instances, reduces them, and verifies the intended
// colorings; any monochromatic edge is an experiment failure.
CsvReport run_completeness(const ExperimentSpec& spec);

// Reduces planted instances, runs the independent-set oracle, decodes the
// requested vertex set and reports list sizes plus the satisfied fraction of
// induced constraints.  A rejected (non-independent) set becomes an error
// row, not a crash.
CsvReport run_soundness_probe(const ExperimentSpec& spec);

// Evaluates the noisy inner product of a family member against the Gaussian
// bounds over the correlation grid.
CsvReport run_stability_scan(const ExperimentSpec& spec);

}  // namespace hcs
