#pragma once

#include "cospec/graph.hpp"

#include <cstdint>
#include <string>

namespace cospec {

struct ExperimentStats {
    int n = 0;
    long samples = 0;
    Rat p;
    uint64_t seed = 0;
    long controllable_count = 0;
    long fn_count = 0;
    double elapsed_seconds = 0; // excluded from equality and CSV

    bool operator==(const ExperimentStats& o) const {
        return n == o.n && samples == o.samples && p == o.p && seed == o.seed &&
               controllable_count == o.controllable_count && fn_count == o.fn_count;
    }
};

// Counts controllable graphs and F_n members over `samples` independent
// G(n, p) draws. Sample i uses seed ^ i, so the result is a pure function of
// (n, samples, p, seed) at every parallelism level.
ExperimentStats run_experiment(int n, long samples, const Rat& p, uint64_t seed,
                               int parallelism = 1);

std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentStats& s);
ExperimentStats parse_experiment_csv_row(const std::string& row);

} // namespace cospec
