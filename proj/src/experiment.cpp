#include "cospec/experiment.hpp"

#include "cospec/errors.hpp"
#include "cospec/walk.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>
#include <vector>

namespace cospec {

ExperimentStats run_experiment(int n, long samples, const Rat& p, uint64_t seed,
                               int parallelism) {
    if (n < 1 || n > kMaxVertices) throw PreconditionViolated("experiment: n out of range");
    if (samples < 1) throw PreconditionViolated("experiment: samples must be >= 1");
    if (parallelism < 1) parallelism = 1;

    const auto t0 = std::chrono::steady_clock::now();

    auto classify_sample = [&](long i, long& controllable, long& fn) {
        Graph g = random_graph(n, p, seed ^ uint64_t(i));
        FnClassification cls = classify_fn(g);
        controllable += cls.controllable;
        fn += cls.in_fn;
    };

    long controllable = 0, fn = 0;
    if (parallelism == 1) {
        for (long i = 0; i < samples; ++i) classify_sample(i, controllable, fn);
    } else {
        // per-sample outcomes depend only on the index, so any schedule
        // produces the same counts
        std::atomic<long> next{0};
        std::vector<long> ctrl(parallelism, 0), infn(parallelism, 0);
        std::vector<std::thread> pool;
        for (int w = 0; w < parallelism; ++w)
            pool.emplace_back([&, w] {
                for (;;) {
                    long i = next.fetch_add(1);
                    if (i >= samples) return;
                    classify_sample(i, ctrl[w], infn[w]);
                }
            });
        for (auto& t : pool) t.join();
        for (int w = 0; w < parallelism; ++w) {
            controllable += ctrl[w];
            fn += infn[w];
        }
    }

    ExperimentStats s;
    s.n = n;
    s.samples = samples;
    s.p = p;
    s.seed = seed;
    s.controllable_count = controllable;
    s.fn_count = fn;
    s.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

std::string experiment_csv_header() { return "n,samples,p,seed,controllable,in_fn"; }

std::string experiment_csv_row(const ExperimentStats& s) {
    std::ostringstream os;
    os << s.n << ',' << s.samples << ',' << s.p << ',' << s.seed << ','
       << s.controllable_count << ',' << s.fn_count;
    return os.str();
}

ExperimentStats parse_experiment_csv_row(const std::string& row) {
    std::istringstream is(row);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(is, field, ',')) fields.push_back(field);
    if (fields.size() != 6) throw Error("experiment CSV row must have 6 fields");
    ExperimentStats s;
    s.n = std::stoi(fields[0]);
    s.samples = std::stol(fields[1]);
    s.p = parse_rational(fields[2]);
    s.seed = std::stoull(fields[3]);
    s.controllable_count = std::stol(fields[4]);
    s.fn_count = std::stol(fields[5]);
    return s;
}

} // namespace cospec
