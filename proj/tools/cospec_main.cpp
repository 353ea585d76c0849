// cospec: walk-matrix analysis of generalized cospectral mates.
//
// Subcommands: analyze, mates verify, mates search, snf, experiment,
// g6 encode, g6 decode. Exit codes: 0 success, 1 usage error, 2 input parse
// error, 3 contradiction or failed internal assertion.

#include "cospec/canon.hpp"
#include "cospec/errors.hpp"
#include "cospec/experiment.hpp"
#include "cospec/factor.hpp"
#include "cospec/graph.hpp"
#include "cospec/mates.hpp"
#include "cospec/snf.hpp"
#include "cospec/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cospec;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitContradiction = 3;

// A graph argument is a graph6 string, or a path to a file holding either a
// single graph6 line or an adjacency matrix in the text format.
Graph load_graph(const std::string& arg) {
    if (!std::filesystem::exists(arg)) return parse_graph6(arg);
    std::ifstream in(arg);
    if (!in) throw Error("cannot open " + arg);
    in >> std::ws;
    char first = char(in.peek());
    if (first >= '0' && first <= '9') {
        return from_adjacency_matrix(read_int_matrix(in));
    }
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with(">>graph6<<")) line.erase(0, 10);
    return parse_graph6(line);
}

std::string join_factors(const Factorization& f) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, e] : f.factors) {
        if (!first) os << " * ";
        os << p;
        if (e > 1) os << "^" << e;
        first = false;
    }
    if (!f.complete) os << (first ? "" : " * ") << f.cofactor << " (unfactored)";
    if (first && f.complete) os << "1";
    return os.str();
}

json factorization_json(const Factorization& f) {
    json factors = json::object();
    for (const auto& [p, e] : f.factors) factors[p.get_str()] = e;
    return json{{"complete", f.complete},
                {"factors", factors},
                {"cofactor", f.cofactor.get_str()}};
}

template <typename Vec>
std::string join_ints(const Vec& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << v[i];
    }
    return os.str();
}

int cmd_analyze(const std::string& input, bool as_json, const std::string& dump_walk) {
    Graph g = load_graph(input);
    const int n = g.order();
    IntMatrix w = walk_matrix(g);
    FnClassification cls = classify_fn(g);
    std::vector<Int> d_hat = snf(w_hat(g)).d;

    if (!dump_walk.empty()) {
        if (dump_walk == "-") {
            write_int_matrix(std::cout, w);
        } else {
            std::ofstream out(dump_walk);
            if (!out) throw Error("cannot write " + dump_walk);
            write_int_matrix(out, w);
        }
    }

    std::optional<Factorization> fact;
    std::optional<BoundReport> bound;
    if (cls.controllable) {
        fact = factorize(cls.d.back());
        if (cls.in_fn) bound = mate_bound(g);
    }

    if (as_json) {
        json j;
        j["graph6"] = n <= 62 ? emit_graph6(g) : "";
        j["n"] = n;
        j["edges"] = g.edge_count();
        j["controllable"] = cls.controllable;
        j["degenerate_order"] = cls.degenerate;
        j["in_fn"] = cls.in_fn;
        json dw = json::array(), dh = json::array();
        for (const Int& x : cls.d) dw.push_back(x.get_str());
        for (const Int& x : d_hat) dh.push_back(x.get_str());
        j["snf_w"] = dw;
        j["snf_w_hat"] = dh;
        j["d_n"] = cls.d.back().get_str();
        j["factorization_d_n"] = fact ? factorization_json(*fact) : json(nullptr);
        if (bound) {
            json adm = json::array();
            for (const Int& l : bound->admissible) adm.push_back(l.get_str());
            j["admissible_levels"] = adm;
            j["mate_bound"] = bound->bound ? json(bound->bound->get_str()) : json(nullptr);
        } else {
            j["admissible_levels"] = json(nullptr);
            j["mate_bound"] = json(nullptr);
        }
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }

    if (n <= 62) std::cout << "graph6: " << emit_graph6(g) << "\n";
    std::cout << "n: " << n << "\n";
    std::cout << "edges: " << g.edge_count() << "\n";
    std::cout << "controllable: " << (cls.controllable ? "yes" : "no") << "\n";
    std::cout << "snf(W): " << join_ints(cls.d) << "\n";
    std::cout << "snf(W_hat): " << join_ints(d_hat) << "\n";
    std::cout << "in_F_n: " << (cls.in_fn ? "yes" : cls.degenerate ? "no (degenerate order)" : "no")
              << "\n";
    if (fact) {
        std::cout << "d_n(W): " << cls.d.back() << "\n";
        std::cout << "factorization(d_n): " << join_factors(*fact) << "\n";
    }
    if (bound) {
        std::cout << "admissible levels: " << join_ints(bound->admissible) << "\n";
        if (bound->bound)
            std::cout << "mate bound: " << *bound->bound << "\n";
        else
            std::cout << "mate bound: unavailable (incomplete factorization)\n";
    } else if (cls.controllable) {
        std::cout << "mate bound: n/a (not in F_n)\n";
    }
    return kExitOk;
}

void print_certificate(const MateCertificate& cert, bool as_json) {
    if (as_json) {
        std::cout << certificate_json(cert, 2) << "\n";
        return;
    }
    std::cout << "mate_g6: " << emit_graph6(cert.mate) << "\n"
              << "accepted: " << (cert.accepted() ? "yes" : "no") << "\n"
              << "level: " << cert.level << "\n"
              << "isomorphic: " << (cert.isomorphic ? "yes" : "no") << "\n"
              << "checks: cospectral=" << cert.checks.cospectral
              << " orthogonal=" << cert.checks.orthogonal
              << " regular=" << cert.checks.regular
              << " conjugates=" << cert.checks.conjugates
              << " level_divides_dn_hat=" << cert.checks.level_divides_dn_hat
              << " level_admissible=" << cert.checks.level_admissible << "\n";
}

int cmd_mates_verify(const std::string& garg, const std::string& harg, bool as_json) {
    Graph g = load_graph(garg);
    Graph h = load_graph(harg);
    MateCertificate cert = verify_mate(g, h);
    print_certificate(cert, as_json);
    return kExitOk;
}

int cmd_mates_search(const std::string& garg, const std::string& candidates, bool as_json) {
    Graph g = load_graph(garg);
    std::ifstream in(candidates);
    if (!in) throw Error("cannot open " + candidates);
    SearchResult r = search_mates(g, in);

    bool parse_issue = false, verification_issue = false;
    for (const StreamIssue& issue : r.issues) {
        std::cerr << candidates << ":" << issue.line << ": " << issue.message << "\n";
        (issue.kind == StreamIssue::Kind::parse ? parse_issue : verification_issue) = true;
    }

    if (as_json) {
        std::cout << "[\n";
        for (size_t i = 0; i < r.mates.size(); ++i)
            std::cout << certificate_json(r.mates[i], 2) << (i + 1 < r.mates.size() ? ",\n" : "\n");
        std::cout << "]\n";
    } else {
        std::cout << "candidates: " << r.candidates_seen << "\n";
        std::cout << "mates found: " << r.mates.size() << "\n";
        for (const MateCertificate& cert : r.mates)
            std::cout << "  " << emit_graph6(cert.mate) << " level " << cert.level << "\n";
    }
    if (verification_issue) return kExitContradiction;
    return parse_issue ? kExitParse : kExitOk;
}

int cmd_snf(const std::string& path, bool transforms) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    IntMatrix m = read_int_matrix(in);
    SnfResult s = snf(m);
    std::cout << join_ints(s.d) << "\n";
    if (transforms) {
        std::cout << "U:\n";
        write_int_matrix(std::cout, s.U);
        std::cout << "V:\n";
        write_int_matrix(std::cout, s.V);
    }
    return kExitOk;
}

int cmd_experiment(int n, long samples, const std::string& p_text, uint64_t seed, int threads,
                   const std::string& csv_path) {
    Rat p = parse_rational(p_text);
    ExperimentStats s = run_experiment(n, samples, p, seed, threads);
    std::cout << "n=" << s.n << " samples=" << s.samples << " p=" << s.p << " seed=" << s.seed
              << " controllable=" << s.controllable_count << " in_fn=" << s.fn_count
              << " elapsed=" << s.elapsed_seconds << "s\n";
    if (!csv_path.empty()) {
        bool write_header =
            !std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
        std::ofstream out(csv_path, std::ios::app);
        if (!out) throw Error("cannot write " + csv_path);
        if (write_header) out << experiment_csv_header() << "\n";
        out << experiment_csv_row(s) << "\n";
    }
    return kExitOk;
}

int cmd_g6_decode(const std::string& text) {
    write_int_matrix(std::cout, adjacency_matrix(parse_graph6(text)));
    return kExitOk;
}

int cmd_g6_encode(const std::string& path) {
    IntMatrix m;
    if (path == "-") {
        m = read_int_matrix(std::cin);
    } else {
        std::ifstream in(path);
        if (!in) throw Error("cannot open " + path);
        m = read_int_matrix(in);
    }
    std::cout << emit_graph6(from_adjacency_matrix(m)) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"walk-matrix toolkit for generalized cospectral mates"};
    app.require_subcommand(1);

    std::string analyze_input, dump_walk;
    bool analyze_json = false;
    CLI::App* analyze = app.add_subcommand("analyze", "classify a graph and bound its mates");
    analyze->add_option("input", analyze_input, "graph6 string, graph6 file or matrix file")
        ->required();
    analyze->add_flag("--json", analyze_json, "machine-readable output");
    analyze->add_option("--dump-walk", dump_walk, "write W(G) to a matrix file ('-' = stdout)");

    CLI::App* mates = app.add_subcommand("mates", "verify or search generalized cospectral mates");
    mates->require_subcommand(1);
    std::string verify_g, verify_h;
    bool verify_json = false;
    CLI::App* verify = mates->add_subcommand("verify", "certify a single candidate mate");
    verify->add_option("graph", verify_g, "query graph")->required();
    verify->add_option("candidate", verify_h, "candidate mate")->required();
    verify->add_flag("--json", verify_json);

    std::string search_g, search_candidates;
    bool search_json = false;
    CLI::App* search = mates->add_subcommand("search", "scan a graph6 stream for mates");
    search->add_option("graph", search_g, "query graph")->required();
    search->add_option("--candidates", search_candidates, "newline-delimited graph6 file")
        ->required();
    search->add_flag("--json", search_json);

    std::string snf_path;
    bool snf_transforms = false;
    CLI::App* snf_cmd = app.add_subcommand("snf", "Smith Normal Form of an integer matrix file");
    snf_cmd->add_option("matrix", snf_path, "matrix file: 'rows cols' header, then entries")
        ->required();
    snf_cmd->add_flag("--transforms", snf_transforms, "also print U and V");

    int exp_n = 10;
    long exp_samples = 1000;
    std::string exp_p = "1/2", exp_csv;
    uint64_t exp_seed = 0;
    int exp_threads = 1;
    CLI::App* experiment = app.add_subcommand("experiment", "seeded random-graph statistics");
    experiment->add_option("--n", exp_n, "graph order")->required();
    experiment->add_option("--samples", exp_samples, "number of samples");
    experiment->add_option("--p", exp_p, "edge probability (rational or decimal)");
    experiment->add_option("--seed", exp_seed, "master seed");
    experiment->add_option("--threads", exp_threads, "worker threads");
    experiment->add_option("--csv", exp_csv, "append one CSV row to this file");

    CLI::App* g6 = app.add_subcommand("g6", "graph6 codec");
    g6->require_subcommand(1);
    std::string decode_text, encode_path;
    CLI::App* decode = g6->add_subcommand("decode", "graph6 to adjacency matrix text");
    decode->add_option("graph6", decode_text)->required();
    CLI::App* encode = g6->add_subcommand("encode", "adjacency matrix text to graph6");
    encode->add_option("matrix", encode_path, "matrix file ('-' = stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_input, analyze_json, dump_walk);
        if (verify->parsed()) return cmd_mates_verify(verify_g, verify_h, verify_json);
        if (search->parsed()) return cmd_mates_search(search_g, search_candidates, search_json);
        if (snf_cmd->parsed()) return cmd_snf(snf_path, snf_transforms);
        if (experiment->parsed())
            return cmd_experiment(exp_n, exp_samples, exp_p, exp_seed, exp_threads, exp_csv);
        if (decode->parsed()) return cmd_g6_decode(decode_text);
        if (encode->parsed()) return cmd_g6_encode(encode_path);
    } catch (const ContradictionReport& e) {
        std::cerr << "contradiction: " << e.what() << "\n";
        return kExitContradiction;
    } catch (const VerificationFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitContradiction;
    } catch (const G6ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const MatrixFormatError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
