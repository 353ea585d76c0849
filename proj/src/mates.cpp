#include "cospec/mates.hpp"

#include "cospec/errors.hpp"
#include "cospec/snf.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

namespace cospec {

namespace {

bool is_identity(const RatMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != Rat(i == j ? 1 : 0)) return false;
    return true;
}

bool has_unit_row_sums(const RatMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        Rat s = 0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j);
        if (s != 1) return false;
    }
    return true;
}

// ord_p of an admissible level is at most multiplicity(p) - 1, for every
// prime of d_n including 2; the set has prod(k_j) elements and contains 1.
std::vector<Int> levels_from_factorization(const Factorization& f) {
    std::vector<Int> levels{1};
    for (const auto& [p, k] : f.factors) {
        if (k < 2) continue;
        std::vector<Int> next;
        Int pe = 1;
        for (unsigned e = 0; e < k; ++e) {
            for (const Int& l : levels) next.push_back(l * pe);
            pe *= p;
        }
        levels = std::move(next);
    }
    std::sort(levels.begin(), levels.end());
    return levels;
}

} // namespace

bool is_generalized_cospectral(const Graph& g, const Graph& h) {
    if (g.order() != h.order())
        throw OrderMismatch("graphs have different orders: " + std::to_string(g.order()) +
                            " vs " + std::to_string(h.order()));
    return fingerprint(g) == fingerprint(h);
}

RatMatrix regular_orthogonal_q(const Graph& g, const Graph& h) {
    if (!is_controllable(g)) throw NotControllable("first graph is not controllable");
    if (g.order() != h.order())
        throw OrderMismatch("graphs have different orders");
    IntMatrix wh = walk_matrix(h);
    if (det(wh) == 0) throw NotControllable("second graph is not controllable");
    RatMatrix q = multiply(walk_matrix(g), rat_inverse(wh));
    if (!is_identity(multiply(q.transposed(), q)))
        throw VerificationFailed("Q^T Q != I");
    if (!has_unit_row_sums(q)) throw VerificationFailed("Qe != e");
    RatMatrix conj = multiply(multiply(q.transposed(), adjacency_matrix(g)), q);
    if (conj != RatMatrix::from_int(adjacency_matrix(h)))
        throw VerificationFailed("Q^T A(g) Q != A(h)");
    return q;
}

std::vector<Int> admissible_levels(const Graph& g) {
    FnClassification cls = classify_fn(g);
    if (!cls.in_fn) throw NotInFn("graph is not in F_n");
    Factorization f = factorize(cls.d.back());
    if (!f.complete)
        throw IncompleteFactorization("d_n(W) could not be fully factored");
    return levels_from_factorization(f);
}

std::vector<Int> admissible_levels(const Factorization& dn_factorization) {
    if (!dn_factorization.complete)
        throw IncompleteFactorization("admissible_levels needs a complete factorization");
    return levels_from_factorization(dn_factorization);
}

BoundReport mate_bound(const Graph& g) {
    FnClassification cls = classify_fn(g);
    if (!cls.in_fn) throw NotInFn("graph is not in F_n");
    BoundReport r;
    r.dn = cls.d.back();
    r.factorization = factorize(r.dn);
    if (!r.factorization.complete) return r; // partial data, no bound
    r.admissible = levels_from_factorization(r.factorization);
    r.bound = Int(long(r.admissible.size()) - 1);
    return r;
}

MateVerifier::MateVerifier(const Graph& g) : g_(g) {
    if (!is_controllable(g)) throw NotControllable("query graph is not controllable");
    wg_ = walk_matrix(g);
    ag_ = adjacency_matrix(g);
    fp_ = fingerprint(g);
    cls_ = classify_fn(g);
    dn_hat_ = snf(w_hat(g)).d.back();
    if (cls_.in_fn) {
        Factorization f = factorize(cls_.d.back());
        if (f.complete) admissible_ = levels_from_factorization(f);
    }
}

MateCertificate MateVerifier::verify(const Graph& h) const {
    MateCertificate cert;
    cert.mate = h;
    if (g_.order() != h.order())
        throw OrderMismatch("candidate order differs from query order");
    cert.checks.cospectral = fp_ == fingerprint(h);
    if (!cert.checks.cospectral) return cert;

    // Cospectral to a controllable graph, so h is controllable and Q exists;
    // a singular W(h) here would contradict that and surfaces as an error.
    IntMatrix wh = walk_matrix(h);
    if (det(wh) == 0)
        throw NotControllable("cospectral candidate has singular walk matrix");
    cert.q = multiply(wg_, rat_inverse(wh));
    cert.checks.orthogonal = is_identity(multiply(cert.q.transposed(), cert.q));
    cert.checks.regular = has_unit_row_sums(cert.q);
    RatMatrix conj = multiply(multiply(cert.q.transposed(), ag_), cert.q);
    cert.checks.conjugates = conj == RatMatrix::from_int(adjacency_matrix(h));

    cert.level = level_of(cert.q);
    cert.isomorphic = cert.level == 1;
    cert.checks.level_divides_dn_hat = dn_hat_ % cert.level == 0;
    cert.checks.level_admissible =
        !admissible_ ||
        std::binary_search(admissible_->begin(), admissible_->end(), cert.level);
    return cert;
}

MateCertificate verify_mate(const Graph& g, const Graph& h) {
    return MateVerifier(g).verify(h);
}

namespace {

SearchResult search_impl(const Graph& g,
                         const std::function<bool(long&, Graph&, std::string&)>& next) {
    MateVerifier verifier(g);
    const int order = g.order();
    const int edges = g.edge_count();

    SearchResult result;
    std::set<CanonicalForm> seen{canonical_form(g)};

    long line = 0;
    Graph h;
    std::string err;
    while (next(line, h, err)) {
        if (!err.empty()) {
            result.issues.push_back({line, err, StreamIssue::Kind::parse});
            continue;
        }
        ++result.candidates_seen;
        if (h.order() != order || h.edge_count() != edges) continue;
        if (fingerprint(h) != verifier.base_fingerprint()) continue;
        CanonicalForm cf = canonical_form(h);
        if (seen.contains(cf)) continue;

        MateCertificate cert = verifier.verify(h);
        if (cert.isomorphic) continue; // canonical dedup should have caught it
        if (!cert.accepted()) {
            std::ostringstream os;
            os << "cospectral candidate failed verification (level " << cert.level << ")";
            result.issues.push_back({line, os.str(), StreamIssue::Kind::verification});
            continue;
        }
        if (verifier.classification().in_fn) {
            for (const MateCertificate& prev : result.mates)
                if (prev.level == cert.level) {
                    std::ostringstream os;
                    os << "two non-isomorphic mates share level " << cert.level << ": "
                       << emit_graph6(prev.mate) << " and " << emit_graph6(cert.mate);
                    throw ContradictionReport(os.str());
                }
            if (verifier.admissible() &&
                long(result.mates.size()) + 1 > long(verifier.admissible()->size()) - 1)
                throw ContradictionReport("mate count exceeds the admissible-level bound");
        }
        seen.insert(std::move(cf));
        result.mates.push_back(std::move(cert));
    }
    return result;
}

} // namespace

SearchResult search_mates(const Graph& g, const std::vector<Graph>& candidates) {
    size_t idx = 0;
    return search_impl(g, [&](long& line, Graph& h, std::string& err) {
        if (idx >= candidates.size()) return false;
        line = long(idx + 1);
        h = candidates[idx++];
        err.clear();
        return true;
    });
}

SearchResult search_mates(const Graph& g, std::istream& graph6_lines) {
    long lineno = 0;
    std::string text;
    return search_impl(g, [&](long& line, Graph& h, std::string& err) {
        while (std::getline(graph6_lines, text)) {
            ++lineno;
            if (!text.empty() && text.back() == '\r') text.pop_back();
            if (text.starts_with(">>graph6<<")) text.erase(0, 10);
            if (text.empty()) continue;
            line = lineno;
            err.clear();
            try {
                h = parse_graph6(text);
            } catch (const G6ParseError& e) {
                err = e.what();
            }
            return true;
        }
        return false;
    });
}

std::string certificate_json(const MateCertificate& cert, int indent) {
    nlohmann::json j;
    j["mate_g6"] = emit_graph6(cert.mate);
    j["level"] = cert.level.get_str();
    j["checks"] = {{"cospectral", cert.checks.cospectral},
                   {"orthogonal", cert.checks.orthogonal},
                   {"regular", cert.checks.regular},
                   {"conjugates", cert.checks.conjugates},
                   {"level_divides_dn_hat", cert.checks.level_divides_dn_hat},
                   {"level_admissible", cert.checks.level_admissible}};
    j["q_denominator_lcm"] = cert.q.rows() > 0 ? level_of(cert.q).get_str() : "0";
    j["isomorphic"] = cert.isomorphic;
    j["accepted"] = cert.accepted();
    return j.dump(indent);
}

QColumnDiagnostics q_column_diagnostics(const RatMatrix& q) {
    if (!is_identity(multiply(q.transposed(), q)))
        throw PreconditionViolated("q_column_diagnostics: matrix is not orthogonal");
    if (!has_unit_row_sums(q))
        throw PreconditionViolated("q_column_diagnostics: matrix is not regular");

    QColumnDiagnostics diag;
    const Int level = level_of(q);
    Factorization f = factorize(level);
    if (!f.complete)
        throw IncompleteFactorization("q_column_diagnostics: level could not be factored");

    const IntMatrix qbar = to_int_matrix(q, level);
    const int n = qbar.rows();

    auto col_dot = [&](int i, int j) {
        Int s = 0;
        for (int r = 0; r < n; ++r) s += qbar(r, i) * qbar(r, j);
        return s;
    };
    auto col_dot_e = [&](int i) {
        Int s = 0;
        for (int r = 0; r < n; ++r) s += qbar(r, i);
        return s;
    };
    auto fail = [&](std::string msg) {
        if (diag.passed) {
            diag.passed = false;
            diag.violation = std::move(msg);
        }
    };

    for (const auto& [p, k] : f.factors) {
        QColumnDiagnostics::Entry entry;
        entry.p = p;
        entry.k = k;
        Int pk, p2k;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
        mpz_pow_ui(p2k.get_mpz_t(), p.get_mpz_t(), 2 * k);

        entry.pairwise_orthogonal = true;
        entry.norm_exact = true;
        entry.row_sum_exact = true;
        for (int i = 0; i < n && diag.passed; ++i) {
            for (int j = i; j < n; ++j) {
                Int d = col_dot(i, j);
                if (d % p2k != 0) {
                    entry.pairwise_orthogonal = false;
                    fail("v_" + std::to_string(i) + " . v_" + std::to_string(j) +
                         " != 0 mod p^2k at p=" + p.get_str());
                    break;
                }
                if (i == j && (d / p2k) % p == 0) {
                    entry.norm_exact = false;
                    fail("p^2k does not exactly divide v_" + std::to_string(i) +
                         " . v_" + std::to_string(i) + " at p=" + p.get_str());
                    break;
                }
            }
            if (!diag.passed) break;
            Int s = col_dot_e(i);
            if (s % pk != 0 || (s / pk) % p == 0) {
                entry.row_sum_exact = false;
                fail("p^k does not exactly divide v_" + std::to_string(i) +
                     " . e at p=" + p.get_str());
            }
        }
        diag.entries.push_back(std::move(entry));
        if (!diag.passed) break;
    }
    return diag;
}

} // namespace cospec
