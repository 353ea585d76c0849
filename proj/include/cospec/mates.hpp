#pragma once

#include "cospec/canon.hpp"
#include "cospec/factor.hpp"
#include "cospec/graph.hpp"
#include "cospec/walk.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cospec {

// Same generalized spectrum: both characteristic polynomials agree exactly.
// Throws OrderMismatch when the orders differ.
bool is_generalized_cospectral(const Graph& g, const Graph& h);

// The unique regular rational orthogonal matrix with Q^T A(g) Q = A(h),
// built as W(g) * W(h)^-1 and then verified (Q^T Q = I, Qe = e, conjugation)
// exactly. Throws NotControllable / VerificationFailed.
RatMatrix regular_orthogonal_q(const Graph& g, const Graph& h);

// All levels whose prime support lies in the factorization of d_n(W(g))
// with ord_p capped at multiplicity - 1 for every prime; sorted ascending.
// Requires g in F_n and a complete factorization of d_n.
std::vector<Int> admissible_levels(const Graph& g);

// The exponent rule alone, for a given complete factorization of d_n.
std::vector<Int> admissible_levels(const Factorization& dn_factorization);

struct BoundReport {
    Int dn;                    // last invariant factor of W(g)
    Factorization factorization;
    std::vector<Int> admissible; // empty when factorization is incomplete
    std::optional<Int> bound;    // product of multiplicities minus one
};

// Upper bound on the number of generalized cospectral mates of g.
// Throws NotInFn; an incomplete factorization yields a report without a bound.
BoundReport mate_bound(const Graph& g);

struct MateChecks {
    bool cospectral = false;
    bool orthogonal = false;
    bool regular = false;
    bool conjugates = false;
    bool level_divides_dn_hat = false;
    bool level_admissible = false;

    bool all() const {
        return cospectral && orthogonal && regular && conjugates && level_divides_dn_hat &&
               level_admissible;
    }
};

struct MateCertificate {
    Graph mate;
    RatMatrix q;      // empty when rejected before construction
    Int level = 0;    // 0 when rejected before construction
    MateChecks checks;
    bool isomorphic = false; // level 1 forces a permutation matrix

    bool accepted() const { return checks.all(); }
};

// Precomputes every g-side invariant once so a candidate stream can be
// verified cheaply. Construction throws NotControllable.
class MateVerifier {
public:
    explicit MateVerifier(const Graph& g);

    MateCertificate verify(const Graph& h) const;

    const Graph& base() const { return g_; }
    const FnClassification& classification() const { return cls_; }
    const SpectralFingerprint& base_fingerprint() const { return fp_; }
    const Int& dn_hat() const { return dn_hat_; }

    // admissible level set when g is in F_n and d_n factored completely
    const std::optional<std::vector<Int>>& admissible() const { return admissible_; }

private:
    Graph g_;
    IntMatrix wg_;
    IntMatrix ag_;
    SpectralFingerprint fp_;
    FnClassification cls_;
    Int dn_hat_;
    std::optional<std::vector<Int>> admissible_;
};

MateCertificate verify_mate(const Graph& g, const Graph& h);

struct StreamIssue {
    enum class Kind { parse, verification };
    long line;
    std::string message;
    Kind kind = Kind::parse;
};

struct SearchResult {
    std::vector<MateCertificate> mates; // accepted, pairwise non-isomorphic, stream order
    std::vector<StreamIssue> issues;    // per-line decode errors and rejected certificates
    long candidates_seen = 0;
};

// Scans candidates for generalized cospectral mates of g: filters by order,
// edge count and fingerprint, drops isomorphs of g and of mates already
// found, verifies the survivors. For g in F_n two accepted non-isomorphic
// mates may never share a level, and the count may never exceed the bound;
// either violation throws ContradictionReport.
SearchResult search_mates(const Graph& g, const std::vector<Graph>& candidates);
SearchResult search_mates(const Graph& g, std::istream& graph6_lines);

struct QColumnDiagnostics {
    struct Entry {
        Int p;
        unsigned k = 0;
        bool pairwise_orthogonal = false; // v_i . v_j = 0 mod p^2k, all i, j
        bool norm_exact = false;          // p^2k exactly divides v_i . v_i
        bool row_sum_exact = false;       // p^k exactly divides v_i . e
    };
    std::vector<Entry> entries; // one per prime power of the level
    bool passed = true;
    std::string violation; // first failed congruence, empty when passed
};

// Congruence probes on the columns of level(Q) * Q at every prime power of
// the level. Q must be orthogonal and regular (PreconditionViolated), with a
// completely factorable level (IncompleteFactorization).
QColumnDiagnostics q_column_diagnostics(const RatMatrix& q);

// Serialized certificate: {"mate_g6", "level", "checks", "q_denominator_lcm",
// "isomorphic", "accepted"}, all big integers as decimal strings.
// indent < 0 yields the compact single-line form.
std::string certificate_json(const MateCertificate& cert, int indent = -1);

} // namespace cospec
