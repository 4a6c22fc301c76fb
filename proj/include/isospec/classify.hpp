#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "pseudospectra.hpp"

namespace isospec {

enum class DimClass { Two, Three };

/// Unitary-similarity trace invariants used by the low-dimensional tests:
/// (tr X*X, tr X, tr X^2) for 2x2, and
/// (tr X*X, tr X*X^2, tr X*^2X^2, tr X, tr X^2, tr X^3) for 3x3.
struct TraceInvariants {
    DimClass dim_class = DimClass::Two;
    std::vector<Complex> values;

    static const std::vector<std::string>& words(DimClass c) {
        static const std::vector<std::string> two{"X*X", "X", "XX"};
        static const std::vector<std::string> three{"X*X", "X*XX", "X*X*XX", "X", "XX", "XXX"};
        return c == DimClass::Two ? two : three;
    }
};

inline TraceInvariants trace_invariants(const Matrix& t) {
    if (t.dim() != 2 && t.dim() != 3) throw UnsupportedDimension("trace invariants need dim 2 or 3");
    TraceInvariants inv;
    inv.dim_class = t.dim() == 2 ? DimClass::Two : DimClass::Three;
    for (const auto& w : TraceInvariants::words(inv.dim_class)) inv.values.push_back(trace_word(t, TraceWord::parse(w)));
    return inv;
}

enum class Answer { Yes, No, Undecided };

/// Which decision rule produced a verdict.
enum class Criterion {
    TraceTriple,                // 2x2: tr X*X, tr X, tr X^2 complete
    MinimalPolynomialMismatch,  // identical pseudospectra force equal minimal polynomials
    SixTraces,                  // 3x3 with equal characteristic polynomials
    FrobeniusDefect,            // 3x3, quadratic minimal polynomial, unequal multiplicities
    QuadraticNorm,              // quadratic minimal polynomials, any sizes: spectral norms
    ScalarMatrices,             // linear minimal polynomials
    QuadraticUnitary,           // 3x3 quadratic: identical pseudospectra and equal chi
    InvariantMismatch,          // a unitary-similarity invariant differs
    CharacteristicMismatch,     // super-identical pseudospectra force equal chi
    SizeMismatch,               // relation only defined within one dimension
    EqualMatrices,              // A = B entrywise, U = I
    Inconclusive,               // no criterion applies; oracle evidence attached
};

inline const char* to_string(Answer a) {
    switch (a) {
        case Answer::Yes: return "Yes";
        case Answer::No: return "No";
        default: return "Undecided";
    }
}

inline const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::TraceTriple: return "trace_triple";
        case Criterion::MinimalPolynomialMismatch: return "minimal_polynomial_mismatch";
        case Criterion::SixTraces: return "six_traces";
        case Criterion::FrobeniusDefect: return "frobenius_defect";
        case Criterion::QuadraticNorm: return "quadratic_norm";
        case Criterion::ScalarMatrices: return "scalar_matrices";
        case Criterion::QuadraticUnitary: return "quadratic_unitary";
        case Criterion::InvariantMismatch: return "invariant_mismatch";
        case Criterion::CharacteristicMismatch: return "characteristic_mismatch";
        case Criterion::SizeMismatch: return "size_mismatch";
        case Criterion::EqualMatrices: return "equal_matrices";
        default: return "inconclusive";
    }
}

/// One compared quantity. `threshold` is the absolute tolerance the gap was
/// held against, so a verdict can be re-adjudicated without recomputation.
struct CertificateEntry {
    std::string label;
    Complex left;
    Complex right;
    double gap = 0.0;
    double threshold = 0.0;

    bool agrees() const { return gap <= threshold; }
};

struct Verdict {
    Answer answer = Answer::Undecided;
    Criterion criterion = Criterion::Inconclusive;
    std::vector<CertificateEntry> certificate;
    double tolerance_used = 0.0;
    std::vector<ComparisonResult> evidence;
};

/// Sample sizes and seed for the numeric oracles.
struct OracleOptions {
    std::size_t n_polys = 200;
    int max_degree = 6;
    std::uint64_t seed = 42;
    std::size_t z_samples = 400;
};

namespace detail {

/// Accumulates certificate entries; a quantity homogeneous of degree k is
/// compared at tol * (1 + scale)^k.
class Ledger {
public:
    Ledger(double tol, double scale) : tol_(tol), scale_(scale) {}

    bool compare(std::string label, Complex l, Complex r, int degree) {
        CertificateEntry e{std::move(label), l, r, std::abs(l - r), tol_ * std::pow(1.0 + scale_, degree)};
        const bool ok = e.agrees();
        entries_.push_back(std::move(e));
        return ok;
    }

    void note(std::string label, Complex l, Complex r, double gap = 0.0, double threshold = 0.0) {
        entries_.push_back({std::move(label), l, r, gap, threshold});
    }

    Verdict verdict(Answer a, Criterion c) && { return Verdict{a, c, std::move(entries_), tol_, {}}; }
    std::vector<CertificateEntry>& entries() { return entries_; }
    double tolerance() const { return tol_; }

private:
    double tol_;
    double scale_;
    std::vector<CertificateEntry> entries_;
};

inline double pair_scale(const Matrix& a, const Matrix& b) { return std::max(frobenius_norm(a), frobenius_norm(b)); }

inline bool compare_trace_words(Ledger& ledger, const Matrix& a, const Matrix& b, DimClass c) {
    static const int two[] = {2, 1, 2};
    static const int three[] = {2, 3, 4, 1, 2, 3};
    const auto& words = TraceInvariants::words(c);
    bool all = true;
    for (std::size_t k = 0; k < words.size(); ++k) {
        const auto w = TraceWord::parse(words[k]);
        const int degree = c == DimClass::Two ? two[k] : three[k];
        all = ledger.compare("tr " + words[k], trace_word(a, w), trace_word(b, w), degree) && all;
    }
    return all;
}

inline bool compare_characteristic(Ledger& ledger, const Matrix& a, const Matrix& b) {
    const auto ca = characteristic_polynomial(a);
    const auto cb = characteristic_polynomial(b);
    const std::size_t d = a.dim();
    bool all = true;
    for (std::size_t k = 1; k <= d; ++k)
        all = ledger.compare("chi coeff z^" + std::to_string(d - k), ca.coeffs[d - k], cb.coeffs[d - k],
                             static_cast<int>(k)) && all;
    return all;
}

struct MinimalPair {
    Polynomial a, b;
    std::vector<Complex> roots_a, roots_b;
    bool equal = false;
};

inline MinimalPair compare_minimal(Ledger& ledger, const Matrix& a, const Matrix& b, const Config& cfg) {
    MinimalPair mp{minimal_polynomial(a, cfg), minimal_polynomial(b, cfg), {}, {}, false};
    mp.roots_a = roots(mp.a);
    mp.roots_b = roots(mp.b);
    const double tol = cfg.cluster * (1.0 + pair_scale(a, b));
    mp.equal = same_root_multiset(mp.roots_a, mp.roots_b, tol);
    if (mp.roots_a.size() != mp.roots_b.size()) {
        ledger.note("minimal polynomial degree", static_cast<double>(mp.a.degree()), static_cast<double>(mp.b.degree()),
                    std::abs(static_cast<double>(mp.a.degree()) - static_cast<double>(mp.b.degree())), 0.0);
    } else {
        for (std::size_t k = 0; k < mp.roots_a.size(); ++k)
            ledger.note("minimal polynomial root " + std::to_string(k + 1), mp.roots_a[k], mp.roots_b[k],
                        std::abs(mp.roots_a[k] - mp.roots_b[k]), tol);
    }
    return mp;
}

/// Records max |a_ij - b_ij| only when it is within tolerance.
inline bool same_entries(Ledger& ledger, const Matrix& a, const Matrix& b) {
    const double gap = max_abs_diff(a, b);
    const double threshold = ledger.tolerance() * (1.0 + pair_scale(a, b));
    if (gap > threshold) return false;
    ledger.note("max |a_ij - b_ij|", gap, 0.0, gap, threshold);
    return true;
}

/// Eigenvalue of multiplicity two in a 3x3 matrix whose spectrum has
/// exactly two clusters.
inline Complex double_eigenvalue(const Matrix& t, const Config& cfg) {
    const auto clusters = detail::cluster_values(eigenvalues_small(t), cluster_tolerance(t, cfg));
    for (const auto& c : clusters)
        if (c.size == 2 && clusters.size() == 2) return c.center;
    throw ClusterAmbiguity("expected one double and one simple eigenvalue");
}

}  // namespace detail

inline ComparisonResult falsify_by_polynomials(const Matrix& a, const Matrix& b, std::size_t n_polys, int max_degree,
                                               std::uint64_t seed, const Config& cfg = {}) {
    ComparisonResult res;
    res.tolerance = cfg.tol;
    res.samples = n_polys;
    const std::uint64_t base = detail::splitmix64(seed);
    for (std::size_t i = 0; i < n_polys; ++i) {
        const auto p = random_polynomial(max_degree, base + i);
        const double na = spectral_norm(eval_matrix(p, a));
        const double nb = spectral_norm(eval_matrix(p, b));
        const double g = relative_gap(na, nb, 0.0);
        if (!res.witness_index || g > res.max_rel_gap) {
            res.max_rel_gap = g;
            res.witness_index = i;
            res.witness_poly = p;
        }
        if (g > cfg.tol && (!res.min_witness_degree || p.degree() < *res.min_witness_degree))
            res.min_witness_degree = p.degree();
    }
    res.verdict = res.max_rel_gap > cfg.tol ? OracleVerdict::Falsified : OracleVerdict::ConsistentAtTolerance;
    return res;
}

/// Identical pseudospectra for A, B of equal dimension 2 or 3.
inline Verdict decide_identical_pseudospectra(const Matrix& a, const Matrix& b, const Config& cfg = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatch("identical-pseudospectra test needs equal dimensions");
    if (a.dim() != 2 && a.dim() != 3) throw UnsupportedDimension("identical-pseudospectra test needs dim 2 or 3");
    detail::Ledger ledger(cfg.tol, detail::pair_scale(a, b));

    if (a.dim() == 2) {
        const bool eq = detail::compare_trace_words(ledger, a, b, DimClass::Two);
        return std::move(ledger).verdict(eq ? Answer::Yes : Answer::No, Criterion::TraceTriple);
    }

    const auto mp = detail::compare_minimal(ledger, a, b, cfg);
    if (!mp.equal) return std::move(ledger).verdict(Answer::No, Criterion::MinimalPolynomialMismatch);

    if (detail::compare_characteristic(ledger, a, b)) {
        const bool eq = detail::compare_trace_words(ledger, a, b, DimClass::Three);
        return std::move(ledger).verdict(eq ? Answer::Yes : Answer::No, Criterion::SixTraces);
    }

    // Equal quadratic minimal polynomial (z - a)(z - b), multiplicities swapped.
    const Complex ga = detail::double_eigenvalue(a, cfg);
    const Complex gb = detail::double_eigenvalue(b, cfg);
    ledger.note("double eigenvalue", ga, gb);
    const bool eq = ledger.compare("|T - gI|_F", frobenius_norm(shifted(a, ga)), frobenius_norm(shifted(b, gb)), 1);
    return std::move(ledger).verdict(eq ? Answer::Yes : Answer::No, Criterion::FrobeniusDefect);
}

/// Decision from minimal polynomials alone, valid for any sizes: unequal
/// minimal polynomials rule out identical pseudospectra; linear ones force
/// scalar matrices; quadratic ones reduce to comparing spectral norms.
inline Verdict decide_by_minimal_polynomials(const Matrix& a, const Matrix& b, const OracleOptions& opts = {},
                                             const Config& cfg = {}) {
    detail::Ledger ledger(cfg.tol, detail::pair_scale(a, b));
    const auto mp = detail::compare_minimal(ledger, a, b, cfg);
    if (!mp.equal) return std::move(ledger).verdict(Answer::No, Criterion::MinimalPolynomialMismatch);
    if (mp.a.degree() == 1) return std::move(ledger).verdict(Answer::Yes, Criterion::ScalarMatrices);
    if (mp.a.degree() == 2) {
        const bool eq = ledger.compare("|T|", spectral_norm(a), spectral_norm(b), 1);
        return std::move(ledger).verdict(eq ? Answer::Yes : Answer::No, Criterion::QuadraticNorm);
    }
    Verdict v = std::move(ledger).verdict(Answer::Undecided, Criterion::Inconclusive);
    v.evidence.push_back(falsify_by_polynomials(a, b, opts.n_polys, opts.max_degree, opts.seed, cfg));
    v.evidence.push_back(compare_pseudospectra(a, b, opts.z_samples, opts.seed, cfg));
    return v;
}

inline Verdict decide_polynomially_isometric(const Matrix& a, const Matrix& b, const OracleOptions& opts = {},
                                             const Config& cfg = {}) {
    if (a.dim() == b.dim() && (a.dim() == 2 || a.dim() == 3)) return decide_identical_pseudospectra(a, b, cfg);
    return decide_by_minimal_polynomials(a, b, opts, cfg);
}

inline Verdict decide_super_identical(const Matrix& a, const Matrix& b, const Config& cfg = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatch("super-identical test needs equal dimensions");
    if (a.dim() == 2) return decide_identical_pseudospectra(a, b, cfg);
    if (a.dim() != 3) throw UnsupportedDimension("super-identical test needs dim 2 or 3");
    detail::Ledger ledger(cfg.tol, detail::pair_scale(a, b));
    const bool eq = detail::compare_trace_words(ledger, a, b, DimClass::Three);
    return std::move(ledger).verdict(eq ? Answer::Yes : Answer::No, Criterion::SixTraces);
}

/// Trace word whose inequality certifies the 3x3 nilpotent A and its
/// transpose are not unitarily similar.
inline const TraceWord& unitary_witness_word() {
    static const TraceWord w = TraceWord::parse("XX*XXX*X*");
    return w;
}

inline Verdict decide_unitarily_similar(const Matrix& a, const Matrix& b, const OracleOptions& opts = {},
                                        const Config& cfg = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatch("unitary-similarity test needs equal dimensions");
    if (a.dim() == 2) return decide_identical_pseudospectra(a, b, cfg);
    if (a.dim() != 3) throw UnsupportedDimension("unitary-similarity test needs dim 2 or 3");

    detail::Ledger ledger(cfg.tol, detail::pair_scale(a, b));
    if (detail::same_entries(ledger, a, b)) return std::move(ledger).verdict(Answer::Yes, Criterion::EqualMatrices);
    const auto mp = detail::compare_minimal(ledger, a, b, cfg);
    if (!mp.equal) return std::move(ledger).verdict(Answer::No, Criterion::MinimalPolynomialMismatch);

    if (mp.a.degree() == 2) {
        // The identical-pseudospectra certificate already holds the chi comparison.
        Verdict ip = decide_identical_pseudospectra(a, b, cfg);
        const bool same_chi = std::all_of(ip.certificate.begin(), ip.certificate.end(), [](const CertificateEntry& e) {
            return e.label.rfind("chi coeff", 0) != 0 || e.agrees();
        });
        ip.answer = ip.answer == Answer::Yes && same_chi ? Answer::Yes : Answer::No;
        ip.criterion = Criterion::QuadraticUnitary;
        return ip;
    }

    bool same = detail::compare_trace_words(ledger, a, b, DimClass::Three);
    const auto& w = unitary_witness_word();
    same = ledger.compare("tr " + w.str(), trace_word(a, w), trace_word(b, w), static_cast<int>(w.length())) && same;
    if (!same) return std::move(ledger).verdict(Answer::No, Criterion::InvariantMismatch);
    Verdict v = std::move(ledger).verdict(Answer::Undecided, Criterion::Inconclusive);
    v.evidence.push_back(compare_super_pseudospectra(a, b, opts.z_samples, opts.seed, cfg));
    return v;
}

/// Norm of the strictly upper part of a Schur form, for 2x2 matrices and
/// 3x3 matrices with quadratic minimal polynomial (where that part is a
/// single entry).
inline double coupling_delta(const Matrix& t, const Config& cfg = {}) {
    if (t.dim() == 3) {
        if (minimal_polynomial(t, cfg).degree() != 2)
            throw UnsupportedShape("coupling_delta on 3x3 needs a quadratic minimal polynomial");
    } else if (t.dim() != 2) {
        throw UnsupportedShape("coupling_delta needs dim 2 or 3");
    }
    const double fro = frobenius_norm(t);
    double diag = 0.0;
    for (const auto& ev : eigenvalues_small(t)) diag += std::norm(ev);
    return std::sqrt(std::max(0.0, fro * fro - diag));
}

/// Largest and smallest eigenvalues of Re A and Re B coincide whenever A and B
/// have identical pseudospectra; this compares them.
struct RealPartCheck {
    bool equal = false;
    std::vector<CertificateEntry> certificate;
};

inline RealPartCheck real_part_spectrum_check(const Matrix& a, const Matrix& b, const Config& cfg = {}) {
    detail::Ledger ledger(cfg.tol, detail::pair_scale(a, b));
    bool eq = ledger.compare("lambda_max(Re T)", numerical_range_support(a, 0.0), numerical_range_support(b, 0.0), 1);
    eq = ledger.compare("lambda_min(Re T)", -numerical_range_support(a, std::numbers::pi),
                        -numerical_range_support(b, std::numbers::pi), 1) && eq;
    return {eq, std::move(ledger.entries())};
}

enum class PairMatch { Same, Swapped, Neither };

/// Real pair {x, y} with x >= y determined by its sum and product.
inline std::pair<double, double> pair_from_sum_product(double sum, double product) {
    const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * product));
    const double x = 0.5 * (sum + disc);
    return {x, sum - x};
}

/// Equal sums and products force (x1, y1) to equal (x2, y2) up to order.
inline PairMatch match_pairs(double x1, double y1, double x2, double y2, double tol) {
    auto close = [&](double u, double v) { return std::abs(u - v) <= tol * (1.0 + std::max(std::abs(u), std::abs(v))); };
    if (close(x1, x2) && close(y1, y2)) return PairMatch::Same;
    if (close(x1, y2) && close(y1, x2)) return PairMatch::Swapped;
    return PairMatch::Neither;
}

struct ClassificationReport {
    std::size_t dim_a = 0, dim_b = 0;
    Polynomial minimal_a, minimal_b;
    Polynomial characteristic_a, characteristic_b;
    std::optional<std::vector<SpectrumEntry>> spectrum_a, spectrum_b;
    std::optional<TraceInvariants> traces_a, traces_b;
    Verdict identical, isometric, super_identical, unitary;
    ComparisonResult polynomial_oracle, pseudospectra_oracle;
    bool implications_hold = true;
    std::vector<std::string> violations;
    double tolerance = 0.0;
};

inline ClassificationReport full_report(const Matrix& a, const Matrix& b, const OracleOptions& opts = {},
                                        const Config& cfg = {}) {
    ClassificationReport r;
    r.dim_a = a.dim();
    r.dim_b = b.dim();
    r.tolerance = cfg.tol;
    r.minimal_a = minimal_polynomial(a, cfg);
    r.minimal_b = minimal_polynomial(b, cfg);
    r.characteristic_a = characteristic_polynomial(a);
    r.characteristic_b = characteristic_polynomial(b);
    if (a.dim() <= 3) r.spectrum_a = spectrum_with_index(a, cfg);
    if (b.dim() <= 3) r.spectrum_b = spectrum_with_index(b, cfg);
    if (a.dim() == 2 || a.dim() == 3) r.traces_a = trace_invariants(a);
    if (b.dim() == 2 || b.dim() == 3) r.traces_b = trace_invariants(b);

    const bool same_dim = a.dim() == b.dim();
    if (same_dim && (a.dim() == 2 || a.dim() == 3)) {
        r.identical = decide_identical_pseudospectra(a, b, cfg);
        r.isometric = decide_polynomially_isometric(a, b, opts, cfg);
        r.super_identical = decide_super_identical(a, b, cfg);
        r.unitary = decide_unitarily_similar(a, b, opts, cfg);
    } else if (detail::Ledger eq(cfg.tol, detail::pair_scale(a, b)); same_dim && detail::same_entries(eq, a, b)) {
        r.identical = std::move(eq).verdict(Answer::Yes, Criterion::EqualMatrices);
        r.isometric = r.super_identical = r.unitary = r.identical;
    } else {
        r.identical = decide_by_minimal_polynomials(a, b, opts, cfg);
        r.isometric = r.identical;
        if (!same_dim) {
            r.super_identical = Verdict{Answer::No, Criterion::SizeMismatch, {}, cfg.tol, {}};
            r.unitary = r.super_identical;
        } else if (a.dim() == 1) {
            r.super_identical = r.identical;
            r.unitary = r.identical;
        } else {
            detail::Ledger ledger(cfg.tol, detail::pair_scale(a, b));
            if (r.identical.answer == Answer::No) {
                r.super_identical = Verdict{Answer::No, r.identical.criterion, r.identical.certificate, cfg.tol, {}};
            } else if (!detail::compare_characteristic(ledger, a, b)) {
                r.super_identical = std::move(ledger).verdict(Answer::No, Criterion::CharacteristicMismatch);
            } else {
                r.super_identical = std::move(ledger).verdict(Answer::Undecided, Criterion::Inconclusive);
                r.super_identical.evidence.push_back(compare_super_pseudospectra(a, b, opts.z_samples, opts.seed, cfg));
            }
            if (r.super_identical.answer == Answer::No) {
                r.unitary = r.super_identical;
            } else {
                detail::Ledger words(cfg.tol, detail::pair_scale(a, b));
                bool same = true;
                for (const char* w : {"X*X", "X*XX", "X*X*XX", "XX*XXX*X*"}) {
                    const auto tw = TraceWord::parse(w);
                    same = words.compare(std::string("tr ") + w, trace_word(a, tw), trace_word(b, tw),
                                         static_cast<int>(tw.length())) && same;
                }
                if (!same) {
                    r.unitary = std::move(words).verdict(Answer::No, Criterion::InvariantMismatch);
                } else {
                    r.unitary = std::move(words).verdict(Answer::Undecided, Criterion::Inconclusive);
                    r.unitary.evidence = r.super_identical.evidence;
                    if (r.unitary.evidence.empty())
                        r.unitary.evidence.push_back(compare_super_pseudospectra(a, b, opts.z_samples, opts.seed, cfg));
                }
            }
        }
    }

    r.polynomial_oracle = falsify_by_polynomials(a, b, opts.n_polys, opts.max_degree, opts.seed, cfg);
    r.pseudospectra_oracle = compare_pseudospectra(a, b, opts.z_samples, opts.seed, cfg);

    auto require = [&](bool ok, const char* what) {
        if (!ok) {
            r.implications_hold = false;
            r.violations.emplace_back(what);
        }
    };
    require(r.unitary.answer != Answer::Yes || r.super_identical.answer == Answer::Yes,
            "unitary similarity without super-identical pseudospectra");
    require(r.super_identical.answer != Answer::Yes || r.identical.answer == Answer::Yes,
            "super-identical without identical pseudospectra");
    const double root_tol = cfg.cluster * (1.0 + detail::pair_scale(a, b));
    require(r.identical.answer != Answer::Yes ||
                same_root_multiset(roots(r.minimal_a), roots(r.minimal_b), root_tol),
            "identical pseudospectra with different minimal polynomials");
    require(r.identical.answer == Answer::Undecided || r.isometric.answer == Answer::Undecided ||
                r.identical.answer == r.isometric.answer,
            "identical pseudospectra and polynomial isometry disagree");
    return r;
}

}  // namespace isospec
