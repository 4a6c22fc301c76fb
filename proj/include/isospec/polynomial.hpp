#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace isospec {

/// Complex polynomial in the monomial basis; coeffs[k] multiplies z^k.
struct Polynomial {
    std::vector<Complex> coeffs{Complex{}};

    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) throw InputError("polynomial needs at least one coefficient");
    }
    Polynomial(std::initializer_list<Complex> c) : Polynomial(std::vector<Complex>(c)) {}

    std::size_t degree() const noexcept { return coeffs.size() - 1; }
    Complex leading() const noexcept { return coeffs.back(); }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Drops exactly-zero leading coefficients.
inline Polynomial trimmed(Polynomial p) {
    while (p.coeffs.size() > 1 && p.coeffs.back() == Complex{}) p.coeffs.pop_back();
    return p;
}

inline Polynomial monic(Polynomial p) {
    p = trimmed(std::move(p));
    const Complex lead = p.leading();
    for (auto& c : p.coeffs) c /= lead;
    p.coeffs.back() = 1.0;
    return p;
}

inline Polynomial derivative(const Polynomial& p) {
    if (p.degree() == 0) return Polynomial{0.0};
    std::vector<Complex> d(p.degree());
    for (std::size_t k = 1; k < p.coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * p.coeffs[k];
    return Polynomial(std::move(d));
}

inline Complex eval_scalar(const Polynomial& p, Complex z) {
    Complex acc = p.coeffs.back();
    for (std::size_t k = p.coeffs.size() - 1; k-- > 0;) acc = acc * z + p.coeffs[k];
    return acc;
}

inline Matrix eval_matrix(const Polynomial& p, const Matrix& t) {
    const std::size_t n = t.dim();
    Matrix acc = Matrix::identity(n) * p.coeffs.back();
    for (std::size_t k = p.coeffs.size() - 1; k-- > 0;) {
        acc = acc * t;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.coeffs[k];
    }
    return acc;
}

/// D_p(a, b): (p(a) - p(b)) / (a - b), or p'(a) when a and b are confluent.
/// The off-confluence value is computed by synthetic division of p by
/// (z - b), which avoids the cancellation of the difference quotient.
inline Complex divided_difference(const Polynomial& p, Complex a, Complex b, const Config& cfg = {}) {
    if (std::abs(a - b) <= cfg.confluence * (1.0 + std::abs(a) + std::abs(b))) return eval_scalar(derivative(p), a);
    if (p.degree() == 0) return 0.0;
    // q(z) = (p(z) - p(b)) / (z - b), evaluated at a.
    const std::size_t m = p.degree();
    std::vector<Complex> q(m);
    q[m - 1] = p.coeffs[m];
    for (std::size_t k = m - 1; k-- > 0;) q[k] = p.coeffs[k + 1] + b * q[k + 1];
    return eval_scalar(Polynomial(std::move(q)), a);
}

struct PolyDivision {
    Polynomial quotient;
    Polynomial remainder;
};

inline PolyDivision divide(const Polynomial& num, const Polynomial& den) {
    const Polynomial d = trimmed(den);
    if (d.degree() == 0 && d.leading() == Complex{}) throw InputError("division by the zero polynomial");
    std::vector<Complex> r = num.coeffs;
    if (num.degree() < d.degree()) return {Polynomial{0.0}, num};
    std::vector<Complex> q(num.degree() - d.degree() + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
        const Complex f = r[k + d.degree()] / d.leading();
        q[k] = f;
        for (std::size_t j = 0; j <= d.degree(); ++j) r[k + j] -= f * d.coeffs[j];
    }
    r.resize(std::max<std::size_t>(d.degree(), 1));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

/// chi_T(z) = det(zI - T) by the Faddeev-LeVerrier trace recursion.
inline Polynomial characteristic_polynomial(const Matrix& t) {
    const std::size_t n = t.dim();
    std::vector<Complex> c(n + 1);
    c[n] = 1.0;
    Matrix m(n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        m = t * m;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
        c[n - k] = -trace(t * m) / static_cast<double>(k);
    }
    return Polynomial(std::move(c));
}

/// Smallest-degree monic p with p(T) = 0, from the first linear dependence
/// among vec(I), vec(T), vec(T^2), ... . Columns are normalized before the
/// rank test so growth of the powers does not mask the dependence.
inline Polynomial minimal_polynomial(const Matrix& t, const Config& cfg = {}) {
    const std::size_t n = t.dim();
    std::vector<std::vector<Complex>> cols;
    std::vector<double> scale;
    Matrix power = Matrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) power = power * t;
        std::vector<Complex> col(power.data().begin(), power.data().end());
        double norm = 0.0;
        for (const auto& v : col) norm += std::norm(v);
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (auto& v : col) v /= norm;
        scale.push_back(norm > 0.0 ? norm : 1.0);
        cols.push_back(std::move(col));
        if (k == 0) continue;

        const Svd svd = jacobi_svd(cols);
        if (svd.values.back() > cfg.rank * svd.values.front()) continue;
        const auto& null = svd.right.back();
        std::vector<Complex> coeffs(k + 1);
        for (std::size_t j = 0; j <= k; ++j) coeffs[j] = null[j] / scale[j];
        // The lower powers are independent, so the top coefficient is nonzero.
        return monic(Polynomial(std::move(coeffs)));
    }
    return characteristic_polynomial(t);  // unreachable in exact arithmetic
}

/// Roots of p with multiplicity. Degrees up to 3 use closed forms; higher
/// degrees use Durand-Kerner iteration.
inline std::vector<Complex> roots(const Polynomial& p) {
    const Polynomial m = monic(p);
    std::vector<Complex> r;
    switch (m.degree()) {
        case 0:
            return r;
        case 1:
            r = {-m.coeffs[0]};
            break;
        case 2:
            r = detail::monic_quadratic_roots(m.coeffs[1], m.coeffs[0]);
            break;
        case 3:
            r = detail::monic_cubic_roots(m.coeffs[2], m.coeffs[1], m.coeffs[0]);
            break;
        default: {
            const std::size_t deg = m.degree();
            double radius = 0.0;
            for (std::size_t k = 0; k < deg; ++k) radius = std::max(radius, std::abs(m.coeffs[k]));
            radius = 1.0 + radius;
            for (std::size_t k = 0; k < deg; ++k)
                r.push_back(std::polar(radius * 0.5, 2.0 * std::numbers::pi * (k + 0.25) / deg + 0.4));
            for (int it = 0; it < 2000; ++it) {
                double change = 0.0;
                for (std::size_t i = 0; i < deg; ++i) {
                    Complex den = 1.0;
                    for (std::size_t j = 0; j < deg; ++j)
                        if (j != i) den *= (r[i] - r[j]);
                    if (den == Complex{}) den = 1e-300;
                    const Complex step = eval_scalar(m, r[i]) / den;
                    r[i] -= step;
                    change = std::max(change, std::abs(step));
                }
                if (change <= 1e-16 * radius) break;
            }
        }
    }
    detail::sort_complex(r);
    return r;
}

/// True when the two root lists agree as multisets, each root matched to a
/// distinct partner within `tol`.
inline bool same_root_multiset(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        std::size_t best = b.size();
        double best_d = tol;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(x - b[j]);
            if (!used[j] && d <= best_d) {
                best = j;
                best_d = d;
            }
        }
        if (best == b.size()) return false;
        used[best] = true;
    }
    return true;
}

struct SpectrumEntry {
    Complex value;
    std::size_t algebraic_multiplicity = 1;
    std::size_t index = 1;
};

struct EigenCluster {
    Complex center;
    std::size_t size = 0;
};

namespace detail {

/// Single-linkage clustering at `tol`; throws ClusterAmbiguity when two
/// clusters come within 2 * tol of each other.
inline std::vector<EigenCluster> cluster_values(const std::vector<Complex>& values, double tol) {
    const std::size_t n = values.size();
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = i;
    auto find = [&](std::size_t i) {
        while (label[i] != i) i = label[i] = label[label[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) <= tol) label[find(i)] = find(j);

    std::vector<EigenCluster> clusters;
    std::vector<std::size_t> root_of;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(root_of.begin(), root_of.end(), r);
        if (it == root_of.end()) {
            root_of.push_back(r);
            clusters.push_back({values[i], 1});
        } else {
            auto& c = clusters[static_cast<std::size_t>(it - root_of.begin())];
            c.center += values[i];
            ++c.size;
        }
    }
    for (auto& c : clusters) c.center /= static_cast<double>(c.size);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (find(i) != find(j) && std::abs(values[i] - values[j]) <= 2.0 * tol)
                throw ClusterAmbiguity("eigenvalues " + std::to_string(std::abs(values[i] - values[j])) +
                                       " apart cannot be classified as equal or distinct");
    return clusters;
}

}  // namespace detail

inline double cluster_tolerance(const Matrix& t, const Config& cfg = {}) {
    return cfg.cluster * (1.0 + frobenius_norm(t));
}

/// Eigenvalue clusters of T for any dimension. For dim <= 3 the
/// characteristic roots are used; above that, the roots of the minimal
/// polynomial (which carry the spectrum but not the multiplicities).
inline std::vector<EigenCluster> eigen_clusters(const Matrix& t, const Config& cfg = {}) {
    const auto values = t.dim() <= 3 ? eigenvalues_small(t) : roots(minimal_polynomial(t, cfg));
    return detail::cluster_values(values, cluster_tolerance(t, cfg));
}

/// Spectrum with algebraic multiplicities and indices nu_T(lambda), the
/// multiplicity of each eigenvalue as a root of the minimal polynomial.
inline std::vector<SpectrumEntry> spectrum_with_index(const Matrix& t, const Config& cfg = {}) {
    if (t.dim() > 3) throw UnsupportedDimension("spectrum_with_index supports dim <= 3");
    const double tol = cluster_tolerance(t, cfg);
    const auto clusters = detail::cluster_values(eigenvalues_small(t), tol);
    std::vector<SpectrumEntry> out;
    for (const auto& c : clusters) out.push_back({c.center, c.size, 0});

    for (const auto& r : roots(minimal_polynomial(t, cfg))) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < out.size(); ++k)
            if (std::abs(out[k].value - r) < std::abs(out[best].value - r)) best = k;
        ++out[best].index;
    }
    for (auto& e : out) e.index = std::clamp<std::size_t>(e.index, 1, e.algebraic_multiplicity);
    return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Degree uniform in [1, max_degree], coefficients i.i.d. complex standard
/// normal (E|c|^2 = 1). Deterministic in `seed`.
inline Polynomial random_polynomial(int max_degree, std::uint64_t seed) {
    if (max_degree < 1) throw InputError("max_degree must be at least 1");
    std::mt19937_64 gen(detail::splitmix64(seed));
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const int d = deg(gen);
    std::vector<Complex> c(static_cast<std::size_t>(d) + 1);
    for (auto& v : c) {
        const double re = normal(gen);
        const double im = normal(gen);
        v = {re, im};
    }
    return Polynomial(std::move(c));
}

}  // namespace isospec
