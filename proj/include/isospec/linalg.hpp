#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace isospec {

inline Matrix adjoint(const Matrix& t) {
    Matrix r(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) r(i, j) = std::conj(t(j, i));
    return r;
}

inline Complex trace_word(const Matrix& t, const TraceWord& w) {
    const Matrix ta = adjoint(t);
    auto letters = w.letters();
    Matrix prod = letters[0] == Letter::X ? t : ta;
    for (std::size_t k = 1; k < letters.size(); ++k) prod = prod * (letters[k] == Letter::X ? t : ta);
    return trace(prod);
}

inline double frobenius_norm(const Matrix& t) {
    double s = 0.0;
    for (const auto& v : t.data()) s += std::norm(v);
    return std::sqrt(s);
}

/// (T + T*) / 2
inline Matrix real_part(const Matrix& t) {
    Matrix r(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) r(i, j) = 0.5 * (t(i, j) + std::conj(t(j, i)));
    return r;
}

/// Eigenvalues of a Hermitian matrix, nonincreasing, by cyclic complex
/// Jacobi rotations.
inline std::vector<double> hermitian_eigenvalues(const Matrix& h, const Config& cfg = {}) {
    const std::size_t n = h.dim();
    const double fro = frobenius_norm(h);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(h(i, j) - std::conj(h(j, i))) > cfg.hermitian * fro)
                throw NotHermitian("matrix is not Hermitian within tolerance");

    Matrix a = real_part(h);
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        const double off = off_norm();
        if (off == 0.0 || off <= 1e-14 * fro) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex g = a(p, q);
                const double mag = std::abs(g);
                if (mag == 0.0) continue;
                const Complex e = g / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G = diag(1, conj(e)) * [[c, s], [-s, c]] on the (p, q) plane.
                const Complex gpp = c, gpq = s, gqp = -s * std::conj(e), gqq = c * std::conj(e);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

/// Singular value decomposition of a general (rows x cols) matrix given as
/// columns. `right` holds the right singular vectors as columns, in the same
/// order as `values` (nonincreasing).
struct Svd {
    std::vector<double> values;
    std::vector<std::vector<Complex>> right;
};

/// One-sided (Hestenes) Jacobi SVD. Small singular values come out with
/// absolute error on the order of eps * s_1, which the resolvent-norm code
/// near the spectrum depends on.
inline Svd jacobi_svd(std::vector<std::vector<Complex>> cols) {
    const std::size_t n = cols.size();
    const std::size_t m = n ? cols[0].size() : 0;
    std::vector<std::vector<Complex>> v(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{};
                for (std::size_t r = 0; r < m; ++r) {
                    alpha += std::norm(cols[i][r]);
                    beta += std::norm(cols[j][r]);
                    gamma += std::conj(cols[i][r]) * cols[j][r];
                }
                const double mag = std::abs(gamma);
                if (mag == 0.0 || mag <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Complex phase = std::conj(gamma) / mag;  // rotates column j so <a_i, a_j> is real
                const double zeta = (beta - alpha) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < m; ++r) {
                    const Complex ai = cols[i][r], aj = cols[j][r] * phase;
                    cols[i][r] = c * ai - s * aj;
                    cols[j][r] = s * ai + c * aj;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex vi = v[i][r], vj = v[j][r] * phase;
                    v[i][r] = c * vi - s * vj;
                    v[j][r] = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& x : cols[i]) s += std::norm(x);
        norms[i] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return norms[a] > norms[b]; });

    Svd out;
    for (auto k : order) {
        out.values.push_back(norms[k]);
        out.right.push_back(std::move(v[k]));
    }
    return out;
}

inline std::vector<std::vector<Complex>> columns_of(const Matrix& t) {
    std::vector<std::vector<Complex>> cols(t.dim(), std::vector<Complex>(t.dim()));
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) cols[j][i] = t(i, j);
    return cols;
}

inline std::vector<double> singular_values(const Matrix& t) { return jacobi_svd(columns_of(t)).values; }

inline double spectral_norm(const Matrix& t) { return singular_values(t).front(); }

namespace detail {

inline bool is_upper_triangular(const Matrix& t) {
    for (std::size_t i = 1; i < t.dim(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (t(i, j) != Complex{}) return false;
    return true;
}

inline bool is_lower_triangular(const Matrix& t) {
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = i + 1; j < t.dim(); ++j)
            if (t(i, j) != Complex{}) return false;
    return true;
}

/// Roots of z^2 + b z + c without cancellation.
inline std::vector<Complex> monic_quadratic_roots(Complex b, Complex c) {
    Complex s = std::sqrt(b * b - 4.0 * c);
    if ((std::conj(b) * s).real() < 0.0) s = -s;
    const Complex q = -0.5 * (b + s);
    if (q == Complex{}) return {0.0, 0.0};
    return {q, c / q};
}

inline Complex cubic_value(Complex a, Complex b, Complex c, Complex z) { return ((z + a) * z + b) * z + c; }

/// Newton steps on z^3 + a z^2 + b z + c, keeping only steps that reduce
/// the residual.
inline Complex polish_cubic_root(Complex a, Complex b, Complex c, Complex z) {
    double res = std::abs(cubic_value(a, b, c, z));
    for (int it = 0; it < 8 && res > 0.0; ++it) {
        const Complex d = (3.0 * z + 2.0 * a) * z + b;
        if (d == Complex{}) break;
        const Complex next = z - cubic_value(a, b, c, z) / d;
        const double r = std::abs(cubic_value(a, b, c, next));
        if (!(r < res)) break;
        z = next;
        res = r;
    }
    return z;
}

/// Roots of z^3 + a z^2 + b z + c. Real cubics with three real roots use the
/// trigonometric form; everything else takes one Cardano root, polishes it,
/// and deflates to a quadratic.
inline std::vector<Complex> monic_cubic_roots(Complex a, Complex b, Complex c) {
    const Complex shift = a / 3.0;
    const Complex p = b - a * a / 3.0;
    const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const bool real_coeffs = a.imag() == 0.0 && b.imag() == 0.0 && c.imag() == 0.0;

    if (real_coeffs) {
        const double pr = p.real(), qr = q.real();
        if (pr == 0.0 && qr == 0.0) return {-shift, -shift, -shift};
        const double disc = -(4.0 * pr * pr * pr + 27.0 * qr * qr);
        if (disc >= 0.0 && pr < 0.0) {
            const double m = 2.0 * std::sqrt(-pr / 3.0);
            const double arg = std::clamp(3.0 * qr / (pr * m), -1.0, 1.0);
            const double phi = std::acos(arg) / 3.0;
            std::vector<Complex> roots;
            for (int k = 0; k < 3; ++k)
                roots.emplace_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift.real(), 0.0);
            for (auto& r : roots) r = polish_cubic_root(a, b, c, r);
            return roots;
        }
    }

    Complex s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    if ((std::conj(q) * s).real() < 0.0) s = -s;
    const Complex w = -0.5 * q - s;  // larger modulus of -q/2 +- s
    Complex y;
    if (w == Complex{}) {
        y = 0.0;
    } else {
        Complex u = std::pow(w, 1.0 / 3.0);
        if (real_coeffs && w.imag() == 0.0) u = std::cbrt(w.real());
        y = u - p / (3.0 * u);
    }
    Complex r1 = polish_cubic_root(a, b, c, y - shift);
    // (z - r1)(z^2 + e z + f) with e = a + r1, f = b + r1 e
    const Complex e = a + r1;
    const Complex f = b + r1 * e;
    auto rest = monic_quadratic_roots(e, f);
    std::vector<Complex> roots{r1, polish_cubic_root(a, b, c, rest[0]), polish_cubic_root(a, b, c, rest[1])};
    return roots;
}

inline void sort_complex(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
    });
}

}  // namespace detail

/// Eigenvalues with algebraic multiplicity for dim <= 3, sorted by
/// decreasing real part.
inline std::vector<Complex> eigenvalues_small(const Matrix& t) {
    const std::size_t n = t.dim();
    if (n > 3) throw UnsupportedDimension("eigenvalues_small supports dim <= 3");
    std::vector<Complex> ev;
    if (n == 1 || detail::is_upper_triangular(t) || detail::is_lower_triangular(t)) {
        for (std::size_t i = 0; i < n; ++i) ev.push_back(t(i, i));
    } else if (n == 2) {
        const Complex det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
        ev = detail::monic_quadratic_roots(-trace(t), det);
    } else {
        // Faddeev-LeVerrier for the monic characteristic polynomial.
        const Complex c2 = -trace(t);
        Matrix m = t;
        for (std::size_t i = 0; i < 3; ++i) m(i, i) += c2;
        Matrix tm = t * m;
        const Complex c1 = -trace(tm) / 2.0;
        for (std::size_t i = 0; i < 3; ++i) tm(i, i) += c1;
        const Complex c0 = -trace(t * tm) / 3.0;
        ev = detail::monic_cubic_roots(c2, c1, c0);
    }
    detail::sort_complex(ev);
    return ev;
}

/// Support value of the numerical range in direction theta: the largest
/// eigenvalue of Re(e^{-i theta} T).
inline double numerical_range_support(const Matrix& t, double theta) {
    const Matrix rotated = t * std::polar(1.0, -theta);
    return hermitian_eigenvalues(real_part(rotated)).front();
}

}  // namespace isospec
