#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"

namespace isospec {

/// Nonnegative real or +infinity. Infinity is a state, never an overflowed
/// double; two infinite values compare equal.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double v) : value_(v) {}
    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr double value() const noexcept {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

inline double singularity_threshold(const Matrix& t, Complex z, const Config& cfg = {}) {
    return cfg.infinity * (1.0 + std::abs(z) + frobenius_norm(t));
}

inline std::vector<double> shifted_singular_values(const Matrix& t, Complex z) {
    return singular_values(shifted(t, z));
}

/// ||(zI - T)^{-1}||, infinite on (numerically) the spectrum.
inline ExtendedReal resolvent_norm(const Matrix& t, Complex z, const Config& cfg = {}) {
    const double smin = shifted_singular_values(t, z).back();
    if (smin <= singularity_threshold(t, z, cfg)) return ExtendedReal::infinity();
    return ExtendedReal(1.0 / smin);
}

/// s_k(zI - T), k in 1..dim.
inline double singular_value_function(const Matrix& t, Complex z, std::size_t k) {
    if (k < 1 || k > t.dim()) throw IndexOutOfRange("singular value index must lie in 1..dim");
    return shifted_singular_values(t, z)[k - 1];
}

struct GridSpec {
    double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
    std::size_t nx = 2, ny = 2;

    void validate() const {
        if (!(re_min < re_max) || !(im_min < im_max)) throw InputError("grid bounds must satisfy min < max");
        if (nx < 2 || ny < 2) throw InputError("grid needs at least 2 nodes per axis");
    }

    /// Node in row i (imaginary axis), column j (real axis).
    Complex node(std::size_t i, std::size_t j) const {
        const double re = re_min + (re_max - re_min) * static_cast<double>(j) / static_cast<double>(nx - 1);
        const double im = im_min + (im_max - im_min) * static_cast<double>(i) / static_cast<double>(ny - 1);
        return {re, im};
    }
};

/// Row-major field of s_min(zI - T) over a grid.
struct GridField {
    GridSpec spec;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * spec.nx + j]; }
};

inline GridField grid_scan(const Matrix& t, const GridSpec& g) {
    g.validate();
    GridField f{g, std::vector<double>(g.nx * g.ny)};
    for (std::size_t i = 0; i < g.ny; ++i)
        for (std::size_t j = 0; j < g.nx; ++j) f.values[i * g.nx + j] = shifted_singular_values(t, g.node(i, j)).back();
    return f;
}

enum class OracleVerdict { ConsistentAtTolerance, Falsified };

/// Outcome of a numeric falsification attempt. For the polynomial oracle the
/// witness is a polynomial; for the resolvent samplers it is a point z.
struct ComparisonResult {
    double max_rel_gap = 0.0;
    Complex witness_z{};
    std::size_t samples = 0;
    OracleVerdict verdict = OracleVerdict::ConsistentAtTolerance;
    double tolerance = 0.0;
    std::optional<std::size_t> witness_index;
    std::optional<Polynomial> witness_poly;
    std::optional<std::size_t> min_witness_degree;  // lowest degree among falsifying polynomials
};

/// |a - b| / max(a, b), with values at or below `floor` treated as zero.
inline double relative_gap(double a, double b, double floor) {
    const bool za = a <= floor, zb = b <= floor;
    if (za && zb) return 0.0;
    if (za || zb) return 1.0;
    return std::abs(a - b) / std::max(a, b);
}

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

inline std::vector<Complex> spectrum_points(const Matrix& t) {
    if (t.dim() <= 3) return eigenvalues_small(t);
    return roots(minimal_polynomial(t));
}

}  // namespace detail

/// Sample points for the resolvent comparators: half from a shifted Halton
/// net over a square around both spectra, half on circles of radius 1e-1 and
/// 1e-2 about every eigenvalue. Deterministic in `seed`.
inline std::vector<Complex> comparison_samples(const Matrix& a, const Matrix& b, std::size_t n, std::uint64_t seed) {
    std::vector<Complex> all = detail::spectrum_points(a);
    const auto cb = detail::spectrum_points(b);
    all.insert(all.end(), cb.begin(), cb.end());
    detail::sort_complex(all);
    Complex centroid{};
    for (const auto& c : all) centroid += c;
    centroid /= static_cast<double>(all.size());
    std::vector<Complex> centers;
    for (const auto& c : all)
        if (std::none_of(centers.begin(), centers.end(),
                         [&](Complex e) { return std::abs(e - c) <= 1e-6 * (1.0 + std::abs(c)); }))
            centers.push_back(c);
    const double side = 4.0 * (1.0 + std::max(spectral_norm(a), spectral_norm(b)));

    std::mt19937_64 gen(detail::splitmix64(seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double sx = unit(gen), sy = unit(gen), phase = unit(gen);

    std::vector<Complex> pts;
    const std::size_t n_circle = n / 2;
    const std::size_t n_net = n - n_circle;
    for (std::size_t i = 0; i < n_net; ++i) {
        const double u = std::fmod(detail::radical_inverse(i + 1, 2) + sx, 1.0);
        const double v = std::fmod(detail::radical_inverse(i + 1, 3) + sy, 1.0);
        pts.push_back(centroid + Complex((u - 0.5) * side, (v - 0.5) * side));
    }
    constexpr double radii[] = {1e-1, 1e-2};
    const std::size_t rings = 2 * centers.size();
    const std::size_t per_ring = (n_circle + rings - 1) / std::max<std::size_t>(rings, 1);
    for (std::size_t i = 0; i < n_circle; ++i) {
        const std::size_t ring = i % rings;
        const std::size_t k = i / rings;
        const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + phase) / static_cast<double>(per_ring);
        pts.push_back(centers[ring / 2] + std::polar(radii[ring % 2], angle));
    }
    return pts;
}

namespace detail {

template <class GapFn>
ComparisonResult compare_at_samples(const Matrix& a, const Matrix& b, std::size_t n, std::uint64_t seed,
                                    const Config& cfg, GapFn gap) {
    ComparisonResult res;
    res.tolerance = cfg.tol;
    const auto pts = comparison_samples(a, b, n, seed);
    res.samples = pts.size();
    bool first = true;
    for (const auto& z : pts) {
        const double g = gap(z);
        if (first || g > res.max_rel_gap) {
            res.max_rel_gap = g;
            res.witness_z = z;
            first = false;
        }
    }
    res.verdict = res.max_rel_gap > cfg.tol ? OracleVerdict::Falsified : OracleVerdict::ConsistentAtTolerance;
    return res;
}

}  // namespace detail

/// Relative gap of s_min(zI - A) and s_min(zI - B) at one point; each
/// resolvent is formed at its own dimension.
inline double smin_gap(const Matrix& a, const Matrix& b, Complex z, const Config& cfg = {}) {
    const double fa = shifted_singular_values(a, z).back();
    const double fb = shifted_singular_values(b, z).back();
    const double floor = std::max(singularity_threshold(a, z, cfg), singularity_threshold(b, z, cfg));
    return relative_gap(fa, fb, floor);
}

/// Numeric test of ||(zI-A)^{-1}|| = ||(zI-B)^{-1}||. Sizes may differ.
inline ComparisonResult compare_pseudospectra(const Matrix& a, const Matrix& b, std::size_t n_samples,
                                              std::uint64_t seed, const Config& cfg = {}) {
    return detail::compare_at_samples(a, b, n_samples, seed, cfg,
                                      [&](Complex z) { return smin_gap(a, b, z, cfg); });
}

/// Numeric test of s_k(zI-A) = s_k(zI-B) for every k.
inline ComparisonResult compare_super_pseudospectra(const Matrix& a, const Matrix& b, std::size_t n_samples,
                                                    std::uint64_t seed, const Config& cfg = {}) {
    if (a.dim() != b.dim()) throw DimensionMismatch("super-identical comparison needs equal dimensions");
    return detail::compare_at_samples(a, b, n_samples, seed, cfg, [&](Complex z) {
        const auto sa = shifted_singular_values(a, z);
        const auto sb = shifted_singular_values(b, z);
        const double floor = std::max(singularity_threshold(a, z, cfg), singularity_threshold(b, z, cfg));
        double g = 0.0;
        for (std::size_t k = 0; k < sa.size(); ++k) g = std::max(g, relative_gap(sa[k], sb[k], floor));
        return g;
    });
}

/// Index of lambda from the growth rate of the resolvent: the slope of
/// log M(r) against log(1/r), M(r) = max of the resolvent norm on |z - lambda| = r.
inline std::size_t estimate_index(const Matrix& t, Complex lambda, const Config& cfg = {}) {
    const auto clusters = eigen_clusters(t, cfg);
    const double tol = cluster_tolerance(t, cfg);
    const EigenCluster* match = nullptr;
    for (const auto& c : clusters)
        if (std::abs(c.center - lambda) <= tol && (!match || std::abs(c.center - lambda) < std::abs(match->center - lambda)))
            match = &c;
    if (!match) throw NotAnEigenvalue("point is not within the cluster tolerance of an eigenvalue");

    constexpr double radii[] = {1e-2, 1e-3, 1e-4};
    constexpr int points = 16;
    std::vector<double> xs, ys;
    for (double r : radii) {
        double m = 0.0;
        for (int k = 0; k < points; ++k) {
            const Complex z = match->center + std::polar(r, 2.0 * std::numbers::pi * k / points);
            const auto rn = resolvent_norm(t, z, cfg);
            if (!rn.is_infinite()) m = std::max(m, rn.value());
        }
        if (m > 0.0) {
            xs.push_back(std::log(1.0 / r));
            ys.push_back(std::log(m));
        }
    }
    if (xs.size() < 2) return match->size;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const long slope = std::lround(sxy / sxx);
    return static_cast<std::size_t>(std::max(1L, slope));
}

}  // namespace isospec
