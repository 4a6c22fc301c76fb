#pragma once

namespace isospec {

/// Numerical thresholds shared by every module.
///
/// `tol` is the base tolerance for "equal" comparisons of derived reals. A
/// quantity homogeneous of degree k in the matrix entries is compared with
/// threshold tol * (1 + scale)^k, where scale is the largest Frobenius norm
/// involved.
struct Config {
    double tol = 1e-8;
    double cluster = 1e-6;      // eigenvalue clustering, relative to 1 + |T|_F
    double confluence = 1e-10;  // divided differences fall back to p'(a)
    double rank = 1e-9;         // Krylov rank test for minimal polynomials
    double infinity = 1e-14;    // s_min below this => resolvent norm is infinite
    double hermitian = 1e-12;   // accepted Hermitian deviation, relative to |H|_F
};

}  // namespace isospec
