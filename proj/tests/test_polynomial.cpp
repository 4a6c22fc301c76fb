#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "isospec/linalg.hpp"
#include "isospec/polynomial.hpp"
#include "test_support.hpp"

using namespace isospec;
using isospec::testing::Rng;

namespace {

const Complex I{0.0, 1.0};
const Matrix kDiag100 = Matrix::diagonal({1.0, 0.0, 0.0});
const Matrix kDiag110 = Matrix::diagonal({1.0, 1.0, 0.0});
const Matrix kMinPolyA{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};

double coeff_gap(const Polynomial& p, const Polynomial& q) {
    if (p.coeffs.size() != q.coeffs.size()) return 1e300;
    double g = 0.0;
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) g = std::max(g, std::abs(p.coeffs[k] - q.coeffs[k]));
    return g;
}

Polynomial random_poly(Rng& rng, int degree) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = rng.cnormal();
    return Polynomial(std::move(c));
}

}  // namespace

TEST(EvalScalar, Examples) {
    EXPECT_EQ(eval_scalar(Polynomial{0.0, 0.0, 1.0}, Complex(1.0, 1.0)), Complex(0.0, 2.0));
    EXPECT_EQ(eval_scalar(Polynomial{1.0}, Complex(3.0, -7.0)), Complex(1.0));
    EXPECT_EQ(eval_scalar(Polynomial{1.0, 0.0, 1.0}, 2.0), Complex(5.0));
}

TEST(EvalMatrix, Examples) {
    const Matrix n{{0.0, 1.0}, {0.0, 0.0}};
    EXPECT_EQ(eval_matrix(Polynomial{0.0, 0.0, 1.0}, n), Matrix(2));
    EXPECT_EQ(eval_matrix(Polynomial{0.0, 1.0}, n), n);
    EXPECT_EQ(eval_matrix(Polynomial{1.0}, n), Matrix::identity(2));
}

TEST(EvalMatrix, UpperPairTransfer) {
    Rng rng(41);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_poly(rng, rng.integer(0, 6));
        const Complex a = rng.cnormal(), d = rng.cnormal();
        const Complex b = k % 4 == 0 ? a : rng.cnormal();
        const Matrix got = eval_matrix(p, upper_pair(a, b, d));
        const Matrix want = upper_pair(eval_scalar(p, a), eval_scalar(p, b), d * divided_difference(p, a, b));
        double scale = 1.0;
        for (const auto& v : want.data()) scale = std::max(scale, std::abs(v));
        EXPECT_LE(max_abs_diff(got, want), 1e-10 * scale);
    }
}

TEST(EvalMatrix, BorderedPairTransfer) {
    Rng rng(43);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_poly(rng, rng.integer(0, 6));
        const Complex g = rng.cnormal(), a = rng.cnormal(), d = rng.cnormal();
        const Complex b = k % 4 == 0 ? a : rng.cnormal();
        const Matrix got = eval_matrix(p, bordered_pair(g, a, b, d));
        const Matrix want =
            bordered_pair(eval_scalar(p, g), eval_scalar(p, a), eval_scalar(p, b), d * divided_difference(p, a, b));
        double scale = 1.0;
        for (const auto& v : want.data()) scale = std::max(scale, std::abs(v));
        EXPECT_LE(max_abs_diff(got, want), 1e-10 * scale);
    }
}

TEST(DividedDifference, Examples) {
    const Polynomial sq{0.0, 0.0, 1.0};
    EXPECT_EQ(divided_difference(sq, 3.0, 1.0), Complex(4.0));
    EXPECT_EQ(divided_difference(sq, 5.0, 5.0), Complex(10.0));
    // (p(1) - p(-1)) / 2 = (0 - 0) / 2
    EXPECT_EQ(divided_difference(Polynomial{0.0, -1.0, 0.0, 1.0}, 1.0, -1.0), Complex(0.0));
    EXPECT_EQ(divided_difference(Polynomial{2.0}, 1.0, 4.0), Complex(0.0));
}

TEST(DividedDifference, SymmetricAndMatchesQuotient) {
    Rng rng(47);
    for (int k = 0; k < 200; ++k) {
        const auto p = random_poly(rng, rng.integer(1, 7));
        const Complex a = rng.cnormal(), b = rng.cnormal();
        const Complex dab = divided_difference(p, a, b);
        const Complex dba = divided_difference(p, b, a);
        EXPECT_LE(std::abs(dab - dba), 1e-12 * (1.0 + std::abs(dab)));
        const Complex quotient = (eval_scalar(p, a) - eval_scalar(p, b)) / (a - b);
        EXPECT_LE(std::abs(dab - quotient), 1e-9 * (1.0 + std::abs(dab)));
    }
}

TEST(DividedDifference, ContinuousThroughConfluence) {
    const Polynomial p{1.0, -2.0, 0.5, 3.0};
    const Complex a(0.4, -0.3);
    const Complex deriv = divided_difference(p, a, a);
    for (double h : {1e-4, 1e-7, 1e-9, 1e-11}) EXPECT_NEAR(std::abs(divided_difference(p, a, a + h) - deriv), 0.0, 20 * h + 1e-12);
}

TEST(CharacteristicPolynomial, Examples) {
    EXPECT_LE(coeff_gap(characteristic_polynomial(kDiag100), Polynomial{0.0, 0.0, -1.0, 1.0}), 1e-12);
    EXPECT_LE(coeff_gap(characteristic_polynomial(kDiag110), Polynomial{0.0, 1.0, -2.0, 1.0}), 1e-12);
    EXPECT_LE(coeff_gap(characteristic_polynomial(Matrix::identity(2)), Polynomial{1.0, -2.0, 1.0}), 1e-12);
}

TEST(CharacteristicPolynomial, CayleyHamilton) {
    Rng rng(53);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
        const Matrix t = rng.matrix(d, rng.uniform(0.2, 3.0));
        const double f = frobenius_norm(t);
        EXPECT_LE(frobenius_norm(eval_matrix(characteristic_polynomial(t), t)), 1e-8 * std::pow(1.0 + f, d));
    }
}

TEST(MinimalPolynomial, Examples) {
    EXPECT_LE(coeff_gap(minimal_polynomial(kMinPolyA), Polynomial{0.0, 0.0, 1.0}), 1e-12);
    EXPECT_LE(coeff_gap(minimal_polynomial(Matrix::identity(3)), Polynomial{-1.0, 1.0}), 1e-12);
    // diag(1,0,0)^2 - diag(1,0,0) = 0 and diag(1,0,0) is not scalar.
    EXPECT_LE(coeff_gap(minimal_polynomial(kDiag100), Polynomial{0.0, -1.0, 1.0}), 1e-12);
    EXPECT_LE(coeff_gap(minimal_polynomial(Matrix{{I}}), Polynomial{-I, 1.0}), 1e-14);
    EXPECT_LE(coeff_gap(minimal_polynomial(Matrix(2)), Polynomial{0.0, 1.0}), 1e-14);
}

TEST(MinimalPolynomial, AnnihilatesAndDividesCharacteristic) {
    Rng rng(59);
    for (int k = 0; k < 150; ++k) {
        const std::size_t d = static_cast<std::size_t>(rng.integer(1, 4));
        Matrix t = rng.matrix(d);
        if (k % 3 == 1) {
            // Force repeated structure: U * (a I + N) * U* with N nilpotent of rank 1.
            Matrix base = Matrix::identity(d) * rng.cnormal();
            if (d > 1) base(0, d - 1) = rng.cnormal();
            t = isospec::testing::conjugate_by(rng.unitary(d), base);
        } else if (k % 3 == 2 && d >= 2) {
            std::vector<Complex> diag(d, rng.cnormal());
            diag[0] = rng.cnormal();
            t = isospec::testing::conjugate_by(rng.unitary(d), Matrix::diagonal(diag));
        }
        const Polynomial m = minimal_polynomial(t);
        EXPECT_EQ(m.leading(), Complex(1.0));
        const double f = frobenius_norm(t);
        EXPECT_LE(frobenius_norm(eval_matrix(m, t)), 1e-7 * std::pow(1.0 + f, m.degree()));
        const auto div = divide(characteristic_polynomial(t), m);
        double rem = 0.0;
        for (const auto& c : div.remainder.coeffs) rem += std::norm(c);
        EXPECT_LE(std::sqrt(rem), 1e-7) << "d=" << d << " k=" << k;
    }
}

TEST(MinimalPolynomial, DegreeOfStructuredMatrices) {
    Rng rng(61);
    const Complex a = rng.cnormal(), b = rng.cnormal();
    const Matrix u = rng.unitary(3);
    EXPECT_EQ(minimal_polynomial(isospec::testing::conjugate_by(u, bordered_pair(a, a, b, 1.3))).degree(), 2u);
    EXPECT_EQ(minimal_polynomial(isospec::testing::conjugate_by(u, bordered_pair(a, a, a, 0.0))).degree(), 1u);
    EXPECT_EQ(minimal_polynomial(Matrix{{a, 1.0, 0.0}, {0.0, a, 1.0}, {0.0, 0.0, a}}).degree(), 3u);
}

TEST(Roots, AllDegrees) {
    EXPECT_TRUE(roots(Polynomial{4.0}).empty());
    EXPECT_TRUE(same_root_multiset(roots(Polynomial{-2.0, 1.0}), {2.0}, 1e-15));
    EXPECT_TRUE(same_root_multiset(roots(Polynomial{1.0, 0.0, 1.0}), {I, -I}, 1e-15));
    // (z-1)(z+2)(z-i)(z+i)(z-3)
    Polynomial p{1.0};
    for (Complex r : {Complex(1.0), Complex(-2.0), I, -I, Complex(3.0)}) {
        std::vector<Complex> c(p.coeffs.size() + 1);
        for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
            c[k + 1] += p.coeffs[k];
            c[k] -= r * p.coeffs[k];
        }
        p = Polynomial(std::move(c));
    }
    EXPECT_TRUE(same_root_multiset(roots(p), {1.0, -2.0, I, -I, 3.0}, 1e-9));
}

TEST(Divide, QuotientAndRemainder) {
    // z^3 - 1 = (z - 1)(z^2 + z + 1)
    const auto d = divide(Polynomial{-1.0, 0.0, 0.0, 1.0}, Polynomial{-1.0, 1.0});
    EXPECT_LE(coeff_gap(d.quotient, Polynomial{1.0, 1.0, 1.0}), 1e-15);
    EXPECT_LE(std::abs(d.remainder.coeffs[0]), 1e-15);
}

TEST(SpectrumWithIndex, Examples) {
    auto s = spectrum_with_index(kMinPolyA);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].value, Complex(0.0));
    EXPECT_EQ(s[0].algebraic_multiplicity, 3u);
    EXPECT_EQ(s[0].index, 2u);

    s = spectrum_with_index(kDiag110);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].value, Complex(1.0));
    EXPECT_EQ(s[0].algebraic_multiplicity, 2u);
    EXPECT_EQ(s[0].index, 1u);
    EXPECT_EQ(s[1].value, Complex(0.0));
    EXPECT_EQ(s[1].algebraic_multiplicity, 1u);
    EXPECT_EQ(s[1].index, 1u);

    // (T - aI)(T - bI) = 0 for T(a, a, b, delta): diagonalizable with a double.
    const Complex a(0.5, 1.0), b(-1.0, 0.25);
    s = spectrum_with_index(bordered_pair(a, a, b, 2.0));
    ASSERT_EQ(s.size(), 2u);
    for (const auto& e : s) {
        EXPECT_EQ(e.index, 1u);
        EXPECT_EQ(e.algebraic_multiplicity, std::abs(e.value - a) < 1e-9 ? 2u : 1u);
    }

    EXPECT_THROW(spectrum_with_index(Matrix(4)), UnsupportedDimension);
}

TEST(SpectrumWithIndex, MultiplicitiesSumToDimension) {
    Rng rng(67);
    for (int k = 0; k < 60; ++k) {
        const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
        const auto s = spectrum_with_index(rng.matrix(d));
        std::size_t total = 0;
        for (const auto& e : s) {
            total += e.algebraic_multiplicity;
            EXPECT_LE(e.index, e.algebraic_multiplicity);
            EXPECT_GE(e.index, 1u);
        }
        EXPECT_EQ(total, d);
    }
}

TEST(SpectrumWithIndex, AmbiguousClusters) {
    const double tol = Config{}.cluster * (1.0 + std::sqrt(2.0));
    EXPECT_THROW(spectrum_with_index(Matrix::diagonal({1.0, 1.0 + 1.5 * tol})), ClusterAmbiguity);
    EXPECT_NO_THROW(spectrum_with_index(Matrix::diagonal({1.0, 1.0 + 5.0 * tol})));
}

TEST(RandomPolynomial, Deterministic) {
    EXPECT_EQ(random_polynomial(4, 1234), random_polynomial(4, 1234));
    for (std::uint64_t s = 0; s < 20; ++s) EXPECT_EQ(random_polynomial(1, s).degree(), 1u);
    std::set<std::vector<double>> seen;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto p = random_polynomial(4, s);
        EXPECT_GE(p.degree(), 1u);
        EXPECT_LE(p.degree(), 4u);
        std::vector<double> key;
        for (const auto& c : p.coeffs) {
            key.push_back(c.real());
            key.push_back(c.imag());
        }
        seen.insert(key);
    }
    EXPECT_EQ(seen.size(), 100u);
    EXPECT_THROW(random_polynomial(0, 1), InputError);
}
