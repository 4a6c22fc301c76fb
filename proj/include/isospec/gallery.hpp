#pragma once

#include <string>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace isospec {

enum class Relation { Identical, Isometric, SuperIdentical, Unitary };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Identical: return "identical";
        case Relation::Isometric: return "isometric";
        case Relation::SuperIdentical: return "super_identical";
        default: return "unitary";
    }
}

inline const Verdict& verdict_for(const ClassificationReport& r, Relation rel) {
    switch (rel) {
        case Relation::Identical: return r.identical;
        case Relation::Isometric: return r.isometric;
        case Relation::SuperIdentical: return r.super_identical;
        default: return r.unitary;
    }
}

struct ExpectedFact {
    Relation relation;
    Answer answer;
};

struct GalleryEntry {
    std::string name;
    Matrix a;
    Matrix b;
    std::vector<ExpectedFact> expected;
    std::string provenance;
};

namespace detail {

inline std::vector<GalleryEntry> build_gallery() {
    using R = Relation;
    std::vector<GalleryEntry> g;
    g.push_back({"rank-mismatch-diagonal",
                 Matrix::diagonal({1.0, 0.0, 0.0}),
                 Matrix::diagonal({1.0, 1.0, 0.0}),
                 {{R::Identical, Answer::Yes},
                  {R::Isometric, Answer::Yes},
                  {R::SuperIdentical, Answer::No},
                  {R::Unitary, Answer::No}},
                 "diag(1,0,0) vs diag(1,1,0): |p(A)| = max(|p(1)|, |p(0)|) = |p(B)|, yet the ranks differ "
                 "and none of the six super-identical trace conditions hold"});
    g.push_back({"same-minpoly-z2",
                 Matrix{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}},
                 Matrix{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}},
                 {{R::Identical, Answer::No}, {R::Isometric, Answer::No}},
                 "both minimal polynomials are z^2, but |A| <= |A|_F = 1 while |B| = sqrt(5), so p(z) = z "
                 "separates them"});
    g.push_back({"frobenius-gap-4x4",
                 Matrix{{1.0, 4.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 3.0}, {0.0, 0.0, 0.0, 0.0}},
                 Matrix{{1.0, 4.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 2.0}, {0.0, 0.0, 0.0, 0.0}},
                 {{R::Identical, Answer::Yes}},
                 "blocks t(1,0,4)+t(1,0,3) vs t(1,0,4)+t(1,0,2): equal quadratic minimal polynomial z^2 - z and "
                 "|A| = |B| = sqrt(17), while |A - gI|_F != |B - gI|_F for g = 0 and g = 1"});
    const Matrix nil{{0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}, {0.0, 0.0, 0.0}};
    g.push_back({"nilpotent-cubic-transpose",
                 nil,
                 transpose(nil),
                 {{R::SuperIdentical, Answer::Yes}, {R::Unitary, Answer::No}},
                 "a matrix and its transpose always have super-identical pseudospectra; "
                 "tr(AA*A^2A*^2) = 4 differs from 16 for the transpose"});
    g.push_back({"similar-not-ip-2x2",
                 Matrix{{0.0, 1.0}, {0.0, 0.0}},
                 Matrix{{0.0, 2.0}, {0.0, 0.0}},
                 {{R::Identical, Answer::No}},
                 "similar via S = diag(2,1): S A S^-1 = B, yet |A| = 1 and |B| = 2"});
    return g;
}

}  // namespace detail

inline const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> g = detail::build_gallery();
    return g;
}

inline std::vector<std::string> list_examples() {
    std::vector<std::string> names;
    for (const auto& e : gallery()) names.push_back(e.name);
    return names;
}

inline const GalleryEntry& example(const std::string& name) {
    for (const auto& e : gallery())
        if (e.name == name) return e;
    throw UnknownName("unknown gallery entry: " + name);
}

}  // namespace isospec
