#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "classify.hpp"
#include "error.hpp"
#include "gallery.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "pseudospectra.hpp"

namespace isospec::io {

using nlohmann::json;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json matrix_to_json(const Matrix& t) {
    json rows = json::array();
    for (std::size_t i = 0; i < t.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < t.dim(); ++j) row.push_back(complex_to_json(t(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"d", t.dim()}, {"entries", std::move(rows)}};
}

namespace detail {

inline Complex complex_from_json(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InputError(where + ": expected [re, im] pair of numbers");
    const Complex z(v[0].get<double>(), v[1].get<double>());
    if (!is_finite(z)) throw InputError(where + ": value is not finite");
    return z;
}

}  // namespace detail

/// Parses {"d": n, "entries": [[[re, im], ...], ...]}; errors name the
/// offending field.
inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw InputError("matrix: expected a JSON object");
    if (!j.contains("d") || !j["d"].is_number_integer()) throw InputError("d: expected a positive integer");
    const auto d = j["d"].get<long long>();
    if (d < 1) throw InputError("d: expected a positive integer");
    if (!j.contains("entries") || !j["entries"].is_array()) throw InputError("entries: expected an array of rows");
    const auto& rows = j["entries"];
    if (rows.size() != static_cast<std::size_t>(d))
        throw InputError("entries: expected " + std::to_string(d) + " rows, got " + std::to_string(rows.size()));
    Matrix t(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string where = "entries[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(d))
            throw InputError(where + ": expected " + std::to_string(d) + " columns");
        for (std::size_t k = 0; k < rows[i].size(); ++k)
            t(i, k) = detail::complex_from_json(rows[i][k], where + "[" + std::to_string(k) + "]");
    }
    return t;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": malformed JSON (" + e.what() + ")");
    }
}

inline Matrix read_matrix_file(const std::string& path) {
    try {
        return matrix_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path + ": cannot write file");
    out << text;
}

inline json polynomial_to_json(const Polynomial& p) {
    json c = json::array();
    for (const auto& v : p.coeffs) c.push_back(complex_to_json(v));
    return {{"coeffs", std::move(c)}};
}

inline Polynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
        throw InputError("coeffs: expected a nonempty array of [re, im] pairs");
    std::vector<Complex> c;
    for (std::size_t k = 0; k < j["coeffs"].size(); ++k)
        c.push_back(detail::complex_from_json(j["coeffs"][k], "coeffs[" + std::to_string(k) + "]"));
    return Polynomial(std::move(c));
}

inline json comparison_to_json(const ComparisonResult& c) {
    json j{{"max_rel_gap", c.max_rel_gap},
           {"witness_z", complex_to_json(c.witness_z)},
           {"samples", c.samples},
           {"tolerance", c.tolerance},
           {"verdict", c.verdict == OracleVerdict::Falsified ? "Falsified" : "ConsistentAtTolerance"}};
    if (c.witness_index) j["witness_index"] = *c.witness_index;
    if (c.witness_poly) j["witness_poly"] = polynomial_to_json(*c.witness_poly);
    if (c.min_witness_degree) j["min_witness_degree"] = *c.min_witness_degree;
    return j;
}

inline json verdict_to_json(const Verdict& v) {
    json cert = json::array();
    for (const auto& e : v.certificate)
        cert.push_back({{"label", e.label},
                        {"left", complex_to_json(e.left)},
                        {"right", complex_to_json(e.right)},
                        {"gap", e.gap},
                        {"threshold", e.threshold}});
    json ev = json::array();
    for (const auto& c : v.evidence) ev.push_back(comparison_to_json(c));
    return {{"answer", to_string(v.answer)},
            {"criterion", to_string(v.criterion)},
            {"certificate", std::move(cert)},
            {"tolerance_used", v.tolerance_used},
            {"evidence", std::move(ev)}};
}

inline json spectrum_to_json(const std::vector<SpectrumEntry>& s) {
    json out = json::array();
    for (const auto& e : s)
        out.push_back({{"value", complex_to_json(e.value)},
                       {"algebraic_multiplicity", e.algebraic_multiplicity},
                       {"index", e.index}});
    return out;
}

inline json report_to_json(const ClassificationReport& r) {
    json j{{"dim_a", r.dim_a},
           {"dim_b", r.dim_b},
           {"tolerance", r.tolerance},
           {"minimal_poly_a", polynomial_to_json(r.minimal_a)},
           {"minimal_poly_b", polynomial_to_json(r.minimal_b)},
           {"characteristic_poly_a", polynomial_to_json(r.characteristic_a)},
           {"characteristic_poly_b", polynomial_to_json(r.characteristic_b)}};
    if (r.spectrum_a) j["spectrum_a"] = spectrum_to_json(*r.spectrum_a);
    if (r.spectrum_b) j["spectrum_b"] = spectrum_to_json(*r.spectrum_b);
    auto traces = [](const TraceInvariants& t) {
        json o = json::object();
        const auto& words = TraceInvariants::words(t.dim_class);
        for (std::size_t k = 0; k < words.size(); ++k) o["tr " + words[k]] = complex_to_json(t.values[k]);
        return o;
    };
    if (r.traces_a) j["trace_invariants_a"] = traces(*r.traces_a);
    if (r.traces_b) j["trace_invariants_b"] = traces(*r.traces_b);
    j["verdicts"] = {{"identical", verdict_to_json(r.identical)},
                     {"isometric", verdict_to_json(r.isometric)},
                     {"super_identical", verdict_to_json(r.super_identical)},
                     {"unitary", verdict_to_json(r.unitary)}};
    j["oracles"] = {{"polynomials", comparison_to_json(r.polynomial_oracle)},
                    {"pseudospectra", comparison_to_json(r.pseudospectra_oracle)}};
    j["implications_hold"] = r.implications_hold;
    j["violations"] = r.violations;
    return j;
}

inline json expected_to_json(const GalleryEntry& e) {
    json facts = json::object();
    for (const auto& f : e.expected) facts[to_string(f.relation)] = to_string(f.answer);
    return {{"name", e.name}, {"provenance", e.provenance}, {"expected", std::move(facts)}};
}

/// 17 significant digits, round-trip exact.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string grid_csv(const GridField& f) {
    std::ostringstream os;
    os << "re,im,smin\n";
    for (std::size_t i = 0; i < f.spec.ny; ++i)
        for (std::size_t j = 0; j < f.spec.nx; ++j) {
            const Complex z = f.spec.node(i, j);
            os << format_real(z.real()) << ',' << format_real(z.imag()) << ',' << format_real(f.at(i, j)) << '\n';
        }
    return os.str();
}

inline std::string comparison_grid_csv(const GridField& fa, const GridField& fb, const Matrix& a, const Matrix& b,
                                       const Config& cfg = {}) {
    std::ostringstream os;
    os << "re,im,smin_a,smin_b,rel_gap\n";
    for (std::size_t i = 0; i < fa.spec.ny; ++i)
        for (std::size_t j = 0; j < fa.spec.nx; ++j) {
            const Complex z = fa.spec.node(i, j);
            const double floor = std::max(singularity_threshold(a, z, cfg), singularity_threshold(b, z, cfg));
            os << format_real(z.real()) << ',' << format_real(z.imag()) << ',' << format_real(fa.at(i, j)) << ','
               << format_real(fb.at(i, j)) << ',' << format_real(relative_gap(fa.at(i, j), fb.at(i, j), floor))
               << '\n';
        }
    return os.str();
}

/// "re0,re1,im0,im1,nx,ny"
inline GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 6) throw InputError("grid: expected \"re0,re1,im0,im1,nx,ny\"");
    GridSpec g;
    try {
        std::size_t used = 0;
        auto num = [&](const std::string& s) {
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw InputError("grid: bad number '" + s + "'");
            return v;
        };
        auto count = [&](const std::string& s) {
            const long v = std::stol(s, &used);
            if (used != s.size() || v < 2) throw InputError("grid: node count '" + s + "' must be an integer >= 2");
            return static_cast<std::size_t>(v);
        };
        g.re_min = num(parts[0]);
        g.re_max = num(parts[1]);
        g.im_min = num(parts[2]);
        g.im_max = num(parts[3]);
        g.nx = count(parts[4]);
        g.ny = count(parts[5]);
    } catch (const std::logic_error&) {
        throw InputError("grid: unparseable value in \"" + text + "\"");
    }
    g.validate();
    return g;
}

}  // namespace isospec::io
