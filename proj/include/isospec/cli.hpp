#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "classify.hpp"
#include "gallery.hpp"
#include "io.hpp"
#include "pseudospectra.hpp"

namespace isospec::cli {

enum ExitCode : int { Ok = 0, InputFailure = 2, Ambiguous = 3 };

/// Tolerance resolution: flag, then ISOSPEC_TOL, then the default.
inline double resolve_tolerance(std::optional<double> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ISOSPEC_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) throw InputError("ISOSPEC_TOL: expected a positive number");
        return v;
    }
    return Config{}.tol;
}

inline std::string fmt_complex(Complex z) {
    // + 0.0 folds -0 into 0
    return "(" + io::format_real(z.real() + 0.0) + ", " + io::format_real(z.imag() + 0.0) + ")";
}

inline std::string fmt_poly(const Polynomial& p) {
    std::string s;
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
        if (!s.empty()) s += " + ";
        s += fmt_complex(p.coeffs[k]);
        if (k > 0) s += k == 1 ? " z" : " z^" + std::to_string(k);
    }
    return s;
}

inline void print_oracle(std::ostream& out, const char* name, const ComparisonResult& c) {
    out << name << ": " << (c.verdict == OracleVerdict::Falsified ? "Falsified" : "ConsistentAtTolerance")
        << "  max_rel_gap=" << io::format_real(c.max_rel_gap) << "  samples=" << c.samples;
    if (c.witness_poly) {
        out << "  witness_index=" << *c.witness_index << "  witness_degree=" << c.witness_poly->degree();
        if (c.min_witness_degree) out << "  min_witness_degree=" << *c.min_witness_degree;
    } else {
        out << "  witness_z=" << fmt_complex(c.witness_z);
    }
    out << '\n';
}

inline void print_report(std::ostream& out, const ClassificationReport& r) {
    out << "dimensions: " << r.dim_a << " x " << r.dim_b << "   tolerance: " << io::format_real(r.tolerance) << '\n';
    out << "minimal polynomial A: " << fmt_poly(r.minimal_a) << '\n';
    out << "minimal polynomial B: " << fmt_poly(r.minimal_b) << '\n';
    auto spectrum = [&](const char* tag, const std::optional<std::vector<SpectrumEntry>>& s) {
        if (!s) return;
        out << "spectrum " << tag << ":";
        for (const auto& e : *s)
            out << "  " << fmt_complex(e.value) << " mult " << e.algebraic_multiplicity << " index " << e.index;
        out << '\n';
    };
    spectrum("A", r.spectrum_a);
    spectrum("B", r.spectrum_b);
    const std::pair<const char*, const Verdict*> rows[] = {{"identical pseudospectra", &r.identical},
                                                            {"polynomially isometric", &r.isometric},
                                                            {"super-identical", &r.super_identical},
                                                            {"unitarily similar", &r.unitary}};
    for (const auto& [label, v] : rows) {
        out << label << ": " << to_string(v->answer) << "  [" << to_string(v->criterion) << "]\n";
        for (const auto& e : v->certificate)
            out << "    " << e.label << ": " << fmt_complex(e.left) << " vs " << fmt_complex(e.right)
                << "  gap " << io::format_real(e.gap) << '\n';
    }
    print_oracle(out, "polynomial oracle", r.polynomial_oracle);
    print_oracle(out, "pseudospectra oracle", r.pseudospectra_oracle);
    if (!r.implications_hold)
        for (const auto& v : r.violations) out << "warning: " << v << '\n';
}

struct Options {
    std::string path_a, path_b;
    std::optional<double> tol;
    bool as_json = false;
    std::string grid;
    std::string out_path;
    std::string compare_path;
    OracleOptions oracle;
    std::string gallery_name;
    std::string out_dir = ".";
};

inline int cmd_classify(const Options& o, std::ostream& out) {
    Config cfg;
    cfg.tol = resolve_tolerance(o.tol);
    const Matrix a = io::read_matrix_file(o.path_a);
    const Matrix b = io::read_matrix_file(o.path_b);
    const auto report = full_report(a, b, o.oracle, cfg);
    if (o.as_json)
        out << io::report_to_json(report).dump(2) << '\n';
    else
        print_report(out, report);
    return Ok;
}

inline int cmd_pseudospectra(const Options& o, std::ostream& out) {
    Config cfg;
    cfg.tol = resolve_tolerance(o.tol);
    const GridSpec g = io::parse_grid(o.grid);
    const Matrix a = io::read_matrix_file(o.path_a);
    std::string csv;
    if (!o.compare_path.empty()) {
        const Matrix b = io::read_matrix_file(o.compare_path);
        csv = io::comparison_grid_csv(grid_scan(a, g), grid_scan(b, g), a, b, cfg);
    } else {
        csv = io::grid_csv(grid_scan(a, g));
    }
    if (o.out_path.empty())
        out << csv;
    else
        io::write_text_file(o.out_path, csv);
    return Ok;
}

inline int cmd_falsify(const Options& o, std::ostream& out) {
    Config cfg;
    cfg.tol = resolve_tolerance(o.tol);
    const Matrix a = io::read_matrix_file(o.path_a);
    const Matrix b = io::read_matrix_file(o.path_b);
    const auto& p = o.oracle;
    if (p.max_degree < 1) throw InputError("--degree must be at least 1");
    print_oracle(out, "polynomial oracle", falsify_by_polynomials(a, b, p.n_polys, p.max_degree, p.seed, cfg));
    print_oracle(out, "pseudospectra oracle", compare_pseudospectra(a, b, p.z_samples, p.seed, cfg));
    return Ok;
}

inline int cmd_gallery_list(std::ostream& out) {
    for (const auto& name : list_examples()) out << name << '\n';
    return Ok;
}

inline int cmd_gallery_get(const Options& o, std::ostream& out) {
    const auto& e = example(o.gallery_name);
    namespace fs = std::filesystem;
    fs::create_directories(o.out_dir);
    const fs::path dir(o.out_dir);
    io::write_text_file((dir / "a.json").string(), io::matrix_to_json(e.a).dump(2) + "\n");
    io::write_text_file((dir / "b.json").string(), io::matrix_to_json(e.b).dump(2) + "\n");
    io::write_text_file((dir / "expected.json").string(), io::expected_to_json(e).dump(2) + "\n");
    out << "wrote " << (dir / "a.json").string() << ", " << (dir / "b.json").string() << ", "
        << (dir / "expected.json").string() << '\n';
    return Ok;
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide polynomial isometry and pseudospectral equivalence of small complex matrices", "isospec"};
    app.require_subcommand(1);
    Options o;

    auto add_oracle_flags = [&](CLI::App* sub) {
        sub->add_option("--polys", o.oracle.n_polys, "number of random polynomials")->capture_default_str();
        sub->add_option("--degree", o.oracle.max_degree, "maximum polynomial degree")->capture_default_str();
        sub->add_option("--seed", o.oracle.seed, "seed for both oracles")->capture_default_str();
        sub->add_option("--z-samples", o.oracle.z_samples, "resolvent sample points")->capture_default_str();
    };

    auto* classify = app.add_subcommand("classify", "classify a pair of matrices");
    classify->add_option("a", o.path_a, "matrix A (JSON)")->required();
    classify->add_option("b", o.path_b, "matrix B (JSON)")->required();
    classify->add_option("--tol", o.tol, "comparison tolerance (default 1e-8, env ISOSPEC_TOL)");
    classify->add_flag("--json", o.as_json, "print the report as JSON");
    add_oracle_flags(classify);

    auto* pseudo = app.add_subcommand("pseudospectra", "export s_min(zI - A) over a grid as CSV");
    pseudo->add_option("a", o.path_a, "matrix (JSON)")->required();
    pseudo->add_option("--grid", o.grid, "\"re0,re1,im0,im1,nx,ny\"")->required();
    pseudo->add_option("--out", o.out_path, "output CSV (stdout when omitted)");
    pseudo->add_option("--compare", o.compare_path, "second matrix; writes re,im,smin_a,smin_b,rel_gap");
    pseudo->add_option("--tol", o.tol, "tolerance used for the singular floor");

    auto* falsify = app.add_subcommand("falsify", "run the numeric falsification oracles");
    falsify->add_option("a", o.path_a, "matrix A (JSON)")->required();
    falsify->add_option("b", o.path_b, "matrix B (JSON)")->required();
    falsify->add_option("--tol", o.tol, "comparison tolerance");
    add_oracle_flags(falsify);

    auto* gallery_cmd = app.add_subcommand("gallery", "curated matrix pairs");
    gallery_cmd->require_subcommand(1);
    auto* list = gallery_cmd->add_subcommand("list", "list entry names");
    auto* get = gallery_cmd->add_subcommand("get", "write a.json, b.json, expected.json");
    get->add_option("name", o.gallery_name, "entry name")->required();
    get->add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return InputFailure;
    }

    try {
        if (classify->parsed()) return cmd_classify(o, out);
        if (pseudo->parsed()) return cmd_pseudospectra(o, out);
        if (falsify->parsed()) return cmd_falsify(o, out);
        if (list->parsed()) return cmd_gallery_list(out);
        if (get->parsed()) return cmd_gallery_get(o, out);
    } catch (const ClusterAmbiguity& e) {
        err << "ambiguous: " << e.what() << '\n';
        return Ambiguous;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return InputFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return InputFailure;
    }
    return InputFailure;
}

}  // namespace isospec::cli
