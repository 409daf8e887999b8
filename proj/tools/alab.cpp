// alab: Mahler measures, periodic-point growth, atoral classification,
// torsion scans, homoclinic windows and diophantine experiments for integer
// Laurent polynomials in several variables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alab/acceptance.hpp"
#include "alab/alab.hpp"
#include "alab/json_io.hpp"

using nlohmann::json;
using namespace alab;

namespace {

std::string num15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// `diag:n1,...,nd` or `mat:a11,a12;a21,a22` (row-major).
SubgroupLattice parse_lattice(const std::string& spec, int dims) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) fail("usage", "lattice spec needs a 'diag:' or 'mat:' prefix");
    const std::string kind = spec.substr(0, colon);
    const std::string body = spec.substr(colon + 1);
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == sep) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        out.push_back(cur);
        return out;
    };
    if (kind == "diag") {
        std::vector<long long> ns;
        for (const std::string& p : split(body, ',')) ns.push_back(std::stoll(p));
        if (dims > 0 && static_cast<int>(ns.size()) != dims)
            fail("usage", "diag lattice arity does not match --dims");
        return SubgroupLattice::diagonal(static_cast<int>(ns.size()), ns);
    }
    if (kind == "mat") {
        std::vector<std::vector<long long>> rows;
        for (const std::string& row : split(body, ';')) {
            std::vector<long long> r;
            for (const std::string& p : split(row, ',')) r.push_back(std::stoll(p));
            rows.push_back(std::move(r));
        }
        if (dims > 0 && static_cast<int>(rows.size()) != dims)
            fail("usage", "mat lattice arity does not match --dims");
        return SubgroupLattice(static_cast<int>(rows.size()), rows);
    }
    fail("usage", "unknown lattice spec kind: " + kind);
}

/// `diag-range:a:b:step` -> nZ^d for n = a, a+step, ..., <= b.
std::vector<SubgroupLattice> parse_gamma_sequence(const std::string& spec, int dims) {
    const std::string prefix = "diag-range:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string body = spec.substr(prefix.size());
        long long a = 0, b = 0, step = 1;
        if (std::sscanf(body.c_str(), "%lld:%lld:%lld", &a, &b, &step) != 3 || step <= 0)
            fail("usage", "expected diag-range:start:stop:step");
        std::vector<SubgroupLattice> out;
        for (long long n = a; n <= b; n += step) out.push_back(SubgroupLattice::scaled(dims, n));
        if (out.empty()) fail("usage", "empty diag-range");
        return out;
    }
    return {parse_lattice(spec, dims)};
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

void emit(const RunConfig& cfg, const std::string& out_path, const json& payload,
          const std::string& text) {
    std::string body = cfg.format == OutputFormat::json ? payload.dump(2) + "\n" : text;
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(out_path);
        if (!f) fail("io", "cannot open output path " + out_path);
        f << body;
    }
}

struct Options {
    RunConfig cfg;
    std::string out_path;
};

const char* method_name(MahlerMethod m) {
    switch (m) {
        case MahlerMethod::quadrature: return "quadrature";
        case MahlerMethod::riemann: return "riemann";
        default: return "resultant";
    }
}

int run_mahler(const Options& opt, const std::string& poly, int dims, const std::string& mode,
               int grid, long long res_n, const std::string& gamma_spec) {
    const LaurentPoly f = LaurentPoly::parse(poly, dims);
    MahlerEstimate est;
    if (mode == "quadrature") {
        est = mahler_quadrature(f, grid > 0 ? grid : 256, opt.cfg.threads);
    } else if (mode == "riemann") {
        if (gamma_spec.empty()) fail("usage", "riemann mode needs --gamma");
        est = riemann_sum_log(f, parse_lattice(gamma_spec, dims), opt.cfg.threads,
                              opt.cfg.max_cyclo_order);
    } else if (mode == "resultant") {
        const ResultantGrowth g = resultant_growth(f, res_n > 0 ? res_n : 16,
                                                   opt.cfg.max_cyclo_order);
        est.value = g.value;
        est.method = MahlerMethod::resultant;
        est.resolution = "n:" + std::to_string(res_n > 0 ? res_n : 16);
        est.excluded_zeros = g.excluded_roots;
    } else {
        fail("usage", "unknown mode " + mode);
    }
    json j{{"schema", 1},
           {"command", "mahler"},
           {"poly", f.str()},
           {"dims", dims},
           {"mode", method_name(est.method)},
           {"resolution", est.resolution},
           {"excluded_zeros", est.excluded_zeros},
           {"value", est.value}};
    emit(opt.cfg, opt.out_path, j,
         "m(f) = " + num15(est.value) + "  [" + method_name(est.method) + ", " + est.resolution +
             ", excluded " + std::to_string(est.excluded_zeros) + "]\n");
    return 0;
}

int run_classify(const Options& opt, const std::string& poly, int dims, int grid) {
    const LaurentPoly f = LaurentPoly::parse(poly, dims);
    const AtoralVerdict v = classify_atoral(f, grid);
    json j{{"schema", 1},
           {"command", "classify"},
           {"poly", f.str()},
           {"dims", dims},
           {"verdict", to_string(v.verdict)},
           {"reason", to_string(v.reason)}};
    if (v.dim_computed)
        j["dim_estimate"] = v.dim_estimate;
    else
        j["dim_estimate"] = nullptr;
    std::string text = std::string("verdict: ") + to_string(v.verdict) + " (reason: " +
                       to_string(v.reason) + ")";
    if (v.dim_computed) text += ", dim estimate " + std::to_string(v.dim_estimate);
    emit(opt.cfg, opt.out_path, j, text + "\n");
    return 0;
}

int run_torsion_scan(const Options& opt, const std::string& poly, int dims, long long max_order) {
    const LaurentPoly f = LaurentPoly::parse(poly, dims);
    const auto hits = torsion_scan(f, max_order, opt.cfg.max_cyclo_order);
    json pts = json::array();
    std::string text;
    for (const TorsionPoint& w : hits) {
        pts.push_back(torsion_to_json(w));
        text += w.str() + " order " + std::to_string(w.order) + "\n";
    }
    json j{{"schema", 1},
           {"command", "torsion-scan"},
           {"poly", f.str()},
           {"max_order", max_order},
           {"count", hits.size()},
           {"points", std::move(pts)}};
    emit(opt.cfg, opt.out_path, j,
         "found " + std::to_string(hits.size()) + " torsion points on U(f)\n" + text);
    return 0;
}

int run_homoclinic(const Options& opt, const std::string& poly, int dims,
                   const std::string& multiplier, int power, int radius, int grid) {
    const LaurentPoly f = LaurentPoly::parse(poly, dims);
    const LaurentPoly g =
        multiplier.empty() ? laurent_constant(dims, 1) : LaurentPoly::parse(multiplier, dims);
    const HomoclinicWindow w = fourier_window(f, g, power, radius, grid, opt.cfg.threads);
    const SummabilityReport rep = summability_report(w);
    const VerifyReport ver = verify_homoclinic(w);

    json coeffs = json::array();
    std::string csv = "n,re,im\n";
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
        const Exponent n = w.box.unflat(i);
        json row{{"n", n}, {"re", w.coeffs[i].real()}, {"im", w.coeffs[i].imag()}};
        coeffs.push_back(std::move(row));
        std::string idx;
        for (std::size_t q = 0; q < n.size(); ++q) idx += (q ? " " : "") + std::to_string(n[q]);
        csv += idx + "," + num15(w.coeffs[i].real()) + "," + num15(w.coeffs[i].imag()) + "\n";
    }
    json j{{"schema", 1},
           {"command", "homoclinic"},
           {"poly", f.str()},
           {"multiplier", g.str()},
           {"power", power},
           {"radius", radius},
           {"grid", grid},
           {"alias_estimate", w.alias_estimate},
           {"l1_partial_sums", rep.l1_partial_sums},
           {"tail_increments", rep.tail_increments},
           {"decay_exponent", rep.decay_exponent},
           {"verify_max_residual", ver.max_residual},
           {"coeffs", std::move(coeffs)}};
    std::string text = "window |n| <= " + std::to_string(radius) + " of g^k/f*\n";
    text += "l1 over full window = " + num15(rep.l1_partial_sums.back()) + "\n";
    text += "decay exponent = " + num15(rep.decay_exponent) + "\n";
    text += "verify residual = " + num15(ver.max_residual) + "\n";
    emit(opt.cfg, opt.out_path, j, opt.cfg.format == OutputFormat::csv ? csv : text);
    return 0;
}

int run_growth(const Options& opt, const std::string& poly, int dims,
               const std::string& gammas_spec, int quad_grid) {
    const LaurentPoly f = LaurentPoly::parse(poly, dims);
    const auto gammas = parse_gamma_sequence(gammas_spec, dims);
    const GrowthTable t = growth_series(f, gammas, quad_grid, opt.cfg.threads,
                                        opt.cfg.max_cyclo_order);
    json rows = json::array();
    std::string csv = "gamma,index,norm,excluded_zeros,log_count,rate\n";
    std::string text = "gamma  index  excluded  rate\n";
    for (const GrowthRow& r : t.rows) {
        rows.push_back(json{{"gamma", r.gamma},
                            {"index", r.index},
                            {"norm", r.gamma_norm},
                            {"excluded_zeros", r.excluded_zeros},
                            {"log_count", r.log_count},
                            {"rate", r.rate}});
        csv += r.gamma + "," + std::to_string(r.index) + "," + std::to_string(r.gamma_norm) +
               "," + std::to_string(r.excluded_zeros) + "," + num15(r.log_count) + "," +
               num15(r.rate) + "\n";
        text += r.gamma + "  " + std::to_string(r.index) + "  " +
                std::to_string(r.excluded_zeros) + "  " + num15(r.rate) + "\n";
    }
    text += "target m(f) = " + num15(t.target) +
            ", final |rate - target| = " + num15(t.final_abs_error) + "\n";
    json j{{"schema", 1},
           {"command", "growth"},
           {"poly", f.str()},
           {"target", t.target},
           {"final_abs_error", t.final_abs_error},
           {"rows", std::move(rows)}};
    emit(opt.cfg, opt.out_path, j, opt.cfg.format == OutputFormat::csv ? csv : text);
    return 0;
}

int run_gelfond(const Options& opt, const std::string& poly, long long n_max, double eps) {
    const LaurentPoly f = LaurentPoly::parse(poly, 1);
    const GelfondTable t = gelfond_table(f, n_max, eps, opt.cfg.max_cyclo_order);
    json rows = json::array();
    std::string csv = "n,min_abs,bound,below_bound\n";
    for (const GelfondRow& r : t.rows) {
        rows.push_back(json{{"n", r.n},
                            {"min_abs", r.min_abs},
                            {"bound", r.bound},
                            {"below_bound", r.below_bound}});
        csv += std::to_string(r.n) + "," + num15(r.min_abs) + "," + num15(r.bound) + "," +
               (r.below_bound ? "1" : "0") + "\n";
    }
    json j{{"schema", 1},
           {"command", "gelfond"},
           {"poly", f.str()},
           {"eps", eps},
           {"violations", t.violations},
           {"below_bound_count", t.below_bound_count},
           {"last_below_n", t.last_below_n},
           {"degenerate", t.degenerate},
           {"root_angles", t.root_angles},
           {"rows", std::move(rows)}};
    if (!t.note.empty()) j["note"] = t.note;
    std::string text = "unitary root angles/2pi:";
    for (double a : t.root_angles) text += " " + num15(a);
    text += "\ntail violations over n <= " + std::to_string(n_max) + ": " +
            std::to_string(t.violations) + ", pointwise below-bound rows: " +
            std::to_string(t.below_bound_count) + " (last at n = " +
            std::to_string(t.last_below_n) + ")" +
            (t.degenerate ? " (degenerate torsion roots)" : "") + "\n";
    emit(opt.cfg, opt.out_path, j, opt.cfg.format == OutputFormat::csv ? csv : text);
    return 0;
}

int run_dioph_ratio(const Options& opt, const std::string& poly, int dims,
                    const std::string& gammas_spec, const std::string& radii_csv, int grid) {
    const LaurentPoly f = LaurentPoly::parse(poly, dims);
    const auto gammas = parse_gamma_sequence(gammas_spec, dims);
    const auto radii = parse_doubles(radii_csv);
    const VarietySample sample = sample_variety(f, grid > 0 ? grid : default_scan_grid(dims));
    const RatioSeries s = quantitative_ratio(f, gammas, radii, sample, opt.cfg.max_cyclo_order);
    json rows = json::array();
    std::string csv = "index,r,near_count,ratio\n";
    for (const RatioRow& r : s.rows) {
        rows.push_back(
            json{{"index", r.index}, {"r", r.r}, {"near_count", r.near_count}, {"ratio", r.ratio}});
        csv += std::to_string(r.index) + "," + num15(r.r) + "," + std::to_string(r.near_count) +
               "," + num15(r.ratio) + "\n";
    }
    json j{{"schema", 1},
           {"command", "dioph-ratio"},
           {"poly", f.str()},
           {"trend_ok", s.trend_ok},
           {"rows", std::move(rows)}};
    emit(opt.cfg, opt.out_path, j,
         opt.cfg.format == OutputFormat::csv
             ? csv
             : "ratio rows: " + std::to_string(s.rows.size()) +
                   ", trend decreasing: " + (s.trend_ok ? "yes" : "no") + "\n");
    return 0;
}

int run_fixtures(const Options& opt) {
    const acceptance::Report rep = acceptance::run_fixtures(opt.cfg);
    const std::string text =
        acceptance::render_fixture_matrix(rep) + "\n" + acceptance::render_criteria(rep);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back(json{{"id", r.id},
                            {"name", r.name},
                            {"examples", r.example},
                            {"pass", r.pass},
                            {"details", r.details}});
    json j{{"schema", 1},
           {"command", "fixtures"},
           {"all_pass", rep.all_pass()},
           {"criteria", std::move(rows)}};
    emit(opt.cfg, opt.out_path, j, text);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alab: algebraic dynamics laboratory for Laurent polynomials"};
    app.require_subcommand(1);

    Options opt;
    std::string config_path;
    bool flag_json = false, flag_csv = false;
    std::string format_name;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--threads", opt.cfg.threads, "parallelism budget");
    app.add_option("--seed", opt.cfg.seed, "seed for randomized suites");
    app.add_option("--out", opt.out_path, "write output to this path instead of stdout");
    app.add_option("--format", format_name, "output format: json, csv or table");

    std::string poly, mode = "quadrature", gamma_spec, gammas_spec, multiplier, radii_csv;
    int dims = 1, grid = 0, power = 1, radius = 8, quad_grid = 0, scan_grid = 0;
    long long max_order = 12, res_n = 16, n_max = 128;
    double eps = 0.05;

    CLI::App* mahler = app.add_subcommand("mahler", "logarithmic Mahler measure / entropy");
    mahler->add_option("--poly", poly, "Laurent polynomial, e.g. \"2-u1-u2\"")->required();
    mahler->add_option("--dims", dims, "number of variables")->required();
    mahler->add_option("--mode", mode, "quadrature | riemann | resultant");
    mahler->add_option("--n", grid, "grid size per axis (quadrature); n (resultant)");
    mahler->add_option("--gamma", gamma_spec, "lattice for riemann mode (diag:... or mat:...)");
    mahler->add_flag("--json", flag_json, "emit JSON");

    CLI::App* classify = app.add_subcommand("classify", "atoral/toral verdict");
    classify->add_option("--poly", poly)->required();
    classify->add_option("--dims", dims)->required();
    classify->add_option("--grid", scan_grid, "variety scan resolution");
    classify->add_flag("--json", flag_json);

    CLI::App* tscan = app.add_subcommand("torsion-scan", "torsion points on U(f)");
    tscan->add_option("--poly", poly)->required();
    tscan->add_option("--dims", dims)->required();
    tscan->add_option("--max-order", max_order)->required();
    tscan->add_flag("--json", flag_json);

    CLI::App* hom = app.add_subcommand("homoclinic", "Fourier window of g^k/f*");
    hom->add_option("--poly", poly)->required();
    hom->add_option("--dims", dims)->required();
    hom->add_option("--multiplier", multiplier, "multiplier g (default 1)");
    hom->add_option("--power", power, "power k of g");
    hom->add_option("--window", radius, "window radius R");
    hom->add_option("--grid", grid, "DFT grid per axis")->required();
    hom->add_flag("--json", flag_json);
    hom->add_flag("--csv", flag_csv, "emit window as CSV: n,re,im");

    CLI::App* growth = app.add_subcommand("growth", "periodic-component growth table");
    growth->add_option("--poly", poly)->required();
    growth->add_option("--dims", dims)->required();
    growth->add_option("--gammas", gammas_spec, "diag-range:a:b:step or one lattice spec")
        ->required();
    growth->add_option("--quad-grid", quad_grid, "grid for the m(f) target");
    growth->add_flag("--json", flag_json);
    growth->add_flag("--csv", flag_csv);

    CLI::App* gel = app.add_subcommand("gelfond", "scan |lambda^n - 1| vs e^{-eps n}");
    gel->add_option("--poly", poly)->required();
    gel->add_option("--n-max", n_max);
    gel->add_option("--eps", eps);
    gel->add_flag("--csv", flag_csv, "CSV columns: n,min_abs,bound,violation");
    gel->add_flag("--json", flag_json);

    CLI::App* ratio = app.add_subcommand("dioph-ratio", "M_f log(1/r) / |Omega| series");
    ratio->add_option("--poly", poly)->required();
    ratio->add_option("--dims", dims)->required();
    ratio->add_option("--gammas", gammas_spec)->required();
    ratio->add_option("--radii", radii_csv, "comma-separated radii r_n")->required();
    ratio->add_option("--grid", scan_grid, "variety scan resolution");
    ratio->add_flag("--json", flag_json);
    ratio->add_flag("--csv", flag_csv);

    CLI::App* fixtures =
        app.add_subcommand("fixtures", "paper-example suite; exit 0 iff all criteria pass");
    fixtures->add_flag("--json", flag_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) opt.cfg.load_file(config_path);
        // Flags override the file; reparse the few that matter.
        for (const auto* o : {app.get_option("--threads")})
            if (o->count()) opt.cfg.threads = std::stoi(o->results().front());
        if (app.get_option("--seed")->count())
            opt.cfg.seed = std::stoull(app.get_option("--seed")->results().front());
        if (!format_name.empty()) opt.cfg.set("format", format_name);
        if (flag_json) opt.cfg.format = OutputFormat::json;
        if (flag_csv) opt.cfg.format = OutputFormat::csv;
        opt.cfg.apply_env();
        opt.cfg.validate();

        if (mahler->parsed()) return run_mahler(opt, poly, dims, mode, grid, grid, gamma_spec);
        if (classify->parsed()) return run_classify(opt, poly, dims, scan_grid);
        if (tscan->parsed()) return run_torsion_scan(opt, poly, dims, max_order);
        if (hom->parsed()) return run_homoclinic(opt, poly, dims, multiplier, power, radius, grid);
        if (growth->parsed()) return run_growth(opt, poly, dims, gammas_spec, quad_grid);
        if (gel->parsed()) return run_gelfond(opt, poly, n_max, eps);
        if (ratio->parsed())
            return run_dioph_ratio(opt, poly, dims, gammas_spec, radii_csv, scan_grid);
        if (fixtures->parsed()) return run_fixtures(opt);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const Error& e) {
        if (e.kind() == "usage") {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        }
        json j{{"schema", 1}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        std::cout << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        json j{{"schema", 1}, {"error", {{"kind", "internal"}, {"message", e.what()}}}};
        std::cout << j.dump(2) << "\n";
        return 1;
    }
}
