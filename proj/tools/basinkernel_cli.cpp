// basinkernel: basin rendering, kernel evaluation, Cuntz basis vectors and
// the identity verification suite for the family R_a(z) = a z^(2^(n+2)) - 2a z^(2^(n+1)).

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bk/cuntz.hpp"
#include "bk/dynamics.hpp"
#include "bk/kernel.hpp"
#include "bk/verify.hpp"

namespace {

bk::Complex parse_complex(const std::string& s) {
    std::size_t comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::string kernel_csv_row(bk::Complex z, bk::Complex w, const bk::KernelValue& kv) {
    using bk::fmt_double;
    return fmt_double(z.real()) + "," + fmt_double(z.imag()) + "," + fmt_double(w.real()) + "," +
           fmt_double(w.imag()) + "," + fmt_double(kv.value.real()) + "," +
           fmt_double(kv.value.imag()) + "," + std::to_string(kv.factors_used) + "," +
           fmt_double(kv.tail_bound) + "," + (kv.converged ? "true" : "false") + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reproducing-kernel and Cuntz-basis machinery for the family "
                 "R_a(z) = a z^(2^(n+2)) - 2a z^(2^(n+1))"};
    app.require_subcommand(1);

    int n = 0;
    std::string a_str = "1,0";
    app.add_option("--n", n, "family index (0..3)")->check(CLI::Range(0, 3));
    app.add_option("--a", a_str, "family parameter as re,im (nonzero)");

    // basin
    auto* basin = app.add_subcommand("basin", "render the basin of attraction at 0");
    std::string center_str = "0,0";
    double half_width = 2.0;
    int px = 512, px_h = 0;
    int max_iters = 512;
    double escape_radius = 1e6, convergence_radius = 1e-8;
    std::string basin_out = "basin.pgm";
    bool ppm = false;
    basin->add_option("--center", center_str, "grid centre re,im");
    basin->add_option("--half-width", half_width, "grid half width");
    basin->add_option("--px", px, "width in pixels");
    basin->add_option("--px-h", px_h, "height in pixels (default: square)");
    basin->add_option("--max-iters", max_iters, "iteration budget per pixel");
    basin->add_option("--escape-radius", escape_radius, "escape threshold");
    basin->add_option("--convergence-radius", convergence_radius, "convergence threshold");
    basin->add_option("-o,--output", basin_out, "output image path");
    basin->add_flag("--ppm", ppm, "write colormapped P6 instead of P5");

    // kernel
    auto* kernel = app.add_subcommand("kernel", "evaluate the infinite-product kernel K_a(z,w)");
    std::string z_str = "0,0", w_str = "0,0", points_file, kernel_out;
    int max_factors = 256;
    double tail_eps = 1e-14;
    kernel->add_option("--z", z_str, "first argument re,im");
    kernel->add_option("--w", w_str, "second argument re,im");
    kernel->add_option("--points", points_file,
                       "CSV of z_re,z_im,w_re,w_im rows (overrides --z/--w)");
    kernel->add_option("--max-factors", max_factors, "factor budget");
    kernel->add_option("--tail-eps", tail_eps, "relative tail target");
    kernel->add_option("-o,--output", kernel_out, "output CSV path (default stdout)");

    // basis
    auto* basis = app.add_subcommand("basis", "generate Cuntz basis vectors b_v");
    std::string word_str;
    int max_len = -1;
    bool all_words = false;
    std::string basis_out;
    basis->add_option("--word", word_str, "word over {0,1}; empty for the constant 1");
    basis->add_option("--max-len", max_len, "canonical enumeration cap (with --all)");
    basis->add_flag("--all", all_words, "emit every canonical word up to --max-len");
    basis->add_option("-o,--output", basis_out, "output JSON path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity verification suite");
    std::uint64_t seed = 42;
    double tolerance = -1.0;
    std::string report_prefix = "verify_report";
    verify->add_option("--seed", seed, "RNG seed for sampled checks");
    verify->add_option("--tolerance", tolerance,
                       "override every tolerance with one value (default: per-check)");
    verify->add_option("-o,--output", report_prefix, "report path prefix (.csv and .json)");

    // continuity
    auto* continuity = app.add_subcommand("continuity", "coefficient distances along an a-path");
    std::string cont_word = "01", a_lim_str = "1,0", path_kind = "harmonic";
    int steps = 10;
    double disk_radius = 1.0;
    std::string cont_out;
    continuity->add_option("--word", cont_word, "word over {0,1}");
    continuity->add_option("--a-lim", a_lim_str, "limit parameter re,im");
    continuity->add_option("--path", path_kind, "harmonic (a_lim+1/k) or geometric (a_lim(1+2^-k))")
        ->check(CLI::IsMember({"harmonic", "geometric"}));
    continuity->add_option("--steps", steps, "number of path points");
    continuity->add_option("--disk-radius", disk_radius, "evaluation disk radius weight");
    continuity->add_option("-o,--output", cont_out, "output CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        bk::Complex a = parse_complex(a_str);
        if (a == bk::Complex{0.0, 0.0}) {
            std::cerr << "error: family parameter a must be nonzero\n";
            return 2;
        }
        bk::FamilyMember fm(n, a);

        if (*basin) {
            bk::GridSpec grid;
            grid.center = parse_complex(center_str);
            grid.half_width = half_width;
            grid.width_px = px;
            grid.height_px = px_h > 0 ? px_h : px;
            bk::IterConfig cfg;
            cfg.max_iters = max_iters;
            cfg.escape_radius = escape_radius;
            cfg.convergence_radius = convergence_radius;
            bk::BasinImage img = bk::render_basin(fm, grid, cfg);
            if (ppm)
                bk::write_ppm(img, basin_out);
            else
                bk::write_pgm(img, basin_out);
        } else if (*kernel) {
            bk::KernelConfig cfg;
            cfg.max_factors = max_factors;
            cfg.tail_eps = tail_eps;
            std::string csv = "z_re,z_im,w_re,w_im,K_re,K_im,factors_used,tail_bound,converged\n";
            if (!points_file.empty()) {
                std::ifstream in(points_file);
                if (!in) throw std::runtime_error("cannot read points file: " + points_file);
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty() || !(std::isdigit(line[0]) || line[0] == '-')) continue;
                    std::istringstream ls(line);
                    double vals[4];
                    char sep;
                    ls >> vals[0] >> sep >> vals[1] >> sep >> vals[2] >> sep >> vals[3];
                    bk::Complex z{vals[0], vals[1]}, w{vals[2], vals[3]};
                    csv += kernel_csv_row(z, w, bk::eval_kernel(fm, z, w, cfg));
                }
            } else {
                bk::Complex z = parse_complex(z_str), w = parse_complex(w_str);
                csv += kernel_csv_row(z, w, bk::eval_kernel(fm, z, w, cfg));
            }
            if (kernel_out.empty())
                std::cout << csv;
            else
                write_file(kernel_out, csv);
        } else if (*basis) {
            std::string json;
            if (all_words) {
                if (max_len < 0) throw std::runtime_error("--all requires --max-len");
                json = "[";
                bool first = true;
                for (const bk::Word& v : bk::enumerate_canonical(max_len)) {
                    if (!first) json += ",";
                    json += bk::basis_vector_to_json(n, bk::basis_vector(fm, v));
                    first = false;
                }
                json += "]";
            } else {
                json = bk::basis_vector_to_json(
                    n, bk::basis_vector(fm, bk::Word::parse(word_str)));
            }
            json += "\n";
            if (basis_out.empty())
                std::cout << json;
            else
                write_file(basis_out, json);
        } else if (*verify) {
            bk::Tolerances tol =
                tolerance >= 0.0 ? bk::Tolerances::uniform(tolerance) : bk::Tolerances{};
            auto reports = bk::run_all(bk::default_corners(), seed, tol);
            write_file(report_prefix + ".csv", bk::report_csv(reports));
            write_file(report_prefix + ".json", bk::report_json(reports));
            std::cout << bk::report_csv(reports);
            return bk::all_passed(reports) ? 0 : 1;
        } else if (*continuity) {
            bk::Complex a_lim = parse_complex(a_lim_str);
            std::vector<bk::Complex> path;
            double step = 1.0;
            for (int k = 1; k <= steps; ++k) {
                if (path_kind == "harmonic") {
                    path.push_back(a_lim + bk::Complex{1.0 / k, 0.0});
                } else {
                    step *= 0.5;
                    path.push_back(a_lim * (1.0 + step));
                }
            }
            auto dists = bk::continuity_modulus(fm, bk::Word::parse(cont_word), path, a_lim,
                                                disk_radius);
            std::string csv = "k,a_re,a_im,coefficient_distance\n";
            for (int k = 0; k < steps; ++k)
                csv += std::to_string(k + 1) + "," + bk::fmt_double(path[k].real()) + "," +
                       bk::fmt_double(path[k].imag()) + "," + bk::fmt_double(dists[k]) + "\n";
            if (cont_out.empty())
                std::cout << csv;
            else
                write_file(cont_out, csv);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
