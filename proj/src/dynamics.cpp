#include "bk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace bk {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// R_a(z) - z and its derivative, for Newton refinement of fixed points.
Complex fixed_point_residual(const FamilyMember& fm, Complex z) { return fm.apply(z) - z; }

Complex fixed_point_derivative(const FamilyMember& fm, Complex z) {
    const double d = static_cast<double>(fm.degree());
    const double h = static_cast<double>(fm.half_degree());
    Complex zd = cpow_u64(z, fm.degree() - 1);
    Complex zh = cpow_u64(z, fm.half_degree() - 1);
    return fm.a() * (d * zd - 2.0 * h * zh) - 1.0;
}

}  // namespace

FamilyMember::FamilyMember(int n, Complex a) : n_(n), a_(a) {
    if (n < 0 || n > kMaxN) throw std::invalid_argument("family index n must be in [0,3]");
    if (a == Complex{0.0, 0.0}) throw std::invalid_argument("family parameter a must be nonzero");

    // Newton refinement of R_a(z) = z seeded on a coarse grid; keeps the
    // non-zero fixed points so bounded non-escaping orbits (e.g. z = -1
    // for n=0, a=1) can be classified NonMember.
    const int grid = 21;
    for (int iy = 0; iy < grid; ++iy) {
        for (int ix = 0; ix < grid; ++ix) {
            Complex z(-2.0 + 4.0 * ix / (grid - 1), -2.0 + 4.0 * iy / (grid - 1));
            bool ok = false;
            for (int it = 0; it < 64; ++it) {
                Complex f = fixed_point_residual(*this, z);
                Complex df = fixed_point_derivative(*this, z);
                if (!finite(z) || std::abs(df) < 1e-14) break;
                Complex step = f / df;
                z -= step;
                if (std::abs(step) < 1e-13) {
                    ok = true;
                    break;
                }
            }
            if (!ok || !finite(z)) continue;
            if (std::abs(fixed_point_residual(*this, z)) > 1e-9) continue;
            if (std::abs(z) < 1e-6) continue;  // the super-attracting point at 0
            bool dup = false;
            for (Complex p : fixed_points_)
                if (std::abs(p - z) < 1e-7) dup = true;
            if (!dup) fixed_points_.push_back(z);
        }
    }
    std::sort(fixed_points_.begin(), fixed_points_.end(), [](Complex lhs, Complex rhs) {
        if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
        return lhs.imag() < rhs.imag();
    });
}

Complex FamilyMember::apply(Complex z) const {
    Complex p = cpow_u64(z, half_degree());
    return a_ * p * (p - 2.0);
}

BiPolyZ family_poly(const FamilyMember& fm) {
    BiPolyZ r;
    r.add_term(fm.degree(), APoly::monomial(1, 1));
    r.add_term(fm.half_degree(), APoly::monomial(1, -2));
    return r;
}

std::vector<Complex> iterate_orbit(const FamilyMember& fm, Complex z0, int k) {
    std::vector<Complex> orbit;
    orbit.reserve(static_cast<std::size_t>(k) + 1);
    orbit.push_back(z0);
    Complex z = z0;
    for (int i = 0; i < k; ++i) {
        z = fm.apply(z);
        if (!finite(z)) z = Complex(HUGE_VAL, 0.0);  // escape sentinel, not a crash
        orbit.push_back(z);
    }
    return orbit;
}

namespace {

bool captured_by_other_fixed_point(const FamilyMember& fm, Complex z, double radius) {
    for (Complex p : fm.nonzero_fixed_points())
        if (std::abs(z - p) < radius) return true;
    return false;
}

}  // namespace

BasinVerdict basin_member_limit(const FamilyMember& fm, Complex z0, const IterConfig& cfg) {
    BasinVerdict v;
    Complex z = z0;
    for (int i = 0; i <= cfg.max_iters; ++i) {
        double mag = std::abs(z);
        v.iterations_used = i;
        v.final_magnitude = mag;
        if (!finite(z) || mag > cfg.escape_radius) {
            v.status = BasinStatus::NonMember;
            return v;
        }
        if (mag < cfg.convergence_radius) {
            v.status = BasinStatus::Member;
            return v;
        }
        if (captured_by_other_fixed_point(fm, z, cfg.convergence_radius)) {
            v.status = BasinStatus::NonMember;
            return v;
        }
        z = fm.apply(z);
    }
    v.status = BasinStatus::Indeterminate;
    return v;
}

BasinVerdict basin_member_series(const FamilyMember& fm, Complex z0, const IterConfig& cfg) {
    BasinVerdict v;
    Complex z = z0;
    double prev_term = -1.0;
    int streak = 0;
    double sum = 0.0;
    for (int i = 0; i <= cfg.max_iters; ++i) {
        double t = std::abs(z);
        v.iterations_used = i;
        v.final_magnitude = t;
        if (!finite(z) || t > cfg.escape_radius) {
            v.status = BasinStatus::NonMember;
            v.partial_series_sum = sum;
            return v;
        }
        if (captured_by_other_fixed_point(fm, z, cfg.convergence_radius)) {
            v.status = BasinStatus::NonMember;
            v.partial_series_sum = sum;
            return v;
        }
        sum += t;
        v.partial_series_sum = sum;
        if (t == 0.0) {
            v.status = BasinStatus::Member;
            return v;
        }
        if (prev_term > 0.0) {
            streak = (t / prev_term < 0.5) ? streak + 1 : 0;
            // geometric tail certified: three consecutive halvings and the
            // current term already below the tail threshold
            if (streak >= 3 && t < cfg.series_tail_eps) {
                v.status = BasinStatus::Member;
                return v;
            }
        }
        prev_term = t;
        z = fm.apply(z);
    }
    v.status = BasinStatus::Indeterminate;
    return v;
}

std::vector<Complex> preimages(const FamilyMember& fm, Complex w) {
    const std::uint64_t m = fm.half_degree();
    const Complex a = fm.a();
    Complex s = std::sqrt(a * a + a * w);  // principal branch
    std::vector<Complex> out;
    out.reserve(fm.degree());
    for (Complex u : {Complex{1.0, 0.0} + s / a, Complex{1.0, 0.0} - s / a}) {
        double r = std::abs(u);
        if (r == 0.0) {
            out.insert(out.end(), m, Complex{0.0, 0.0});
            continue;
        }
        double theta = std::arg(u);
        if (theta < 0.0) theta += 2.0 * M_PI;
        double root_r = std::pow(r, 1.0 / static_cast<double>(m));
        // (theta + 2*pi*k)/m is ascending in [0, 2*pi) as k runs 0..m-1
        for (std::uint64_t k = 0; k < m; ++k) {
            double phi = (theta + 2.0 * M_PI * static_cast<double>(k)) / static_cast<double>(m);
            out.emplace_back(root_r * std::cos(phi), root_r * std::sin(phi));
        }
    }
    return out;
}

Complex pixel_to_complex(const GridSpec& grid, int row, int col) {
    const double hw = grid.half_width;
    const double hh = hw * static_cast<double>(grid.height_px) / static_cast<double>(grid.width_px);
    double x = grid.center.real() - hw + 2.0 * hw * (col + 0.5) / grid.width_px;
    double y = grid.center.imag() + hh - 2.0 * hh * (row + 0.5) / grid.height_px;
    return {x, y};
}

std::uint8_t shade_pixel(const BasinVerdict& v, const IterConfig& cfg) {
    switch (v.status) {
        case BasinStatus::NonMember:
            return 0;
        case BasinStatus::Indeterminate:
            return 128;
        case BasinStatus::Member: {
            int shade = 255 - (125 * v.iterations_used) / std::max(1, cfg.max_iters);
            return static_cast<std::uint8_t>(shade);
        }
    }
    return 128;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BASINKERNEL_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

BasinImage render_basin(const FamilyMember& fm, const GridSpec& grid, const IterConfig& cfg,
                        int threads) {
    if (grid.width_px <= 0 || grid.height_px <= 0 || grid.half_width <= 0.0)
        throw std::invalid_argument("invalid grid");
    if (static_cast<std::int64_t>(grid.width_px) * grid.height_px > 100000000LL)
        throw std::invalid_argument("grid exceeds 1e8 pixels");

    BasinImage img;
    img.width = grid.width_px;
    img.height = grid.height_px;
    img.pixels.resize(static_cast<std::size_t>(grid.width_px) * grid.height_px);
    img.verdicts.resize(img.pixels.size());

    auto run_rows = [&](int row_begin, int row_end) {
        for (int row = row_begin; row < row_end; ++row) {
            for (int col = 0; col < grid.width_px; ++col) {
                Complex z = pixel_to_complex(grid, row, col);
                BasinVerdict v = basin_member_limit(fm, z, cfg);
                std::size_t idx = static_cast<std::size_t>(row) * grid.width_px + col;
                img.verdicts[idx] = v;
                img.pixels[idx] = shade_pixel(v, cfg);
            }
        }
    };

    int workers = std::min(resolve_thread_count(threads), grid.height_px);
    if (workers <= 1) {
        run_rows(0, grid.height_px);
        return img;
    }
    // contiguous row blocks; every pixel is independent, so the partition
    // cannot change the output
    std::vector<std::thread> pool;
    pool.reserve(workers);
    int rows_per = (grid.height_px + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        int lo = t * rows_per;
        int hi = std::min(grid.height_px, lo + rows_per);
        if (lo >= hi) break;
        pool.emplace_back(run_rows, lo, hi);
    }
    for (auto& th : pool) th.join();
    return img;
}

void write_pgm(const BasinImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_ppm(const BasinImage& img, const std::string& path) {
    // fixed 256-entry colormap; see README for the exact definition
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::vector<std::uint8_t> rgb;
    rgb.reserve(img.pixels.size() * 3);
    for (std::uint8_t v : img.pixels) {
        rgb.push_back(v);
        rgb.push_back(static_cast<std::uint8_t>((static_cast<int>(v) * v) / 255));
        rgb.push_back(static_cast<std::uint8_t>(255 - v));
    }
    out.write(reinterpret_cast<const char*>(rgb.data()),
              static_cast<std::streamsize>(rgb.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace bk
