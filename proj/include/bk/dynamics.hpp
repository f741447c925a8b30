#ifndef BK_DYNAMICS_HPP
#define BK_DYNAMICS_HPP

#include <cstdint>
#include <vector>

#include "bk/poly.hpp"

namespace bk {

/// One member R_a(z) = a z^(2^(n+2)) - 2a z^(2^(n+1)) of the family,
/// with the derived constants and the numerically detected non-zero
/// fixed points (used for bounded-orbit NonMember detection).
class FamilyMember {
public:
    FamilyMember(int n, Complex a);

    int n() const { return n_; }
    Complex a() const { return a_; }
    std::uint64_t alpha() const { return std::uint64_t{1} << n_; }     // 2^n
    std::uint64_t degree() const { return std::uint64_t{1} << (n_ + 2); }  // 2^(n+2)
    std::uint64_t half_degree() const { return std::uint64_t{1} << (n_ + 1); }

    /// Numeric R_a(z) via p = z^(2^(n+1)), R = a p (p - 2).
    Complex apply(Complex z) const;

    const std::vector<Complex>& nonzero_fixed_points() const { return fixed_points_; }

    static constexpr int kMaxN = 3;

private:
    int n_;
    Complex a_;
    std::vector<Complex> fixed_points_;
};

enum class BasinStatus { Member, NonMember, Indeterminate };

struct BasinVerdict {
    BasinStatus status = BasinStatus::Indeterminate;
    int iterations_used = 0;
    double final_magnitude = 0.0;
    double partial_series_sum = 0.0;
};

struct IterConfig {
    int max_iters = 512;
    double escape_radius = 1e6;
    double convergence_radius = 1e-8;
    double series_tail_eps = 1e-12;
};

struct GridSpec {
    Complex center{0.0, 0.0};
    double half_width = 2.0;
    int width_px = 256;
    int height_px = 256;
};

struct BasinImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major shade values
    std::vector<BasinVerdict> verdicts;
};

// Pixel shading: NonMember 0, Indeterminate 128, Member in [130,255]
// darkening with iterations_used.
std::uint8_t shade_pixel(const BasinVerdict& v, const IterConfig& cfg);

BiPolyZ family_poly(const FamilyMember& fm);
std::vector<Complex> iterate_orbit(const FamilyMember& fm, Complex z0, int k);
BasinVerdict basin_member_limit(const FamilyMember& fm, Complex z0, const IterConfig& cfg);
BasinVerdict basin_member_series(const FamilyMember& fm, Complex z0, const IterConfig& cfg);

/// All 2^(n+2) solutions of R_a(zeta) = w, with multiplicity.
/// Order: "+" branch of u = 1 + sqrt(a^2+aw)/a first, then within a branch
/// the 2^(n+1)-th roots by ascending argument in [0, 2pi).
std::vector<Complex> preimages(const FamilyMember& fm, Complex w);

/// Pixel centre for (row, col); row 0 is the top edge.
Complex pixel_to_complex(const GridSpec& grid, int row, int col);

/// Escape-time raster of the basin; row-parallel, bit-identical for any
/// worker count. threads = 0 picks BASINKERNEL_THREADS or hardware.
BasinImage render_basin(const FamilyMember& fm, const GridSpec& grid, const IterConfig& cfg,
                        int threads = 0);

void write_pgm(const BasinImage& img, const std::string& path);
void write_ppm(const BasinImage& img, const std::string& path);

/// Worker count: explicit value, else BASINKERNEL_THREADS, else hardware.
int resolve_thread_count(int requested);

}  // namespace bk

#endif
