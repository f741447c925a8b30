#ifndef BK_VERIFY_HPP
#define BK_VERIFY_HPP

#include <string>
#include <vector>

#include "bk/cuntz.hpp"
#include "bk/dynamics.hpp"
#include "bk/kernel.hpp"
#include "bk/rng.hpp"

namespace bk {

struct CheckReport {
    std::string check_name;
    int n = -1;                 // -1 when the check mixes family members
    Complex a{0.0, 0.0};
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    int samples = 0;
    double max_residual = 0.0;
    bool passed = false;
    std::vector<double> residual_seq;  // per-length sequences etc.
    std::string note;
};

struct Tolerances {
    double cuntz_sums = 1e-9;
    double functional_eq = 1e-9;
    double kernel_expansion = 1e-6;
    double basin_equivalence = 0.0;
    double preimage_roundtrip = 1e-8;
    double gram = 1e-9;
    double hermitian = 1e-12;
    double diagonal = 1e-12;
    double continuity = 1e-12;
    double specialization = 1e-10;
    double exact = 0.0;

    static Tolerances uniform(double t);
};

/// Corners exercised by default: (n,a) in {(0,1),(0,0.5),(0,1+0.3i),(1,1),(2,1)}.
std::vector<FamilyMember> default_corners();

/// Rejection sampling of Member points from the square |Re|,|Im| <= 1.6.
std::vector<Complex> sample_basin_points(const FamilyMember& fm, int count, Rng& rng,
                                         const IterConfig& cfg = {});

/// As above but also requires a converged kernel diagonal at the point.
std::vector<Complex> sample_kernel_points(const FamilyMember& fm, int count, Rng& rng,
                                          const IterConfig& icfg = {},
                                          const KernelConfig& kcfg = {});

// Single-identity checks (also callable on their own).
CheckReport check_cuntz_sums(const FamilyMember& fm, Complex w, double tol);
CheckReport check_kernel_expansion(const FamilyMember& fm, Complex z, Complex w,
                                   std::size_t max_len, const KernelConfig& cfg,
                                   double tol = 1e-6);
CheckReport check_basin_equivalence(const FamilyMember& fm, const GridSpec& grid,
                                    const IterConfig& cfg, double tol = 0.0);

/// Every check over the configured corners; aggregation order is fixed by
/// check name, never aborts mid-suite.
std::vector<CheckReport> run_all(const std::vector<FamilyMember>& corners, std::uint64_t seed,
                                 const Tolerances& tol);

std::string report_csv(const std::vector<CheckReport>& reports);
std::string report_json(const std::vector<CheckReport>& reports);
bool all_passed(const std::vector<CheckReport>& reports);

/// %.17g formatting shared by every CSV/JSON writer; keeps reports
/// byte-reproducible.
std::string fmt_double(double x);

}  // namespace bk

#endif
