#ifndef BK_KERNEL_HPP
#define BK_KERNEL_HPP

#include "bk/dynamics.hpp"
#include "bk/poly.hpp"

namespace bk {

struct KernelConfig {
    int max_factors = 256;
    double tail_eps = 1e-14;
};

struct KernelValue {
    Complex value{1.0, 0.0};
    int factors_used = 0;
    double tail_bound = 0.0;
    bool converged = false;
};

struct NotConverged : std::runtime_error {
    NotConverged() : std::runtime_error("kernel product did not converge") {}
};

enum class SeriesVerdict { Converges, Diverges, Indeterminate };

struct OmegaSeries {
    double partial_sum = 0.0;
    SeriesVerdict verdict = SeriesVerdict::Indeterminate;
    int terms_used = 0;
};

/// Truncated infinite product K_a(z,w) = prod_i (1 + [R^i(z) conj(R^i(w))]^(2^n))
/// with a certified geometric tail bound.  converged=false is data, never an
/// exception.
KernelValue eval_kernel(const FamilyMember& fm, Complex z, Complex w, const KernelConfig& cfg);

/// Relative residual of K(z,w) = (1 + (z conj(w))^(2^n)) K(R(z), R(w)).
/// Throws NotConverged if either kernel evaluation fails to converge.
double check_functional_eq(const FamilyMember& fm, Complex z, Complex w, const KernelConfig& cfg);

/// Partial sum of sum_i |R^i(z)|^(2^(n+1)) with the same tail certification
/// as the basin series test.
OmegaSeries omega_series(const FamilyMember& fm, Complex z, const KernelConfig& cfg);

}  // namespace bk

#endif
