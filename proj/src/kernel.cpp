#include "bk/kernel.hpp"

#include <cmath>

namespace bk {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kEscapeRadius = 1e6;

}  // namespace

KernelValue eval_kernel(const FamilyMember& fm, Complex z, Complex w, const KernelConfig& cfg) {
    KernelValue kv;
    Complex oz = z;
    Complex ow = w;
    double prev_dev = -1.0;
    int streak = 0;
    for (int i = 0; i < cfg.max_factors; ++i) {
        Complex t = cpow_u64(oz * std::conj(ow), fm.alpha());
        kv.value *= Complex{1.0, 0.0} + t;
        kv.factors_used = i + 1;
        double dev = std::abs(t);
        if (!finite(kv.value) || !std::isfinite(dev) || dev > kEscapeRadius) {
            kv.converged = false;
            return kv;
        }
        if (dev == 0.0) {
            // one orbit sits exactly at the fixed point 0; every remaining
            // factor is 1
            kv.tail_bound = 0.0;
            kv.converged = true;
            return kv;
        }
        if (prev_dev > 0.0) {
            double ratio = dev / prev_dev;
            streak = (ratio < 0.5) ? streak + 1 : 0;
            if (streak >= 3) {
                double bound = dev / (1.0 - ratio);
                if (bound < cfg.tail_eps * std::abs(kv.value)) {
                    kv.tail_bound = bound;
                    kv.converged = true;
                    return kv;
                }
            }
        }
        prev_dev = dev;
        oz = fm.apply(oz);
        ow = fm.apply(ow);
    }
    kv.converged = false;
    kv.tail_bound = prev_dev > 0.0 ? prev_dev : 0.0;
    return kv;
}

double check_functional_eq(const FamilyMember& fm, Complex z, Complex w,
                           const KernelConfig& cfg) {
    KernelValue lhs = eval_kernel(fm, z, w, cfg);
    KernelValue rhs = eval_kernel(fm, fm.apply(z), fm.apply(w), cfg);
    if (!lhs.converged || !rhs.converged) throw NotConverged{};
    Complex k = Complex{1.0, 0.0} + cpow_u64(z * std::conj(w), fm.alpha());
    double denom = std::abs(lhs.value);
    if (denom == 0.0) denom = 1.0;
    return std::abs(lhs.value - k * rhs.value) / denom;
}

OmegaSeries omega_series(const FamilyMember& fm, Complex z, const KernelConfig& cfg) {
    OmegaSeries os;
    Complex cur = z;
    double prev_term = -1.0;
    int streak = 0;
    for (int i = 0; i < cfg.max_factors; ++i) {
        double mag = std::abs(cur);
        os.terms_used = i + 1;
        if (!std::isfinite(mag) || mag > kEscapeRadius) {
            os.verdict = SeriesVerdict::Diverges;
            return os;
        }
        bool captured = false;
        for (Complex p : fm.nonzero_fixed_points())
            if (std::abs(cur - p) < 1e-8) captured = true;
        if (captured) {
            os.verdict = SeriesVerdict::Diverges;
            return os;
        }
        double t = std::pow(mag, 2.0 * static_cast<double>(fm.alpha()));
        os.partial_sum += t;
        if (t == 0.0) {
            os.verdict = SeriesVerdict::Converges;
            return os;
        }
        if (prev_term > 0.0) {
            streak = (t / prev_term < 0.5) ? streak + 1 : 0;
            if (streak >= 3 && t < cfg.tail_eps) {
                os.verdict = SeriesVerdict::Converges;
                return os;
            }
        }
        prev_term = t;
        cur = fm.apply(cur);
    }
    os.verdict = SeriesVerdict::Indeterminate;
    return os;
}

}  // namespace bk
