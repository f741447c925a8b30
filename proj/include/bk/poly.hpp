#ifndef BK_POLY_HPP
#define BK_POLY_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bk {

using Complex = std::complex<double>;

// Largest z-exponent we allow; sums beyond this raise ExponentOverflow.
inline constexpr std::uint64_t kMaxExponent = (std::uint64_t{1} << 62);

struct ExponentOverflow : std::runtime_error {
    ExponentOverflow() : std::runtime_error("z-exponent exceeds representable range") {}
};

/// Integer-coefficient polynomial in the family parameter a,
/// sparse map a-exponent -> coefficient.  Canonical: no zero entries.
class APoly {
public:
    using Terms = std::map<std::uint64_t, mpz_class>;

    APoly() = default;
    static APoly constant(const mpz_class& c);
    static APoly monomial(std::uint64_t a_exp, const mpz_class& c);

    bool is_zero() const { return coeffs_.empty(); }
    const Terms& coeffs() const { return coeffs_; }
    std::uint64_t degree() const;  // 0 for the zero polynomial

    void add_term(std::uint64_t a_exp, const mpz_class& c);

    friend APoly operator+(const APoly& f, const APoly& g);
    friend APoly operator-(const APoly& f, const APoly& g);
    friend APoly operator*(const APoly& f, const APoly& g);
    bool operator==(const APoly& other) const { return coeffs_ == other.coeffs_; }

    // has integer coefficients by construction; "good form" additionally
    // needs a vanishing constant term
    bool zero_constant_term() const { return coeffs_.find(0) == coeffs_.end(); }

    Complex eval(Complex a_val) const;  // Horner over sorted a-exponents

private:
    Terms coeffs_;
};

/// Complex-coefficient sparse polynomial in z (numeric specialization).
class CPoly {
public:
    using Terms = std::map<std::uint64_t, Complex>;

    CPoly() = default;
    const Terms& terms() const { return terms_; }
    void set_term(std::uint64_t z_exp, Complex c);  // drops exact zeros

    /// Ascending-exponent summation; deterministic across runs.
    Complex eval_at(Complex z) const;

private:
    Terms terms_;
};

/// Sparse polynomial in z with APoly coefficients: the exact home of
/// R_a, the basis vectors b_v and their coefficient profiles.
class BiPolyZ {
public:
    using Terms = std::map<std::uint64_t, APoly>;

    BiPolyZ() = default;
    static BiPolyZ zero() { return {}; }
    static BiPolyZ one();
    static BiPolyZ monomial(std::uint64_t z_exp, APoly c);

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::uint64_t z_degree() const;  // 0 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }

    void add_term(std::uint64_t z_exp, const APoly& c);

    bool operator==(const BiPolyZ& other) const { return terms_ == other.terms_; }

    std::string to_json() const;
    static BiPolyZ from_json(const std::string& text);

private:
    Terms terms_;
};

BiPolyZ poly_add(const BiPolyZ& f, const BiPolyZ& g);
BiPolyZ poly_mul(const BiPolyZ& f, const BiPolyZ& g);
BiPolyZ poly_pow(const BiPolyZ& f, std::uint64_t e);
BiPolyZ poly_compose(const BiPolyZ& f, const BiPolyZ& g);
CPoly specialize(const BiPolyZ& f, Complex a_val);
Complex eval_at(const CPoly& f, Complex z);

/// Binary powering for complex bases; avoids the libm pow path so results
/// are bit-reproducible.
Complex cpow_u64(Complex base, std::uint64_t e);

}  // namespace bk

#endif
