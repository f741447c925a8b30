#ifndef BK_CUNTZ_HPP
#define BK_CUNTZ_HPP

#include <string>
#include <vector>

#include "bk/dynamics.hpp"
#include "bk/poly.hpp"

namespace bk {

struct WordTooLong : std::runtime_error {
    WordTooLong() : std::runtime_error("word length exceeds the cap of 12 letters") {}
};

/// Finite sequence over {0,1}; indexes the operator product
/// S_{j_1} ... S_{j_N} applied to the constant function 1.
class Word {
public:
    static constexpr std::size_t kMaxLength = 12;

    Word() = default;
    explicit Word(std::vector<int> letters);
    static Word parse(const std::string& bits);  // e.g. "011"

    const std::vector<int>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    std::string str() const;

    Word appended(int letter) const;

    bool operator==(const Word& other) const { return letters_ == other.letters_; }

private:
    std::vector<int> letters_;
};

struct BasisVector {
    Word word;
    BiPolyZ poly;  // symbolic in a; specializing at any a != 0 gives b_{v,a}
};

struct CoefficientProfile {
    std::vector<std::pair<std::uint64_t, APoly>> entries;  // (z-exponent, beta_i)
};

/// S_0 f = f(R_a(z))
BiPolyZ apply_s0(const FamilyMember& fm, const BiPolyZ& f);
/// S_1 f = z^(2^n) f(R_a(z))
BiPolyZ apply_s1(const FamilyMember& fm, const BiPolyZ& f);

/// b_v = S_{j_1} ... S_{j_N} 1, applied right to left (S_{j_N} innermost).
BasisVector basis_vector(const FamilyMember& fm, const Word& v);

/// The duplicate-free index family: the empty word plus every word of
/// length 1..max_len whose last letter is 1, in length-then-lex order.
/// Its size is 2^max_len.
std::vector<Word> enumerate_canonical(std::size_t max_len);

/// True iff every coefficient polynomial in a has zero constant term.
bool good_form(const BasisVector& bv);

CoefficientProfile coefficient_profile(const BasisVector& bv);

/// l1 coefficient distance sum_i |beta_i(a_k) - beta_i(a_lim)| * radius^i,
/// one entry per a_k.  Dominates the sup-norm deviation on the disk of the
/// given radius.
std::vector<double> continuity_modulus(const FamilyMember& fm, const Word& v,
                                       const std::vector<Complex>& a_seq, Complex a_lim,
                                       double eval_disk_radius = 1.0);

/// JSON per the CLI contract:
/// {"word": "...", "n": int, "terms": [...], "good_form": bool}
std::string basis_vector_to_json(int n, const BasisVector& bv);

}  // namespace bk

#endif
