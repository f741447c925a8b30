#include "bk/cuntz.hpp"

#include <cmath>

#include <json.hpp>

namespace bk {

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
    if (letters_.size() > kMaxLength) throw WordTooLong{};
    for (int l : letters_)
        if (l != 0 && l != 1) throw std::invalid_argument("word letters must be 0 or 1");
}

Word Word::parse(const std::string& bits) {
    std::vector<int> letters;
    letters.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("word strings must match [01]*");
        letters.push_back(c - '0');
    }
    return Word(std::move(letters));
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (int l : letters_) s.push_back(static_cast<char>('0' + l));
    return s;
}

Word Word::appended(int letter) const {
    std::vector<int> ls = letters_;
    ls.push_back(letter);
    return Word(std::move(ls));
}

BiPolyZ apply_s0(const FamilyMember& fm, const BiPolyZ& f) {
    return poly_compose(f, family_poly(fm));
}

BiPolyZ apply_s1(const FamilyMember& fm, const BiPolyZ& f) {
    return poly_mul(BiPolyZ::monomial(fm.alpha(), APoly::constant(1)), apply_s0(fm, f));
}

BasisVector basis_vector(const FamilyMember& fm, const Word& v) {
    if (v.length() > Word::kMaxLength) throw WordTooLong{};
    // degree bound before any allocation: d -> deg(R)*d (+ 2^n for S_1)
    std::uint64_t bound = 0;
    for (auto it = v.letters().rbegin(); it != v.letters().rend(); ++it) {
        if (bound > kMaxExponent / fm.degree()) throw ExponentOverflow{};
        bound *= fm.degree();
        if (*it == 1) bound += fm.alpha();
        if (bound > kMaxExponent) throw ExponentOverflow{};
    }

    BiPolyZ poly = BiPolyZ::one();
    for (auto it = v.letters().rbegin(); it != v.letters().rend(); ++it)
        poly = (*it == 0) ? apply_s0(fm, poly) : apply_s1(fm, poly);
    return BasisVector{v, std::move(poly)};
}

std::vector<Word> enumerate_canonical(std::size_t max_len) {
    if (max_len > Word::kMaxLength) throw WordTooLong{};
    std::vector<Word> out;
    out.push_back(Word{});
    for (std::size_t len = 1; len <= max_len; ++len) {
        // lexicographic over the 2^(len-1) prefixes; last letter fixed to 1
        std::uint64_t count = std::uint64_t{1} << (len - 1);
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            std::vector<int> letters(len, 0);
            for (std::size_t k = 0; k + 1 < len; ++k)
                letters[k] = static_cast<int>((bits >> (len - 2 - k)) & 1);
            letters[len - 1] = 1;
            out.emplace_back(std::move(letters));
        }
    }
    return out;
}

bool good_form(const BasisVector& bv) {
    if (bv.poly.is_zero()) return false;
    for (const auto& [ze, ap] : bv.poly.terms())
        if (!ap.zero_constant_term()) return false;
    return true;
}

CoefficientProfile coefficient_profile(const BasisVector& bv) {
    CoefficientProfile cp;
    cp.entries.reserve(bv.poly.term_count());
    for (const auto& [ze, ap] : bv.poly.terms()) cp.entries.emplace_back(ze, ap);
    return cp;
}

std::vector<double> continuity_modulus(const FamilyMember& fm, const Word& v,
                                       const std::vector<Complex>& a_seq, Complex a_lim,
                                       double eval_disk_radius) {
    for (Complex a : a_seq)
        if (a == Complex{0.0, 0.0}) throw std::invalid_argument("a-values must be nonzero");
    BasisVector bv = basis_vector(fm, v);
    std::vector<double> out;
    out.reserve(a_seq.size());
    for (Complex ak : a_seq) {
        double dist = 0.0;
        for (const auto& [ze, beta] : bv.poly.terms()) {
            double weight = std::pow(eval_disk_radius, static_cast<double>(ze));
            dist += std::abs(beta.eval(ak) - beta.eval(a_lim)) * weight;
        }
        out.push_back(dist);
    }
    return out;
}

std::string basis_vector_to_json(int n, const BasisVector& bv) {
    nlohmann::json j;
    j["word"] = bv.word.str();
    j["n"] = n;
    j["terms"] = nlohmann::json::parse(bv.poly.to_json());
    j["good_form"] = good_form(bv);
    return j.dump();
}

}  // namespace bk
