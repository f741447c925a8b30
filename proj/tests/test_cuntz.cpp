#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bk/cuntz.hpp"
#include "bk/rng.hpp"

using namespace bk;

namespace {

BiPolyZ mono(std::uint64_t z_exp, std::uint64_t a_exp, long c) {
    return BiPolyZ::monomial(z_exp, APoly::monomial(a_exp, c));
}

}  // namespace

TEST_CASE("S_0 fixes the constant function and maps z to R_a") {
    FamilyMember fm0(0, {1.0, 0.0});
    CHECK(apply_s0(fm0, BiPolyZ::one()) == BiPolyZ::one());

    BiPolyZ s0z = apply_s0(fm0, mono(1, 0, 1));
    CHECK(s0z == poly_add(mono(4, 1, 1), mono(2, 1, -2)));  // a z^4 - 2a z^2

    // n=1: S_0(z^2) = (a z^8 - 2a z^4)^2
    FamilyMember fm1(1, {1.0, 0.0});
    BiPolyZ s0z2 = apply_s0(fm1, mono(2, 0, 1));
    BiPolyZ expected =
        poly_add(poly_add(mono(16, 2, 1), mono(12, 2, -4)), mono(8, 2, 4));
    CHECK(s0z2 == expected);
}

TEST_CASE("S_1 prepends z^(2^n)") {
    FamilyMember fm0(0, {1.0, 0.0});
    CHECK(apply_s1(fm0, BiPolyZ::one()) == mono(1, 0, 1));
    FamilyMember fm2(2, {1.0, 0.0});
    CHECK(apply_s1(fm2, BiPolyZ::one()) == mono(4, 0, 1));

    // S_1 S_1 1 = a z^5 - 2a z^3 at n=0
    BiPolyZ s11 = apply_s1(fm0, apply_s1(fm0, BiPolyZ::one()));
    CHECK(s11 == poly_add(mono(5, 1, 1), mono(3, 1, -2)));

    // linearity: S_1(1 + z) = z + a z^5 - 2a z^3
    BiPolyZ s1_sum = apply_s1(fm0, poly_add(BiPolyZ::one(), mono(1, 0, 1)));
    CHECK(s1_sum == poly_add(mono(1, 0, 1), poly_add(mono(5, 1, 1), mono(3, 1, -2))));
}

TEST_CASE("basis_vector matches the section-5 examples") {
    FamilyMember fm(0, {1.0, 0.0});
    CHECK(basis_vector(fm, Word{}).poly == BiPolyZ::one());
    CHECK(basis_vector(fm, Word::parse("0")).poly == BiPolyZ::one());
    CHECK(basis_vector(fm, Word::parse("01")).poly ==
          poly_add(mono(4, 1, 1), mono(2, 1, -2)));
    CHECK(basis_vector(fm, Word::parse("11")).poly ==
          poly_add(mono(5, 1, 1), mono(3, 1, -2)));
}

TEST_CASE("words apply right to left: 01 and 10 differ") {
    FamilyMember fm(0, {1.0, 0.0});
    // S_1 S_0 1 = S_1 1 = z, while S_0 S_1 1 = R_a
    CHECK(basis_vector(fm, Word::parse("10")).poly == mono(1, 0, 1));
    CHECK(basis_vector(fm, Word::parse("01")).poly != mono(1, 0, 1));
}

TEST_CASE("canonical enumeration") {
    auto len1 = enumerate_canonical(1);
    REQUIRE(len1.size() == 2);
    CHECK(len1[0] == Word{});
    CHECK(len1[1] == Word::parse("1"));

    auto len2 = enumerate_canonical(2);
    REQUIRE(len2.size() == 4);
    CHECK(len2[2] == Word::parse("01"));
    CHECK(len2[3] == Word::parse("11"));

    CHECK(enumerate_canonical(3).size() == 8);
    CHECK(enumerate_canonical(6).size() == 64);
}

TEST_CASE("duplicate law: appending 0 never changes the basis vector") {
    for (int n : {0, 1}) {
        FamilyMember fm(n, {1.0, 0.0});
        for (const Word& v : enumerate_canonical(n == 0 ? 5 : 3))
            CHECK(basis_vector(fm, v.appended(0)).poly == basis_vector(fm, v).poly);
    }
}

TEST_CASE("good form predicate") {
    FamilyMember fm(0, {1.0, 0.0});
    CHECK(good_form(basis_vector(fm, Word::parse("01"))));
    CHECK_FALSE(good_form(basis_vector(fm, Word::parse("1"))));  // b_(1) = z^(2^n), a bare monomial
    CHECK_FALSE(good_form(basis_vector(fm, Word{})));            // the constant 1
}

TEST_CASE("coefficient profiles") {
    FamilyMember fm0(0, {1.0, 0.0});
    auto p01 = coefficient_profile(basis_vector(fm0, Word::parse("01")));
    REQUIRE(p01.entries.size() == 2);
    CHECK(p01.entries[0] == std::pair<std::uint64_t, APoly>{2, APoly::monomial(1, -2)});
    CHECK(p01.entries[1] == std::pair<std::uint64_t, APoly>{4, APoly::monomial(1, 1)});

    FamilyMember fm1(1, {1.0, 0.0});
    auto p1 = coefficient_profile(basis_vector(fm1, Word::parse("1")));
    REQUIRE(p1.entries.size() == 1);
    CHECK(p1.entries[0] == std::pair<std::uint64_t, APoly>{2, APoly::constant(1)});

    auto p11 = coefficient_profile(basis_vector(fm0, Word::parse("11")));
    REQUIRE(p11.entries.size() == 2);
    CHECK(p11.entries[0].first == 3);
    CHECK(p11.entries[1].first == 5);
}

TEST_CASE("continuity modulus") {
    FamilyMember fm(0, {1.0, 0.0});
    Word v = Word::parse("01");

    std::vector<Complex> constant_path(5, Complex{1.0, 0.0});
    for (double d : continuity_modulus(fm, v, constant_path, {1.0, 0.0})) CHECK(d == 0.0);

    std::vector<Complex> harmonic;
    for (int k = 1; k <= 10; ++k) harmonic.emplace_back(1.0 + 1.0 / k, 0.0);
    auto dists = continuity_modulus(fm, v, harmonic, {1.0, 0.0});
    for (int k = 1; k <= 10; ++k)
        CHECK(dists[k - 1] == doctest::Approx(3.0 / k).epsilon(1e-14));

    // geometric approach decays to 0
    std::vector<Complex> geometric;
    double step = 1.0;
    for (int k = 0; k < 20; ++k) {
        step *= 0.1;
        geometric.emplace_back(1.0 + step, 0.0);
    }
    auto gd = continuity_modulus(fm, Word::parse("011"), geometric, {1.0, 0.0});
    for (std::size_t k = 1; k < gd.size(); ++k) CHECK(gd[k] <= gd[k - 1]);
    CHECK(gd.back() < 1e-12);

    CHECK_THROWS(continuity_modulus(fm, v, {Complex{0.0, 0.0}}, {1.0, 0.0}));
}

TEST_CASE("word validation") {
    CHECK_THROWS_AS(Word::parse("0110210"), std::invalid_argument);
    CHECK_THROWS_AS(Word::parse("1111111111111"), WordTooLong);  // 13 letters
    CHECK_THROWS_AS(enumerate_canonical(13), WordTooLong);
}

TEST_CASE("basis vector JSON carries word, terms and good_form") {
    FamilyMember fm(0, {1.0, 0.0});
    std::string j = basis_vector_to_json(0, basis_vector(fm, Word::parse("01")));
    CHECK(j.find("\"word\":\"01\"") != std::string::npos);
    CHECK(j.find("\"good_form\":true") != std::string::npos);
    CHECK(j.find("\"-2\"") != std::string::npos);
}

TEST_CASE("specialization commutes with the numeric construction") {
    Rng rng(55);
    for (int i = 0; i < 20; ++i) {
        int n = static_cast<int>(rng.next_u64() % 2);
        FamilyMember fm(n, {1.0, 0.0});
        std::size_t len = 1 + rng.next_u64() % 3;
        std::vector<int> letters(len);
        for (auto& l : letters) l = static_cast<int>(rng.next_u64() % 2);
        Word v{letters};
        Complex a0 = {rng.uniform(0.4, 1.1), rng.uniform(-0.3, 0.3)};

        CPoly sym = specialize(basis_vector(fm, v).poly, a0);
        // numeric route: evaluate b_v(z0) as the nested product of e_i factors
        Rng zr(rng.next_u64());
        for (int t = 0; t < 5; ++t) {
            Complex z0 = zr.box(1.0);
            Complex expected{1.0, 0.0};
            Complex cur = z0;
            for (int letter : letters) {
                if (letter == 1) expected *= cpow_u64(cur, fm.alpha());
                Complex p = cpow_u64(cur, fm.half_degree());
                cur = a0 * p * (p - 2.0);
            }
            Complex got = sym.eval_at(z0);
            CHECK(std::abs(got - expected) < 1e-9 * std::max(1.0, std::abs(expected)));
        }
    }
}
