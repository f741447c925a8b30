#include "bk/poly.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bk {

namespace {

std::uint64_t checked_exp_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s < a || s > kMaxExponent) throw ExponentOverflow{};
    return s;
}

std::uint64_t checked_exp_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > kMaxExponent / b) throw ExponentOverflow{};
    return a * b;
}

}  // namespace

// ---------- APoly ----------

APoly APoly::constant(const mpz_class& c) { return monomial(0, c); }

APoly APoly::monomial(std::uint64_t a_exp, const mpz_class& c) {
    APoly p;
    if (c != 0) p.coeffs_[a_exp] = c;
    return p;
}

std::uint64_t APoly::degree() const {
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

void APoly::add_term(std::uint64_t a_exp, const mpz_class& c) {
    if (c == 0) return;
    auto it = coeffs_.find(a_exp);
    if (it == coeffs_.end()) {
        coeffs_.emplace(a_exp, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

APoly operator+(const APoly& f, const APoly& g) {
    APoly r = f;
    for (const auto& [e, c] : g.coeffs_) r.add_term(e, c);
    return r;
}

APoly operator-(const APoly& f, const APoly& g) {
    APoly r = f;
    for (const auto& [e, c] : g.coeffs_) r.add_term(e, -c);
    return r;
}

APoly operator*(const APoly& f, const APoly& g) {
    APoly r;
    for (const auto& [ef, cf] : f.coeffs_)
        for (const auto& [eg, cg] : g.coeffs_)
            r.add_term(checked_exp_add(ef, eg), cf * cg);
    return r;
}

Complex APoly::eval(Complex a_val) const {
    // sparse Horner, highest exponent first
    Complex acc{0.0, 0.0};
    std::uint64_t prev_exp = 0;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (first) {
            acc = Complex(it->second.get_d(), 0.0);
            prev_exp = it->first;
            first = false;
        } else {
            acc *= cpow_u64(a_val, prev_exp - it->first);
            acc += Complex(it->second.get_d(), 0.0);
            prev_exp = it->first;
        }
    }
    if (first) return {0.0, 0.0};
    return acc * cpow_u64(a_val, prev_exp);
}

// ---------- CPoly ----------

void CPoly::set_term(std::uint64_t z_exp, Complex c) {
    if (c == Complex{0.0, 0.0}) {
        terms_.erase(z_exp);
    } else {
        terms_[z_exp] = c;
    }
}

Complex CPoly::eval_at(Complex z) const {
    Complex sum{0.0, 0.0};
    Complex pow{1.0, 0.0};
    std::uint64_t cur = 0;
    for (const auto& [e, c] : terms_) {
        pow *= cpow_u64(z, e - cur);
        cur = e;
        sum += c * pow;
    }
    return sum;
}

// ---------- BiPolyZ ----------

BiPolyZ BiPolyZ::one() { return monomial(0, APoly::constant(1)); }

BiPolyZ BiPolyZ::monomial(std::uint64_t z_exp, APoly c) {
    BiPolyZ p;
    if (!c.is_zero()) p.terms_.emplace(z_exp, std::move(c));
    return p;
}

std::uint64_t BiPolyZ::z_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first;
}

void BiPolyZ::add_term(std::uint64_t z_exp, const APoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(z_exp);
    if (it == terms_.end()) {
        terms_.emplace(z_exp, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BiPolyZ poly_add(const BiPolyZ& f, const BiPolyZ& g) {
    BiPolyZ r = f;
    for (const auto& [e, c] : g.terms()) r.add_term(e, c);
    return r;
}

BiPolyZ poly_mul(const BiPolyZ& f, const BiPolyZ& g) {
    // Flattened monomial product with hash accumulation over (z,a) keys;
    // the map form is rebuilt at the end to restore canonical order.
    struct Mono {
        std::uint64_t ze, ae;
        const mpz_class* c;
    };
    std::vector<Mono> mf, mg;
    for (const auto& [ze, ap] : f.terms())
        for (const auto& [ae, c] : ap.coeffs()) mf.push_back({ze, ae, &c});
    for (const auto& [ze, ap] : g.terms())
        for (const auto& [ae, c] : ap.coeffs()) mg.push_back({ze, ae, &c});

    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
            return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
        }
    };
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, mpz_class, KeyHash> acc;
    acc.reserve(mf.size() + mg.size());
    mpz_class prod;
    for (const auto& x : mf) {
        for (const auto& y : mg) {
            std::uint64_t ze = checked_exp_add(x.ze, y.ze);
            std::uint64_t ae = checked_exp_add(x.ae, y.ae);
            mpz_mul(prod.get_mpz_t(), x.c->get_mpz_t(), y.c->get_mpz_t());
            auto [it, fresh] = acc.emplace(std::make_pair(ze, ae), prod);
            if (!fresh) it->second += prod;
        }
    }

    BiPolyZ r;
    for (const auto& [key, c] : acc) {
        if (c != 0) r.add_term(key.first, APoly::monomial(key.second, c));
    }
    return r;
}

BiPolyZ poly_pow(const BiPolyZ& f, std::uint64_t e) {
    BiPolyZ result = BiPolyZ::one();
    BiPolyZ base = f;
    while (e > 0) {
        if (e & 1) result = poly_mul(result, base);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base);
    }
    return result;
}

namespace {

// Composition with g = u·z^(2m) + v·z^m where u,v are a-monomials sharing one
// a-exponent and u has unit integer part (the family polynomials all match).
// f(g) = sum_e C_e(a)·a^(d·e)·z^(me)·(u'z^m + v')^e expands by binomials, so
// each input monomial costs e+1 coefficient updates instead of a full
// polynomial product per Horner step.
bool compose_two_term(const BiPolyZ& f, const BiPolyZ& g, BiPolyZ& out) {
    if (g.term_count() != 2) return false;
    auto it = g.terms().begin();
    const auto& [m, lo_ap] = *it;
    ++it;
    const auto& [hi_exp, hi_ap] = *it;
    if (m == 0 || hi_exp != 2 * m) return false;
    if (lo_ap.coeffs().size() != 1 || hi_ap.coeffs().size() != 1) return false;
    const auto& [a_lo, c_lo] = *lo_ap.coeffs().begin();
    const auto& [a_hi, c_hi] = *hi_ap.coeffs().begin();
    if (a_lo != a_hi) return false;
    if (c_hi != 1 && c_hi != -1) return false;
    const std::uint64_t d = a_lo;
    const bool hi_neg = (c_hi == -1);

    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
            return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
        }
    };
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, mpz_class, KeyHash> acc;
    std::size_t est = 0;
    for (const auto& [e, cap] : f.terms()) est += (e + 1) * cap.coeffs().size();
    acc.reserve(std::min<std::size_t>(est, std::size_t{1} << 22));

    mpz_class w;
    for (const auto& [e, cap] : f.terms()) {
        const std::uint64_t a_shift = checked_exp_mul(d, e);
        checked_exp_mul(m, checked_exp_add(e, e));  // overflow probe for top slot
        // w runs over binom(e,j)·c_hi^j·c_lo^(e-j), descending j from e.
        w = 1;
        if (hi_neg && (e & 1)) w = -1;
        for (std::uint64_t j = e;; --j) {
            const std::uint64_t ze = m * (e + j);
            for (const auto& [ae, c] : cap.coeffs()) {
                auto [pos, fresh] =
                    acc.try_emplace({ze, checked_exp_add(ae, a_shift)});
                mpz_addmul(pos->second.get_mpz_t(), c.get_mpz_t(), w.get_mpz_t());
            }
            if (j == 0) break;
            // binom(e,j-1) = binom(e,j)·j/(e-j+1); the sign flips with c_hi.
            w *= j;
            mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(),
                            static_cast<unsigned long>(e - j + 1));
            w *= c_lo;
            if (hi_neg) w = -w;
        }
    }

    std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, const mpz_class*>> flat;
    flat.reserve(acc.size());
    for (const auto& [key, c] : acc)
        if (c != 0) flat.emplace_back(key, &c);
    std::sort(flat.begin(), flat.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    out = BiPolyZ::zero();
    APoly coeff;
    for (std::size_t i = 0; i < flat.size();) {
        const std::uint64_t ze = flat[i].first.first;
        coeff = APoly{};
        while (i < flat.size() && flat[i].first.first == ze) {
            coeff.add_term(flat[i].first.second, *flat[i].second);
            ++i;
        }
        out.add_term(ze, coeff);
    }
    return true;
}

}  // namespace

BiPolyZ poly_compose(const BiPolyZ& f, const BiPolyZ& g) {
    if (f.is_zero()) return BiPolyZ::zero();
    if (BiPolyZ fast; compose_two_term(f, g, fast)) return fast;
    // Horner over descending sorted z-exponents with binary powers of g
    // across the gaps.
    std::vector<std::pair<std::uint64_t, const APoly*>> ts;
    ts.reserve(f.terms().size());
    for (const auto& [e, c] : f.terms()) ts.emplace_back(e, &c);

    BiPolyZ acc;
    std::uint64_t prev_exp = 0;
    bool first = true;
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        if (first) {
            acc = BiPolyZ::monomial(0, *it->second);
            first = false;
        } else {
            acc = poly_mul(acc, poly_pow(g, prev_exp - it->first));
            acc.add_term(0, *it->second);
        }
        prev_exp = it->first;
    }
    if (prev_exp > 0) acc = poly_mul(acc, poly_pow(g, prev_exp));
    return acc;
}

CPoly specialize(const BiPolyZ& f, Complex a_val) {
    CPoly r;
    for (const auto& [ze, ap] : f.terms()) r.set_term(ze, ap.eval(a_val));
    return r;
}

Complex eval_at(const CPoly& f, Complex z) { return f.eval_at(z); }

Complex cpow_u64(Complex base, std::uint64_t e) {
    Complex result{1.0, 0.0};
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

// ---------- JSON ----------
// Schema: [{"z_exp": n, "a_poly": ["c0","c1",...]}, ...] with decimal-string
// coefficients indexed densely by a-exponent.

std::string BiPolyZ::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [ze, ap] : terms_) {
        nlohmann::json entry;
        entry["z_exp"] = ze;
        std::uint64_t deg = ap.degree();
        std::vector<std::string> dense(deg + 1, "0");
        for (const auto& [ae, c] : ap.coeffs()) dense[ae] = c.get_str();
        entry["a_poly"] = dense;
        arr.push_back(std::move(entry));
    }
    return arr.dump();
}

BiPolyZ BiPolyZ::from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    BiPolyZ r;
    for (const auto& entry : arr) {
        std::uint64_t ze = entry.at("z_exp").get<std::uint64_t>();
        APoly ap;
        std::uint64_t ae = 0;
        for (const auto& s : entry.at("a_poly")) {
            ap.add_term(ae++, mpz_class(s.get<std::string>()));
        }
        r.add_term(ze, ap);
    }
    return r;
}

}  // namespace bk
