#include "hilmod/rootsys.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace hilmod {

double RootF::embed1() const { return xi_.to_double() / std::sqrt(static_cast<double>(p())); }
double RootF::embed2() const {
    return -xi_.conj().to_double() / std::sqrt(static_cast<double>(p()));
}

Rational bilinear_form(const RootF& x, const RootF& y) {
    if (x.p() != y.p()) throw std::domain_error("bilinear form across different fields");
    return (x.xi() * y.xi().conj()).trace();
}

RootDatum make_root_datum(long p, long k) {
    PellFamily fam = pell_solutions(p, k);
    const PellEntry& e = fam.entries.back();
    return RootDatum{p, k, e.a, e.s, e.eta};
}

std::pair<Rational, Rational> alpha_coords(const RootDatum& d, const RootF& x) {
    Rational s(d.s);
    Rational c1 = (2 * x.xi().c1()) / s;
    Rational c2 = (2 * (x.xi() * d.eta.conj()).c1()) / s;
    return {c1, c2};
}

RootF weyl_apply(const std::vector<Reflection>& word, const RootF& x, const RootDatum& d) {
    QuadElem eta2 = d.eta * d.eta;
    QuadElem xi = x.xi();
    for (Reflection r : word) {
        switch (r) {
            case Reflection::R1: xi = -(eta2 * xi.conj()); break;
            case Reflection::R2: xi = -xi.conj(); break;
        }
    }
    return RootF(xi);
}

std::vector<RootF> real_roots(const RootDatum& d, long j_max) {
    if (j_max < 1) throw std::domain_error("real root bound must be >= 1");
    std::vector<RootF> out;
    QuadElem pw = d.eta;
    for (long j = 1; j <= j_max; ++j) {
        out.emplace_back(pw);
        pw = pw * d.eta;
    }
    QuadElem etabar = d.eta.conj();
    QuadElem pwbar = quad_rational(d.p, 1);
    for (long j = 0; j <= j_max; ++j) {
        out.emplace_back(-pwbar);
        pwbar = pwbar * etabar;
    }
    return out;
}

std::vector<std::pair<long, long>> omega_set(const RootDatum& d, long k) {
    if (k < 1) throw std::domain_error("imaginary norm index must be >= 1");
    std::vector<std::pair<long, long>> out;
    Integer a = d.a;
    Integer disc_base = a * a - 4;
    // window sqrt(4k/(a^2-4)) <= m <= sqrt(k/(a-2))
    for (Integer m = 1; m * m * (a - 2) <= k; ++m) {
        if (m * m * disc_base < 4 * k) continue;
        Integer disc = disc_base * m * m - 4 * k;
        Integer t;
        mpz_sqrt(t.get_mpz_t(), disc.get_mpz_t());
        if (t * t != disc) continue;
        Integer num = a * m - t;
        if (num % 2 != 0) continue;
        Integer n = num / 2;
        if (n < 0) continue;
        out.emplace_back(to_long(m), to_long(n));
    }
    return out;
}

std::vector<ImaginaryRoot> imaginary_roots(const RootDatum& d, long k, long j_max) {
    std::vector<ImaginaryRoot> out;
    std::set<std::pair<Rational, Rational>> seen;
    QuadElem eta = d.eta, etabar = d.eta.conj();
    for (auto [m, n] : omega_set(d, k)) {
        QuadElem me_minus_n = Rational(m) * eta - quad_rational(d.p, n);
        QuadElem ne_minus_m = Rational(n) * eta - quad_rational(d.p, m);
        QuadElem n_minus_me = quad_rational(d.p, n) - Rational(m) * etabar;
        QuadElem m_minus_ne = quad_rational(d.p, m) - Rational(n) * etabar;
        QuadElem tw_pos = quad_rational(d.p, 1);
        QuadElem tw_neg = quad_rational(d.p, 1);
        for (long j = 0; j <= j_max; ++j) {
            const QuadElem bases[4] = {tw_pos * me_minus_n, tw_pos * ne_minus_m,
                                       tw_neg * n_minus_me, tw_neg * m_minus_ne};
            for (int fam = 0; fam < 4; ++fam) {
                const QuadElem& xi = bases[fam];
                if (!seen.emplace(xi.c0(), xi.c1()).second) continue;
                RootF r{xi};
                if (bilinear_form(r, r) != Rational(-2 * k))
                    throw std::logic_error("imaginary root family member has wrong norm");
                out.push_back({r, fam + 1, j, m, n});
            }
            tw_pos = tw_pos * eta;
            tw_neg = tw_neg * etabar;
        }
    }
    return out;
}

namespace {

// pairing of alpha-coordinate vectors under the Cartan matrix [[2,-a],[-a,2]]
Rational coord_pairing(const Integer& a, const Rational& x1, const Rational& x2,
                       const Rational& y1, const Rational& y2) {
    return 2 * x1 * y1 + 2 * x2 * y2 - Rational(a) * (x1 * y2 + x2 * y1);
}

}  // namespace

bool is_root(const RootDatum& d, const RootF& x) {
    auto [c1, c2] = alpha_coords(d, x);
    if (!is_integer(c1) || !is_integer(c2)) return false;
    if (c1 == 0 && c2 == 0) return false;
    if (c1 <= 0 && c2 <= 0) { c1 = -c1; c2 = -c2; }
    if (c1 < 0 || c2 < 0) return false;  // mixed sign: outside +-Q+
    Rational norm = coord_pairing(d.a, c1, c2, c1, c2);
    if (norm > 2 || norm == 0) return false;
    // walk toward the anti-dominant cone; the coordinate sum strictly drops,
    // so the walk ends after finitely many reflections
    while (true) {
        if ((c1 == 1 && c2 == 0) || (c1 == 0 && c2 == 1)) return true;  // simple root
        Rational p1 = coord_pairing(d.a, c1, c2, 1, 0);
        Rational p2 = coord_pairing(d.a, c1, c2, 0, 1);
        if (p1 <= 0 && p2 <= 0) return norm <= -2;  // anti-dominant imaginary cone
        if (p1 > 0) c1 = c1 - p1; else c2 = c2 - p2;
        if (c1 < 0 || c2 < 0) return false;
    }
}

EmbeddingPair embedding_pair(long p, long k, long l) {
    if (k < 1 || l < 1 || l % k != 0)
        throw std::domain_error("embedding needs positive indices with k | l");
    RootDatum dk = make_root_datum(p, k);
    long r = l / k;
    long j = (r % 2 == 0) ? r / 2 : (r + 1) / 2;
    QuadElem beta1 = dk.eta.pow(j);
    QuadElem beta2 = (r % 2 == 0) ? -dk.eta.conj().pow(j) : -dk.eta.conj().pow(j - 1);
    EmbeddingPair out{RootF(beta1), RootF(beta2), Integer(0), {}, false};
    out.a_l = pell_solutions(p, l).entries.back().a;
    out.gram[0][0] = bilinear_form(out.beta1, out.beta1);
    out.gram[0][1] = bilinear_form(out.beta1, out.beta2);
    out.gram[1][0] = out.gram[0][1];
    out.gram[1][1] = bilinear_form(out.beta2, out.beta2);
    if (out.gram[0][0] != 2 || out.gram[1][1] != 2 || out.gram[0][1] != -Rational(out.a_l))
        throw std::logic_error("embedding Gram matrix does not match [[2,-a_l],[-a_l,2]]");
    out.difference_rejected = !is_root(dk, out.beta1 - out.beta2);
    return out;
}

size_t PetersonTable::idx(long c1, long c2) const {
    long t = c1 + c2;
    return static_cast<size_t>(t * (t + 1) / 2 + c2);
}

PetersonTable::PetersonTable(Integer a, long max_height) : a_(std::move(a)), max_height_(max_height) {
    if (max_height_ < 1) throw std::domain_error("height bound must be >= 1");
    if (max_height_ > kHeightCap)
        throw std::runtime_error("Peterson recurrence height cap exceeded");
    size_t size = static_cast<size_t>((max_height_ + 1) * (max_height_ + 2) / 2);
    cbeta_.assign(size, Rational(0));
    mult_.assign(size, Integer(0));
    cbeta_[idx(1, 0)] = 1;
    cbeta_[idx(0, 1)] = 1;
    mult_[idx(1, 0)] = 1;
    mult_[idx(0, 1)] = 1;
    auto pair_int = [&](long x1, long x2, long y1, long y2) -> Integer {
        return 2 * Integer(x1) * y1 + 2 * Integer(x2) * y2 - a_ * (Integer(x1) * y2 + Integer(x2) * y1);
    };
    for (long h = 2; h <= max_height_; ++h) {
        for (long c2 = 0; c2 <= h; ++c2) {
            long c1 = h - c2;
            Integer denom = pair_int(c1, c2, c1, c2) - 2 * Integer(h);
            if (denom == 0) throw std::logic_error("vanishing Peterson denominator");
            Rational rhs(0);
            for (long d2 = 0; d2 <= c2; ++d2) {
                for (long d1 = 0; d1 <= c1; ++d1) {
                    if (d1 + d2 == 0 || d1 + d2 == h) continue;
                    const Rational& cb1 = cbeta_[idx(d1, d2)];
                    if (cb1 == 0) continue;
                    const Rational& cb2 = cbeta_[idx(c1 - d1, c2 - d2)];
                    if (cb2 == 0) continue;
                    rhs += Rational(pair_int(d1, d2, c1 - d1, c2 - d2)) * cb1 * cb2;
                }
            }
            Rational cb = rhs / Rational(denom);
            cbeta_[idx(c1, c2)] = cb;
            Rational mult = cb;
            long g = std::gcd(c1, c2);
            for (long n = 2; n <= g; ++n)
                if (g % n == 0) mult -= Rational(mult_[idx(c1 / n, c2 / n)]) / n;
            if (!is_integer(mult) || mult < 0)
                throw std::logic_error("Peterson recurrence produced a non-integral multiplicity");
            mult_[idx(c1, c2)] = mult.get_num();
        }
    }
}

Integer PetersonTable::mult(long c1, long c2) const {
    if (c1 < 0 || c2 < 0 || (c1 == 0 && c2 == 0))
        throw std::domain_error("multiplicity query needs a nonzero nonnegative vector");
    if (c1 + c2 > max_height_) throw std::runtime_error("multiplicity query beyond table height");
    return mult_[idx(c1, c2)];
}

Integer peterson_mult(const RootDatum& d, long c1, long c2) {
    if (c1 < 0 || c2 < 0 || (c1 == 0 && c2 == 0))
        throw std::domain_error("multiplicity query needs a nonzero nonnegative vector");
    PetersonTable table(d.a, std::max<long>(c1 + c2, 1));
    return table.mult(c1, c2);
}

}  // namespace hilmod
