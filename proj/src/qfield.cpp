#include "hilmod/qfield.hpp"

#include <cmath>

namespace hilmod {

namespace {

void require_same_field(const QuadElem& a, const QuadElem& b) {
    if (a.p() != b.p()) throw std::domain_error("mixed base primes in field arithmetic");
}

}  // namespace

QuadElem::QuadElem(long p, Rational c0, Rational c1)
    : p_(p), c0_(std::move(c0)), c1_(std::move(c1)) {
    if (!is_odd_prime(p_)) throw std::domain_error("base must be an odd prime");
}

QuadElem quad_rational(long p, const Rational& c) { return QuadElem(p, c, 0); }
QuadElem quad_sqrtp(long p) { return QuadElem(p, 0, 1); }

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    require_same_field(a, b);
    return QuadElem(a.p_, a.c0_ + b.c0_, a.c1_ + b.c1_);
}

QuadElem operator-(const QuadElem& a, const QuadElem& b) {
    require_same_field(a, b);
    return QuadElem(a.p_, a.c0_ - b.c0_, a.c1_ - b.c1_);
}

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    require_same_field(a, b);
    return QuadElem(a.p_, a.c0_ * b.c0_ + a.p_ * a.c1_ * b.c1_,
                    a.c0_ * b.c1_ + a.c1_ * b.c0_);
}

QuadElem operator-(const QuadElem& a) { return QuadElem(a.p_, -a.c0_, -a.c1_); }

QuadElem operator*(const Rational& c, const QuadElem& a) {
    return QuadElem(a.p_, c * a.c0_, c * a.c1_);
}

bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.p_ == b.p_ && a.c0_ == b.c0_ && a.c1_ == b.c1_;
}

QuadElem QuadElem::inv() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("inverse of zero or null element");
    return QuadElem(p_, c0_ / n, -c1_ / n);
}

QuadElem QuadElem::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    QuadElem acc = quad_rational(p_, 1);
    QuadElem base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

int QuadElem::sign() const {
    int s0 = sgn(c0_), s1 = sgn(c1_);
    if (s1 == 0) return s0;
    if (s0 == 0) return s1;
    if (s0 == s1) return s0;
    // mixed signs: compare c0^2 against p*c1^2
    Rational lhs = c0_ * c0_, rhs = p_ * c1_ * c1_;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? s0 : s1;
}

bool QuadElem::is_integral() const {
    if (p_ % 4 == 1) return is_integer(c0_ + c1_) && is_integer(2 * c1_);
    return is_integer(c0_) && is_integer(c1_);
}

QuadElem QuadElem::from_coords(long p, const Rational& u, const Rational& v) {
    return QuadElem(p, u + v / 2, v / 2);
}

double QuadElem::to_double() const {
    return c0_.get_d() + c1_.get_d() * std::sqrt(static_cast<double>(p_));
}

namespace {

constexpr long kUnitSearchBound = 1000000;

bool integer_sqrt(const Integer& n, Integer& root) {
    if (n < 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root * root == n;
}

}  // namespace

QuadElem fundamental_unit(long p) {
    if (!is_odd_prime(p)) throw std::domain_error("fundamental unit requires an odd prime");
    switch (p) {
        case 5:  return QuadElem(5,  make_rational(1, 2), make_rational(1, 2));
        case 13: return QuadElem(13, make_rational(3, 2), make_rational(1, 2));
        case 17: return QuadElem(17, 4, 1);
        default: break;
    }
    // bounded scan over the second coordinate; the first hit is the unit of
    // minimal height above 1
    Integer u;
    if (p % 4 == 1) {
        for (long v = 1; v <= kUnitSearchBound; ++v) {
            Integer pv2 = Integer(p) * v * v;
            if (integer_sqrt(pv2 - 4, u) || integer_sqrt(pv2 + 4, u))
                return QuadElem(p, make_rational(u, 2), make_rational(v, 2));
        }
    } else {
        for (long v = 1; v <= kUnitSearchBound; ++v) {
            Integer pv2 = Integer(p) * v * v;
            if (integer_sqrt(pv2 - 1, u) || integer_sqrt(pv2 + 1, u))
                return QuadElem(p, Rational(u), Rational(v));
        }
    }
    throw std::runtime_error("fundamental unit search exceeded iteration bound");
}

PellFamily pell_solutions(long p, long K) {
    if (K < 1) throw std::domain_error("need at least one Pell solution");
    PellFamily fam{p, fundamental_unit(p), {}};
    long step = (p % 4 == 1) ? 2 : 1;
    QuadElem eta1 = fam.eps0.pow(step);
    QuadElem eta = eta1;
    for (long k = 1; k <= K; ++k) {
        Rational a = eta.trace();
        Rational s = 2 * eta.c1();
        if (!is_integer(a) || !is_integer(s))
            throw std::logic_error("unit power has non-integral Pell data");
        if (a * a - p * s * s != 4)
            throw std::logic_error("Pell identity failed for unit power");
        fam.entries.push_back({k, a.get_num(), s.get_num(), eta});
        eta = eta * eta1;
    }
    return fam;
}

}  // namespace hilmod
