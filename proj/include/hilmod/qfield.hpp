#pragma once

#include <vector>

#include "hilmod/rational.hpp"

namespace hilmod {

/// Element of the real quadratic field Q(sqrt p), stored as c0 + c1*sqrt(p)
/// with exact rational coordinates.  The real embedding fixes sqrt(p) > 0;
/// conjugation sends sqrt(p) to -sqrt(p).
class QuadElem {
public:
    QuadElem(long p, Rational c0, Rational c1);

    long p() const { return p_; }
    const Rational& c0() const { return c0_; }
    const Rational& c1() const { return c1_; }

    QuadElem conj() const { return QuadElem(p_, c0_, -c1_); }
    Rational norm() const { return c0_ * c0_ - p_ * c1_ * c1_; }
    Rational trace() const { return 2 * c0_; }

    QuadElem inv() const;
    QuadElem pow(long k) const;

    bool is_zero() const { return c0_ == 0 && c1_ == 0; }
    bool is_rational() const { return c1_ == 0; }

    /// Sign of c0 + c1*sqrt(p) under the embedding sqrt(p) > 0.
    int sign() const;
    bool is_positive() const { return sign() > 0; }
    bool is_totally_positive() const { return sign() > 0 && conj().sign() > 0; }

    /// Membership in the ring of integers: Z[(1+sqrt p)/2] for p = 1 mod 4,
    /// Z[sqrt p] otherwise.
    bool is_integral() const;

    /// Coordinates (u, v) with value u + v*(1+sqrt p)/2; exact rationals.
    Rational coord_u() const { return c0_ - c1_; }
    Rational coord_v() const { return 2 * c1_; }
    static QuadElem from_coords(long p, const Rational& u, const Rational& v);

    double to_double() const;

    friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator-(const QuadElem& a);
    friend QuadElem operator*(const Rational& c, const QuadElem& a);
    friend bool operator==(const QuadElem& a, const QuadElem& b);
    friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }

private:
    long p_;
    Rational c0_, c1_;
};

QuadElem quad_rational(long p, const Rational& c);
QuadElem quad_sqrtp(long p);

/// Fundamental unit > 1 of Q(sqrt p).  Fixed table for p in {5, 13, 17};
/// bounded Pell scan otherwise.
QuadElem fundamental_unit(long p);

struct PellEntry {
    long k;
    Integer a;
    Integer s;
    QuadElem eta;  // (a + s*sqrt p)/2, equal to eps0^(2k) or eps0^k
};

struct PellFamily {
    long p;
    QuadElem eps0;
    std::vector<PellEntry> entries;  // k = 1..K ascending
};

/// Solutions of a^2 - p s^2 = 4 ordered by unit powers of eps0.
PellFamily pell_solutions(long p, long K);

}  // namespace hilmod
