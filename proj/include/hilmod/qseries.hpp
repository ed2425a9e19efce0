#pragma once

#include <utility>
#include <vector>

#include "hilmod/rational.hpp"

namespace hilmod {

/// Truncated Laurent series in q with exact rational coefficients.
///
/// A series knows its coefficients exactly for lo() <= n <= order(); the
/// coefficient of any n < lo() is exactly zero, and coefficients beyond
/// order() are unknown.  Every arithmetic operation propagates the tightest
/// truncation order justified by its operands, so precision loss is always
/// visible in order().
class QExpansion {
public:
    QExpansion() : lo_(0), order_(-1) {}
    QExpansion(long lo, long order);

    static QExpansion zero(long order) { return QExpansion(0, order); }
    static QExpansion one(long order);
    static QExpansion monomial(const Rational& c, long n, long order);

    long lo() const { return lo_; }
    long order() const { return order_; }

    /// Exact coefficient of q^n; throws if n > order() (unknown, not zero).
    const Rational& coeff(long n) const;
    void set(long n, const Rational& c);

    /// Smallest exponent with a nonzero coefficient, or order()+1 when the
    /// known window is identically zero.
    long valuation() const;

    bool is_known_zero() const { return valuation() > order_; }

    QExpansion inv() const;
    QExpansion pow(long k) const;

    /// Drop all knowledge beyond new_order.
    QExpansion truncate(long new_order) const;

    friend QExpansion operator+(const QExpansion& f, const QExpansion& g);
    friend QExpansion operator-(const QExpansion& f, const QExpansion& g);
    friend QExpansion operator*(const QExpansion& f, const QExpansion& g);
    friend QExpansion operator*(const Rational& c, const QExpansion& f);
    friend QExpansion operator-(const QExpansion& f);

private:
    long lo_;
    long order_;
    std::vector<Rational> c_;  // c_[i] holds the coefficient of q^(lo_+i)
};

/// Product of eta(d z)^e factors as a q-series to relative order N.  The
/// q^(sum e*d/24) prefactor is folded into the leading exponent, which must
/// come out integral.
QExpansion eta_quotient(const std::vector<std::pair<long, long>>& factors, long N);

enum class Series { E2p, H2, E2plus, E4, E6, Delta, J, E0 };

/// Classical series up to q^N.  E2p, H2, E2plus and E0 need the prime p;
/// E2plus and E0 are only available for p in {5, 13}.
QExpansion classical_series(Series s, long p, long N);

/// g(z) -> g(pz): substitutes q -> q^p.
QExpansion level_raise(const QExpansion& f, long p);

}  // namespace hilmod
