#include "hilmod/qseries.hpp"

#include <algorithm>
#include <numeric>

namespace hilmod {

namespace {
const Rational kZero{};
}

QExpansion::QExpansion(long lo, long order) : lo_(lo), order_(order) {
    if (order_ >= lo_) c_.resize(static_cast<size_t>(order_ - lo_ + 1));
}

QExpansion QExpansion::one(long order) { return monomial(1, 0, order); }

QExpansion QExpansion::monomial(const Rational& c, long n, long order) {
    QExpansion f(n, order);
    if (n <= order) f.set(n, c);
    return f;
}

const Rational& QExpansion::coeff(long n) const {
    if (n > order_) throw std::domain_error("coefficient beyond truncation order");
    if (n < lo_) return kZero;
    return c_[static_cast<size_t>(n - lo_)];
}

void QExpansion::set(long n, const Rational& c) {
    if (n < lo_ || n > order_) throw std::domain_error("exponent outside series window");
    c_[static_cast<size_t>(n - lo_)] = c;
}

long QExpansion::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return lo_ + static_cast<long>(i);
    return order_ + 1;
}

QExpansion QExpansion::truncate(long new_order) const {
    long ord = std::min(order_, new_order);
    QExpansion out(lo_, ord);
    for (long n = lo_; n <= ord; ++n) out.set(n, coeff(n));
    return out;
}

QExpansion operator+(const QExpansion& f, const QExpansion& g) {
    long lo = std::min(f.lo_, g.lo_);
    long ord = std::min(f.order_, g.order_);
    QExpansion out(lo, ord);
    for (long n = lo; n <= ord; ++n) out.set(n, f.coeff(n) + g.coeff(n));
    return out;
}

QExpansion operator-(const QExpansion& f, const QExpansion& g) {
    return f + (-g);
}

QExpansion operator-(const QExpansion& f) {
    QExpansion out(f.lo_, f.order_);
    for (long n = f.lo_; n <= f.order_; ++n) out.set(n, -f.coeff(n));
    return out;
}

QExpansion operator*(const Rational& c, const QExpansion& f) {
    QExpansion out(f.lo_, f.order_);
    for (long n = f.lo_; n <= f.order_; ++n) out.set(n, c * f.coeff(n));
    return out;
}

QExpansion operator*(const QExpansion& f, const QExpansion& g) {
    long vf = f.valuation(), vg = g.valuation();
    // product of windows [vf, Nf] and [vg, Ng] is exact up to min(Nf+vg, Ng+vf)
    long ord = std::min(f.order_ + vg, g.order_ + vf);
    long lo = vf + vg;
    if (lo > ord) lo = ord + 1;  // known-zero window
    QExpansion out(lo, ord);
    for (long i = vf; i <= f.order_; ++i) {
        const Rational& a = f.coeff(i);
        if (a == 0) continue;
        long jmax = std::min(g.order_, ord - i);
        for (long j = vg; j <= jmax; ++j) {
            const Rational& b = g.coeff(j);
            if (b == 0) continue;
            out.set(i + j, out.coeff(i + j) + a * b);
        }
    }
    return out;
}

QExpansion QExpansion::inv() const {
    long v = valuation();
    if (v > order_) throw std::domain_error("inverse of a zero series");
    // write f = c q^v (1 + u); invert the unit part by the standard recurrence
    long M = order_ - v;  // relative order of the unit part
    const Rational& lead = coeff(v);
    std::vector<Rational> b(static_cast<size_t>(M + 1));
    b[0] = 1 / lead;
    for (long n = 1; n <= M; ++n) {
        Rational acc;
        for (long k = 1; k <= n; ++k) {
            const Rational& a = coeff(v + k);
            if (a != 0) acc += a * b[static_cast<size_t>(n - k)];
        }
        b[static_cast<size_t>(n)] = -acc / lead;
    }
    QExpansion out(-v, -v + M);
    for (long n = 0; n <= M; ++n) out.set(-v + n, b[static_cast<size_t>(n)]);
    return out;
}

QExpansion QExpansion::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    if (k == 0) return QExpansion::one(order_);
    QExpansion acc = *this;
    // binary powering; truncation tracking rides along with operator*
    long e = k - 1;
    QExpansion base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

namespace {

// prod_{n>=1} (1 - q^n) to order N via the pentagonal-number expansion
QExpansion euler_product(long N) {
    QExpansion f(0, N);
    f.set(0, 1);
    for (long k = 1; k * (3 * k - 1) / 2 <= N; ++k) {
        Rational s = (k % 2 != 0) ? Rational(-1) : Rational(1);
        long g1 = k * (3 * k - 1) / 2;
        long g2 = k * (3 * k + 1) / 2;
        f.set(g1, s);
        if (g2 <= N) f.set(g2, s);
    }
    return f;
}

}  // namespace

QExpansion eta_quotient(const std::vector<std::pair<long, long>>& factors, long N) {
    if (N < 1) throw std::domain_error("eta quotient needs order >= 1");
    Rational shift24;
    for (auto [d, e] : factors) {
        if (d < 1) throw std::domain_error("eta argument multiplier must be positive");
        shift24 += make_rational(d * e, 24);
    }
    if (!is_integer(shift24))
        throw std::domain_error("eta quotient has non-integral leading exponent");
    long shift = to_long(shift24.get_num());
    QExpansion acc = QExpansion::one(N);
    for (auto [d, e] : factors) {
        if (e == 0) continue;
        QExpansion base = level_raise(euler_product(N / d), d).truncate(N);
        acc = (acc * base.pow(e)).truncate(N);
    }
    QExpansion out(shift + acc.lo(), shift + N);
    for (long n = acc.lo(); n <= acc.order() && n <= N; ++n) out.set(shift + n, acc.coeff(n));
    return out;
}

namespace {

// sigma_r(n) for 1 <= n <= N by divisor sieve
std::vector<Integer> divisor_power_sums(long N, int r) {
    std::vector<Integer> s(static_cast<size_t>(N + 1));
    for (long d = 1; d <= N; ++d) {
        Integer dr(1);
        for (int i = 0; i < r; ++i) dr *= d;
        for (long n = d; n <= N; n += d) s[static_cast<size_t>(n)] += dr;
    }
    return s;
}

QExpansion eisenstein_weight2_level_p(long p, long N) {
    auto sig = divisor_power_sums(N, 1);
    QExpansion f(0, N);
    f.set(0, 1);
    Rational scale = make_rational(24, p - 1);
    for (long n = 1; n <= N; ++n) {
        Integer t = sig[static_cast<size_t>(n)];
        if (n % p == 0) t -= p * sig[static_cast<size_t>(n / p)];
        f.set(n, scale * Rational(t));
    }
    return f;
}

QExpansion eisenstein_cusp0(long p, long N) {
    QExpansion f(1, N);
    for (long d = 1; d <= N; ++d)
        for (long n = d; n <= N; n += d)
            f.set(n, f.coeff(n) + Rational(d * legendre(n / d, p)));
    return f;
}

QExpansion eisenstein_plus(long p, long N) {
    Rational L;  // L(-1, chi_p)
    if (p == 5) L = make_rational(-2, 5);
    else if (p == 13) L = -2;
    else throw std::domain_error("E2plus L-value table covers only p in {5, 13}");
    QExpansion f(0, N);
    f.set(0, 1);
    Rational scale = 2 / L;
    for (long d = 1; d <= N; ++d)
        for (long n = d; n <= N; n += d) {
            long t = legendre(d, p) + legendre(n / d, p);
            if (t != 0) f.set(n, f.coeff(n) + scale * Rational(d * t));
        }
    return f;
}

QExpansion eisenstein_level1(long N, int r, long scale_num) {
    auto sig = divisor_power_sums(N, r);
    QExpansion f(0, N);
    f.set(0, 1);
    for (long n = 1; n <= N; ++n)
        f.set(n, Rational(scale_num) * Rational(sig[static_cast<size_t>(n)]));
    return f;
}

}  // namespace

QExpansion classical_series(Series s, long p, long N) {
    switch (s) {
        case Series::E2p:
            if (!is_odd_prime(p)) throw std::domain_error("E2p needs an odd prime");
            return eisenstein_weight2_level_p(p, N);
        case Series::H2:
            if (!is_odd_prime(p)) throw std::domain_error("H2 needs an odd prime");
            return eisenstein_cusp0(p, N);
        case Series::E2plus:
            return eisenstein_plus(p, N);
        case Series::E4:
            return eisenstein_level1(N, 3, 240);
        case Series::E6:
            return eisenstein_level1(N, 5, -504);
        case Series::Delta:
            return eta_quotient({{1, 24}}, std::max<long>(1, N - 1));
        case Series::J: {
            QExpansion e4 = classical_series(Series::E4, 0, N + 2);
            QExpansion delta = classical_series(Series::Delta, 0, N + 3);
            QExpansion j = (e4 * e4 * e4) * delta.inv();
            if (j.coeff(0) != 744) throw std::logic_error("j-invariant constant term is not 744");
            return j.truncate(N);
        }
        case Series::E0: {
            // E2plus(z) * (E4 E6 / Delta)(pz); leading exponent -p
            QExpansion eplus = eisenstein_plus(p, N + p);
            long M = (N + p) / p + 2;
            QExpansion e4 = classical_series(Series::E4, 0, M + 2);
            QExpansion e6 = classical_series(Series::E6, 0, M + 2);
            QExpansion delta = classical_series(Series::Delta, 0, M + 3);
            QExpansion hauptish = (e4 * e6) * delta.inv();  // q^-1 + ...
            QExpansion raised = level_raise(hauptish.truncate(M), p);
            return (eplus * raised).truncate(N);
        }
    }
    throw std::logic_error("unknown classical series");
}

QExpansion level_raise(const QExpansion& f, long p) {
    if (p < 1) throw std::domain_error("level raise needs a positive multiplier");
    // exponents strictly between p*order and p*(order+1) are known zeros
    QExpansion out(p * f.lo(), p * f.order() + p - 1);
    for (long n = f.lo(); n <= f.order(); ++n) {
        const Rational& c = f.coeff(n);
        if (c != 0) out.set(p * n, c);
    }
    return out;
}

}  // namespace hilmod
