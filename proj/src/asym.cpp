#include "hilmod/asym.hpp"

#include <cmath>
#include <complex>
#include <fstream>

namespace hilmod {

SalieSum salie_sum(long n, long m, long p) {
    if (!is_odd_prime(p)) throw std::domain_error("Salie sum needs an odd prime modulus");
    SalieSum out{0.0, 0.0, {}};
    // direct form
    std::complex<double> direct = 0;
    for (long d = 1; d < p; ++d) {
        long a = 0;  // a d = 1 (mod p)
        for (long c = 1; c < p; ++c)
            if ((c * d) % p == 1) { a = c; break; }
        double arg = 2.0 * M_PI * static_cast<double>(((n % p) * d - (m % p) * a) % p) / p;
        direct += static_cast<double>(legendre(d, p)) * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    if (std::abs(direct.imag()) > 1e-9)
        throw std::runtime_error("Salie sum came out non-real");
    out.direct = direct.real();
    // closed form
    double sqp = std::sqrt(static_cast<double>(p));
    if (m % p == 0) {
        out.closed = (n % p == 0) ? 0.0 : legendre(n, p) * sqp;
    } else {
        long target = ((-m % p) * (n % p)) % p;
        target = ((target % p) + p) % p;
        double acc = 0;
        for (long v = 0; v < p; ++v)
            if ((v * v) % p == target) {
                out.roots.push_back(v);
                acc += std::cos(4.0 * M_PI * v / p);
            }
        out.closed = legendre(-m, p) * sqp * acc;
    }
    if (std::abs(out.direct - out.closed) > 1e-10 * std::max(1.0, std::abs(out.closed)))
        throw std::runtime_error("Salie sum direct and closed forms disagree");
    return out;
}

namespace {

// asymptotic tail e^x/sqrt(2 pi x) sum_k (-1)^k a_k(nu)/x^k with optimal stop
double bessel_asymptotic(double x, int nu) {
    double mu = 4.0 * nu * nu;
    double sum = 1.0, term = 1.0, prev = HUGE_VAL;
    for (int k = 1; k <= 40; ++k) {
        double factor = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        term *= -factor;
        if (std::abs(term) >= prev) break;  // divergent tail reached
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-18 * std::abs(sum)) break;
    }
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

double bessel_series(double x, int nu) {
    double half = x / 2.0;
    double term = 1.0;
    for (int i = 1; i <= nu; ++i) term *= half / i;
    double sum = term;
    for (int k = 1; k <= 400; ++k) {
        term *= half * half / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_i(double x, int nu) {
    if (x < 0) throw std::domain_error("modified Bessel argument must be nonnegative");
    if (x == 0) return nu == 0 ? 1.0 : 0.0;
    return x < 20.0 ? bessel_series(x, nu) : bessel_asymptotic(x, nu);
}

}  // namespace

double bessel_i0(double x) { return bessel_i(x, 0); }
double bessel_i1(double x) { return bessel_i(x, 1); }
double bessel_i2(double x) { return bessel_i(x, 2); }

AsymReport main_term(long p, long m, long n) {
    if (!is_odd_prime(p)) throw std::domain_error("main term needs an odd prime");
    if (n < 1 || m < 1) throw std::domain_error("main term needs positive m, n");
    if (legendre(m, p) == -1)
        throw std::domain_error("no form at index m with chi_p(m) = -1");
    AsymReport rep;
    rep.p = p;
    rep.m = m;
    rep.n = n;
    double sqp = std::sqrt(static_cast<double>(p));
    double bess = bessel_i1(4.0 * M_PI * std::sqrt(static_cast<double>(m) * n) / p);
    double amp = std::sqrt(static_cast<double>(m) / n) * bess;
    SalieSum sal = salie_sum(n, m, p);
    rep.salie_value = sal.closed;
    if (m % p == 0) {
        rep.main_term = M_PI / sqp * amp * (legendre(n, p) + 1);
    } else {
        double inner = 0;  // sum over v^2 = -mn (mod p) of e(2v/p), real part
        for (long v : sal.roots) inner += std::cos(4.0 * M_PI * v / p);
        rep.main_term = 2.0 * M_PI / sqp * amp * inner;
    }
    return rep;
}

AsymReport compare_exact(long p, long m, long n, const PlusForm& f) {
    if (f.p() != p || f.m() != m)
        throw std::domain_error("form does not match the requested (p, m)");
    AsymReport rep = main_term(p, m, n);
    rep.has_exact = true;
    rep.exact = f.coeff(n);
    if (rep.exact != 0)
        rep.rel_error = std::abs(rep.main_term - rep.exact.get_d()) / std::abs(rep.exact.get_d());
    else
        rep.rel_error = std::abs(rep.main_term);  // flagged, not an error: error-term regime
    return rep;
}

void save_asym_csv(const std::vector<AsymReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write report file: " + path);
    out << "p,m,n,main_term,exact_num,exact_den,rel_error\n";
    char buf[64];
    for (const AsymReport& r : reports) {
        std::snprintf(buf, sizeof buf, "%.15g", r.main_term);
        out << r.p << "," << r.m << "," << r.n << "," << buf << ",";
        if (r.has_exact)
            out << r.exact.get_num().get_str() << "," << r.exact.get_den().get_str();
        else
            out << ",";
        std::snprintf(buf, sizeof buf, "%.15g", r.rel_error);
        out << "," << (r.has_exact ? buf : "") << "\n";
    }
}

}  // namespace hilmod
