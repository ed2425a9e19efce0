#pragma once

#include <string>
#include <vector>

#include "hilmod/plusforms.hpp"

namespace hilmod {

struct SalieSum {
    double direct;            // sum over d of chi_p(d) e((nd - m a)/p), ad = 1 mod p
    double closed;            // chi_p(-m) sqrt(p) sum over v^2 = -mn of e(2v/p); Gauss form if p | m
    std::vector<long> roots;  // the v with v^2 = -mn (mod p), when p does not divide m
};

/// Both evaluations of the twisted exponential sum; they are cross-checked to
/// 1e-10 and a disagreement is an internal error.
SalieSum salie_sum(long n, long m, long p);

/// Modified Bessel functions of the first kind; power series below x = 20,
/// asymptotic expansion above, relative error ~ 1e-12.
double bessel_i0(double x);
double bessel_i1(double x);
double bessel_i2(double x);

struct AsymReport {
    long p, m, n;
    double main_term = 0;
    double salie_value = 0;
    bool has_exact = false;
    Rational exact;
    double rel_error = 0;
};

/// Leading-term asymptotic of a_m(n) from the circle-method formula.
AsymReport main_term(long p, long m, long n);

/// Main term against the exact coefficient read from f.
AsymReport compare_exact(long p, long m, long n, const PlusForm& f);

void save_asym_csv(const std::vector<AsymReport>& reports, const std::string& path);

}  // namespace hilmod
