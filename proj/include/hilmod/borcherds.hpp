#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "hilmod/plusforms.hpp"
#include "hilmod/rootsys.hpp"

namespace hilmod {

/// Index nu = (u + v(1+sqrt p)/2) / (D sqrt p) in the scaled inverse
/// different (1/D) d^-1.  D is fixed per series.
struct LatticeIndex {
    long u = 0;
    long v = 0;
    friend bool operator<(const LatticeIndex& a, const LatticeIndex& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
    friend bool operator==(const LatticeIndex& a, const LatticeIndex& b) {
        return a.u == b.u && a.v == b.v;
    }
    friend LatticeIndex operator+(const LatticeIndex& a, const LatticeIndex& b) {
        return {a.u + b.u, a.v + b.v};
    }
    friend LatticeIndex operator-(const LatticeIndex& a, const LatticeIndex& b) {
        return {a.u - b.u, a.v - b.v};
    }
};

/// Truncated Fourier expansion sum_mu b_mu e(-(mu, z)) of a Hilbert modular
/// form, graded by lambda(nu) = (tr nu + tr(nu conj(eta_1)))/s_1, the sum of
/// alpha-coordinates.  Coefficients are exact for lambda(mu - offset) <= H.
class FourierSeries2 {
public:
    FourierSeries2(long p, long D, long H, long pole_index, LatticeIndex offset);

    long p() const { return p_; }
    long D() const { return D_; }
    long H() const { return H_; }
    long pole_index() const { return m_; }
    const LatticeIndex& offset() const { return offset_; }
    const RootDatum& datum() const { return datum_; }
    const std::map<LatticeIndex, Rational>& terms() const { return terms_; }

    QuadElem xi_of(const LatticeIndex& idx) const;
    RootF root_of(const LatticeIndex& idx) const { return RootF(xi_of(idx)); }
    LatticeIndex index_of(const QuadElem& xi) const;

    Rational lambda_abs(const LatticeIndex& idx) const;
    Rational lambda_rel(const LatticeIndex& idx) const;
    bool in_region(const LatticeIndex& idx) const;

    /// Exact coefficient for indices inside the region (0 when absent);
    /// throws outside, where the expansion carries no information.
    Rational coeff(const LatticeIndex& idx) const;

    void set_term(const LatticeIndex& idx, Rational b);

private:
    long p_, D_, H_, m_;
    LatticeIndex offset_;
    RootDatum datum_;
    std::map<LatticeIndex, Rational> terms_;
};

/// Weyl vector m eps0 / (tr(eps0) sqrt p) as the xi numerator; requires every
/// prime factor q of m to satisfy (q/p) != 1.
QuadElem weyl_vector(long p, long m);

/// Product exponent at nu: s(p nu conj nu) a(p nu conj nu) on the totally
/// positive cone, 1 on the positive real roots.
long long mult_exponent(long p, const PlusForm& f1, const RootF& nu);

/// Truncated expansion of Phi_1 = e(-(rho,z)) prod (1 - e(-(nu,z)))^mult.
FourierSeries2 expand_phi1(long p, const PlusForm& f1, long H);

/// Largest p nu conj(nu) over the factor cone at height H: the form must
/// supply coefficients through this order before expansion can run.
long phi1_required_order(long p, long H);

enum class PsiVariant { NonRepresentable, Square };

/// Borcherds lifts Psi_m for the two product shapes: no Weyl vector when some
/// prime factor of m is inert to an odd power, Weyl vector plus the scaled
/// real-root family for perfect-square index.
FourierSeries2 expand_psi_m(long p, const PlusForm& fm, PsiVariant variant, long H);

struct AntisymmetryViolation {
    int reflection;  // 1 or 2
    LatticeIndex mu;
    Rational b_mu, b_wmu;
};

struct AntisymmetryReport {
    std::vector<AntisymmetryViolation> violations;
    long pairs_checked = 0;
    bool clean() const { return violations.empty(); }
};

/// b_{w mu} = det(w) b_mu for both simple reflections, over every pair of
/// indices that lie inside the truncation region.
AntisymmetryReport check_antisymmetry(const FourierSeries2& s);

struct SupportReport {
    std::vector<LatticeIndex> violations;
    bool clean() const { return violations.empty(); }
};

/// Every nonzero coefficient must sit at a totally positive index of
/// positive norm.
SupportReport check_support_positivity(const FourierSeries2& s);

struct SumSide {
    /// m(nu) = -b_{rho+nu} keyed by nu in d^-1 coordinates (D = 1); only
    /// nonzero entries, nu = 0 (with m(0) = -1) excluded.
    std::map<LatticeIndex, Integer> mult;
    long orbit_count = 0;
};

/// Reduces every nonzero coefficient into the fundamental chamber and reads
/// off the simple imaginary root data; throws if some coefficient fails to
/// lie in the W-orbit of rho + (M cap fundamental chamber).
SumSide extract_sum_side(const FourierSeries2& s);

/// Truncated sum evaluated at (z1, z2); the point is Weyl-reduced into the
/// chamber 1 < y1/y2 < eta_1^2 first and the determinant sign applied.
std::complex<double> evaluate_series(const FourierSeries2& s, std::complex<double> z1,
                                     std::complex<double> z2);

/// Truncated product form of Phi_1 at (z1, z2), same reduction convention.
std::complex<double> evaluate_phi1_product(long p, const PlusForm& f1, long H,
                                           std::complex<double> z1, std::complex<double> z2);

void save_series_json(const FourierSeries2& s, const std::string& path);
void save_series_csv(const FourierSeries2& s, const std::string& path);
FourierSeries2 load_series_json(const std::string& path);

}  // namespace hilmod
