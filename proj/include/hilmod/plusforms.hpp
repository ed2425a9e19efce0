#pragma once

#include <map>
#include <string>
#include <vector>

#include "hilmod/qseries.hpp"

namespace hilmod {

/// Weakly holomorphic weight-0 form on Gamma0(p) with character chi_p whose
/// principal part is q^-m / s(m) and whose coefficients vanish at exponents n
/// with chi_p(n) = -1.
class PlusForm {
public:
    PlusForm(long p, long m, long order, std::map<long, Rational> coeffs);

    long p() const { return p_; }
    long m() const { return m_; }
    long order() const { return order_; }
    int s_m() const { return s_m_; }

    /// a_m(n); exact zero for absent exponents, throws beyond order().
    const Rational& coeff(long n) const;
    const std::map<long, Rational>& coeffs() const { return coeffs_; }

private:
    long p_, m_, order_;
    int s_m_;
    std::map<long, Rational> coeffs_;
};

struct PlusFormReport {
    bool principal_part_ok = true;
    std::vector<long> plus_support_violations;  // exponents with chi_p(n) = -1 but a(n) != 0
    std::vector<long> integrality_violations;   // exponents with s(n) a(n) not integral
    bool support_clean() const {
        return principal_part_ok && plus_support_violations.empty();
    }
    bool clean() const { return support_clean() && integrality_violations.empty(); }
};

PlusFormReport verify_plusform(const PlusForm& f);

/// f_1 = E2p / H2; only p in {5, 13} admit this construction.
PlusForm build_f1(long p, long order);

/// Monomial in the generating forms: f1^f1_pow * Htilde^ht_pow * j(pz)^jp_pow.
struct PlusCandidate {
    int f1_pow;
    int ht_pow;
    int jp_pow;
    long pole_order(long p, long htilde_pole) const {
        return f1_pow + ht_pow * htilde_pole + jp_pow * p;
    }
};

/// Builds and caches the family f_m for one prime at a fixed working order.
/// Construction routes: m < p by exact triangular reduction over candidate
/// monomials, m = p from E0/2, m > p from j(pz) f_{m-p}; every result is
/// checked against the PlusForm invariants before it is cached.
class PlusFormFactory {
public:
    PlusFormFactory(long p, long order);

    long p() const { return p_; }
    long order() const { return order_; }

    const PlusForm& get(long m);

    /// Triangular reduction over an explicit candidate list (one candidate per
    /// pole depth m, m-1, ..., 1).  Used to cross-check uniqueness.
    PlusForm build_from_candidates(long m, const std::vector<PlusCandidate>& candidates);

    long htilde_pole() const { return htilde_pole_; }

private:
    QExpansion candidate_series(const PlusCandidate& c, long target_order);
    const QExpansion& series_for(long m, long need_order);
    QExpansion build_series_at(long m, long need_order);

    long p_;
    long order_;
    long htilde_pole_;
    QExpansion f1_, htilde_;
    QExpansion jpz_;  // j(pz), built on demand
    std::map<long, QExpansion> series_cache_;
    std::map<long, PlusForm> cache_;
};

PlusForm build_fm(long p, long m, long order);

/// Coefficient fixture I/O.  JSON shape:
///   {"p": int, "m": int, "coeffs": [[n, num, den], ...]}
/// with n ascending from -m; num/den may be integers or decimal strings.
PlusForm load_fixture(const std::string& path);
void save_fixture_json(const PlusForm& f, const std::string& path);
void save_fixture_csv(const PlusForm& f, const std::string& path);

}  // namespace hilmod
