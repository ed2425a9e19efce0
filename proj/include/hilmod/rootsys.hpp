#pragma once

#include <array>
#include <vector>

#include "hilmod/qfield.hpp"

namespace hilmod {

/// Root-space vector nu = xi / sqrt(p).  Conjugating sqrt(p) flips its sign,
/// so conj(nu) = -conj(xi)/sqrt(p); all the reflection formulas below are
/// stated under this convention.
class RootF {
public:
    explicit RootF(QuadElem xi) : xi_(std::move(xi)) {}

    const QuadElem& xi() const { return xi_; }
    long p() const { return xi_.p(); }

    RootF conj() const { return RootF(-xi_.conj()); }
    Rational trace() const { return 2 * xi_.c1(); }  // nu + conj(nu)
    bool is_totally_positive() const {
        return xi_.is_positive() && (-xi_.conj()).is_positive();
    }
    RootF scaled(const QuadElem& u) const { return RootF(xi_ * u); }

    double embed1() const;  // nu under sqrt(p) > 0
    double embed2() const;  // conjugate embedding

    friend RootF operator+(const RootF& a, const RootF& b) { return RootF(a.xi_ + b.xi_); }
    friend RootF operator-(const RootF& a, const RootF& b) { return RootF(a.xi_ - b.xi_); }
    friend RootF operator-(const RootF& a) { return RootF(-a.xi_); }
    friend bool operator==(const RootF& a, const RootF& b) { return a.xi_ == b.xi_; }
    friend bool operator!=(const RootF& a, const RootF& b) { return !(a == b); }

private:
    QuadElem xi_;
};

/// <x, y> = -p tr(x * conj(y)) = tr(xi_x * conj(xi_y)); exact.
Rational bilinear_form(const RootF& x, const RootF& y);

/// Cartan data of H(a_k) realized inside Q(sqrt p)/sqrt(p).
struct RootDatum {
    long p;
    long k;       // Pell solution index
    Integer a, s; // a_k, s_k
    QuadElem eta; // eta_k = (a_k + s_k sqrt p)/2

    RootF simple1() const { return RootF(eta); }           // psi(alpha_1)
    RootF simple2() const { return RootF(-quad_rational(p, 1)); }  // psi(alpha_2)
};

RootDatum make_root_datum(long p, long k = 1);

/// Exact alpha-coordinates (c1, c2) with nu = c1 psi(alpha_1) + c2 psi(alpha_2).
std::pair<Rational, Rational> alpha_coords(const RootDatum& d, const RootF& x);

enum class Reflection { R1, R2 };

/// r1 nu = eta^2 conj(nu), r2 nu = conj(nu); the word is applied left to right.
RootF weyl_apply(const std::vector<Reflection>& word, const RootF& x, const RootDatum& d);

/// {eta^j / sqrt p : 0 < j <= j_max} followed by {-conj(eta)^j / sqrt p : 0 <= j <= j_max}.
std::vector<RootF> real_roots(const RootDatum& d, long j_max);

/// Integer pairs (m, n) generating the norm -2k imaginary roots.
std::vector<std::pair<long, long>> omega_set(const RootDatum& d, long k);

struct ImaginaryRoot {
    RootF root;
    int family;  // 1..4, the eta-twisted family that produced it
    long j;
    long m, n;
};

/// All distinct norm -2k positive imaginary roots with twist index j <= j_max.
std::vector<ImaginaryRoot> imaginary_roots(const RootDatum& d, long k, long j_max);

/// Membership of x in Delta(H(a_k)): norm screening, then coordinate and
/// orbit lookups against the real and imaginary families.
bool is_root(const RootDatum& d, const RootF& x);

struct EmbeddingPair {
    RootF beta1, beta2;
    Integer a_l;                           // expected off-diagonal is -a_l
    std::array<std::array<Rational, 2>, 2> gram;
    bool difference_rejected;              // beta1 - beta2 is not a root
};

/// The H(a_l) simple-root pair inside H(a_k) for k | l, with its Gram matrix.
EmbeddingPair embedding_pair(long p, long k, long l);

/// Root multiplicities of H(a) from the Cartan data alone, by the standard
/// recurrence over the root lattice.  Heights are capped; exceeding the cap
/// is an error rather than a silent truncation.
class PetersonTable {
public:
    PetersonTable(Integer a, long max_height);

    Integer mult(long c1, long c2) const;
    long max_height() const { return max_height_; }

    static constexpr long kHeightCap = 200;

private:
    Integer a_;
    long max_height_;
    std::vector<Rational> cbeta_;
    std::vector<Integer> mult_;
    size_t idx(long c1, long c2) const;
};

/// Multiplicity of c1 alpha_1 + c2 alpha_2 in H(a_k); 0 for non-roots.
Integer peterson_mult(const RootDatum& d, long c1, long c2);

}  // namespace hilmod
