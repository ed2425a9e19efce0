#include "hilmod/borcherds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace hilmod {

FourierSeries2::FourierSeries2(long p, long D, long H, long pole_index, LatticeIndex offset)
    : p_(p), D_(D), H_(H), m_(pole_index), offset_(offset), datum_(make_root_datum(p, 1)) {
    if (D_ < 1) throw std::domain_error("index denominator must be positive");
    if (H_ < 1) throw std::domain_error("truncation height must be >= 1");
}

QuadElem FourierSeries2::xi_of(const LatticeIndex& idx) const {
    return QuadElem::from_coords(p_, make_rational(idx.u, D_), make_rational(idx.v, D_));
}

LatticeIndex FourierSeries2::index_of(const QuadElem& xi) const {
    Rational u = D_ * xi.coord_u();
    Rational v = D_ * xi.coord_v();
    if (!is_integer(u) || !is_integer(v))
        throw std::domain_error("field element does not lie on the index lattice");
    return {to_long(u.get_num()), to_long(v.get_num())};
}

Rational FourierSeries2::lambda_abs(const LatticeIndex& idx) const {
    // (tr nu + tr(nu conj eta_1))/s_1 = (v (a - s + 2) - 2 s u) / (2 s D)
    Rational num = Rational(idx.v) * Rational(datum_.a - datum_.s + 2) -
                   2 * Rational(datum_.s) * Rational(idx.u);
    return num / (2 * Rational(datum_.s) * D_);
}

Rational FourierSeries2::lambda_rel(const LatticeIndex& idx) const {
    return lambda_abs(idx) - lambda_abs(offset_);
}

bool FourierSeries2::in_region(const LatticeIndex& idx) const {
    Rational lam = lambda_rel(idx);
    return lam >= 0 && lam <= H_;
}

Rational FourierSeries2::coeff(const LatticeIndex& idx) const {
    if (!in_region(idx))
        throw std::domain_error("coefficient outside the truncation region");
    auto it = terms_.find(idx);
    return it == terms_.end() ? Rational(0) : it->second;
}

void FourierSeries2::set_term(const LatticeIndex& idx, Rational b) {
    if (b == 0) terms_.erase(idx);
    else terms_[idx] = std::move(b);
}

namespace {

std::vector<long> prime_factors(long m) {
    std::vector<long> out;
    for (long q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            out.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) out.push_back(m);
    return out;
}

bool has_inert_odd_power(long m, long p) {
    for (long q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            int e = 0;
            while (m % q == 0) { m /= q; ++e; }
            if (e % 2 == 1 && legendre(q, p) == -1) return true;
        }
    if (m > 1 && legendre(m, p) == -1) return true;
    return false;
}

}  // namespace

QuadElem weyl_vector(long p, long m) {
    if (m < 1) throw std::domain_error("Weyl vector index must be positive");
    for (long q : prime_factors(m))
        if (legendre(q, p) == 1)
            throw std::domain_error("Weyl vector needs every prime factor of m non-split in p");
    RootDatum d = make_root_datum(p, 1);
    // m (eta_1 - 1)/(a_1 - 2) = m eps0 / tr(eps0) when p = 1 mod 4
    QuadElem num = d.eta - quad_rational(p, 1);
    return make_rational(Integer(m), d.a - 2) * num;
}

namespace {

Rational lambda_of_xi(const RootDatum& d, const QuadElem& xi) {
    Rational num = xi.coord_v() * Rational(d.a - d.s + 2) - 2 * Rational(d.s) * xi.coord_u();
    return num / (2 * Rational(d.s));
}

bool is_positive_real_root(const RootDatum& d, const RootF& nu) {
    auto [c1, c2] = alpha_coords(d, nu);
    if (!is_integer(c1) || !is_integer(c2) || c1 < 0 || c2 < 0) return false;
    if (bilinear_form(nu, nu) != 2) return false;
    return is_root(d, nu);
}

}  // namespace

long long mult_exponent(long p, const PlusForm& f1, const RootF& nu) {
    if (nu.p() != p) throw std::domain_error("root field does not match p");
    if (!nu.xi().is_integral())
        throw std::domain_error("exponent index must lie in the inverse different");
    RootDatum d = make_root_datum(p, 1);
    if (nu.is_totally_positive()) {
        Rational n_rat = -nu.xi().norm();  // p nu conj(nu)
        if (!is_integer(n_rat) || n_rat <= 0)
            throw std::logic_error("totally positive lattice vector with bad norm");
        long n = to_long(n_rat.get_num());
        if (n > f1.order())
            throw std::runtime_error("insufficient form depth: need coefficient at n=" +
                                     std::to_string(n));
        Rational e = plus_space_s(n, p) * f1.coeff(n);
        if (!is_integer(e))
            throw std::runtime_error("product exponent s(n)a(n) not integral at n=" +
                                     std::to_string(n));
        if (!e.get_num().fits_slong_p())
            throw std::overflow_error("product exponent too large");
        return e.get_num().get_si();
    }
    if (is_positive_real_root(d, nu)) return 1;
    throw std::domain_error("index is neither totally positive nor a positive real root");
}

namespace {

struct ProductFactor {
    QuadElem xi;     // factor index nu = xi / sqrt p, xi integral
    Rational lam;    // lambda(nu) > 0
    long long e;     // exponent
};

// all totally positive nu in d^-1 with lambda(nu) <= H, exponents read from
// the form; errors out with the required order when the form is too shallow
std::vector<ProductFactor> totally_positive_factors(const RootDatum& d, const PlusForm& fm,
                                                    long H) {
    struct Raw { QuadElem xi; Rational lam; long n; };
    std::vector<Raw> raw;
    long max_n = 0;
    long s = to_long(d.s);
    for (long t = 1; t <= s * H; ++t) {
        Rational c1 = make_rational(t, s);
        Rational base = c1 * Rational(d.a + d.s) / 2;  // c2 lives on base + Z
        Rational c2 = base - Rational(rational_floor(base));
        if (c2 == 0) c2 = 1;
        for (; c1 + c2 <= H; c2 += 1) {
            QuadElem xi = c1 * d.eta - quad_rational(d.p, c2);
            if (!xi.is_integral())
                throw std::logic_error("cone enumeration left the lattice");
            RootF nu{xi};
            if (!nu.is_totally_positive()) continue;
            Rational n_rat = -xi.norm();
            if (!is_integer(n_rat) || n_rat <= 0)
                throw std::logic_error("totally positive vector with non-positive norm");
            long n = to_long(n_rat.get_num());
            max_n = std::max(max_n, n);
            raw.push_back({xi, c1 + c2, n});
        }
    }
    if (max_n > fm.order())
        throw std::runtime_error("form too shallow for height " + std::to_string(H) +
                                 ": coefficients required through n=" + std::to_string(max_n));
    std::vector<ProductFactor> out;
    out.reserve(raw.size());
    for (auto& r : raw) {
        Rational e = plus_space_s(r.n, d.p) * fm.coeff(r.n);
        if (!is_integer(e))
            throw std::runtime_error("product exponent s(n)a(n) not integral at n=" +
                                     std::to_string(r.n));
        if (e == 0) continue;
        if (!e.get_num().fits_slong_p()) throw std::overflow_error("product exponent too large");
        out.push_back({r.xi, r.lam, e.get_num().get_si()});
    }
    return out;
}

// positive real roots scaled by m, exponent 1, lambda <= H
void append_real_root_factors(const RootDatum& d, long m, long H,
                              std::vector<ProductFactor>& factors) {
    QuadElem pw = d.eta;
    for (;;) {
        QuadElem xi = Rational(m) * pw;
        Rational lam = lambda_of_xi(d, xi);
        if (lam > H) break;
        factors.push_back({xi, lam, 1});
        pw = pw * d.eta;
    }
    QuadElem pwbar = quad_rational(d.p, 1);
    for (;;) {
        QuadElem xi = Rational(-m) * pwbar;
        Rational lam = lambda_of_xi(d, xi);
        if (lam > H) break;
        factors.push_back({xi, lam, 1});
        pwbar = pwbar * d.eta.conj();
    }
}

long series_denominator(long p) {
    QuadElem rho = weyl_vector(p, 1);
    Integer du = rho.coord_u().get_den();
    Integer dv = rho.coord_v().get_den();
    Integer D;
    mpz_lcm(D.get_mpz_t(), du.get_mpz_t(), dv.get_mpz_t());
    return to_long(D);
}

// binomial coefficients of (1 - X)^e up to X^tmax; integral in both signs
std::vector<Integer> factor_poly(long long e, long tmax) {
    std::vector<Integer> c(static_cast<size_t>(tmax + 1));
    c[0] = 1;
    if (e > 0) {
        long top = static_cast<long>(std::min<long long>(e, tmax));
        Integer b = 1;
        for (long t = 1; t <= top; ++t) {
            b = b * Integer(static_cast<long>(e - t + 1)) / t;  // exact at every step
            c[static_cast<size_t>(t)] = (t % 2 == 0) ? b : -b;
        }
    } else {
        Integer b = 1;
        for (long t = 1; t <= tmax; ++t) {
            b = b * Integer(static_cast<long>(-e + t - 1)) / t;
            c[static_cast<size_t>(t)] = b;
        }
    }
    return c;
}

FourierSeries2 expand_product(long p, long pole_index, const LatticeIndex& offset, long D,
                              std::vector<ProductFactor> factors, long H) {
    FourierSeries2 out(p, D, H, pole_index, offset);
    out.set_term(offset, 1);
    std::sort(factors.begin(), factors.end(), [](const ProductFactor& a, const ProductFactor& b) {
        if (a.lam != b.lam) return a.lam < b.lam;
        if (a.xi.coord_u() != b.xi.coord_u()) return a.xi.coord_u() < b.xi.coord_u();
        return a.xi.coord_v() < b.xi.coord_v();
    });
    std::map<LatticeIndex, Rational> terms(out.terms());
    for (const ProductFactor& f : factors) {
        LatticeIndex step{D * to_long(Rational(f.xi.coord_u()).get_num()),
                          D * to_long(Rational(f.xi.coord_v()).get_num())};
        long tmax = to_long(rational_floor(Rational(H) / f.lam));
        if (tmax < 1) continue;
        std::vector<Integer> poly = factor_poly(f.e, tmax);
        std::map<LatticeIndex, Rational> next;
        for (const auto& [idx, b] : terms) {
            Rational budget = Rational(H) - out.lambda_rel(idx);
            long tcap = to_long(rational_floor(budget / f.lam));
            LatticeIndex at = idx;
            for (long t = 0; t <= std::min(tmax, tcap); ++t) {
                if (poly[static_cast<size_t>(t)] != 0) {
                    Rational& slot = next[at];
                    slot += b * Rational(poly[static_cast<size_t>(t)]);
                }
                at = at + step;
            }
        }
        terms.swap(next);
    }
    for (auto& [idx, b] : terms)
        if (b != 0) out.set_term(idx, b);
    return out;
}

}  // namespace

long phi1_required_order(long p, long H) {
    RootDatum d = make_root_datum(p, 1);
    long s = to_long(d.s);
    long max_n = 1;
    for (long t = 1; t <= s * H; ++t) {
        Rational c1 = make_rational(t, s);
        Rational base = c1 * Rational(d.a + d.s) / 2;
        Rational c2 = base - Rational(rational_floor(base));
        if (c2 == 0) c2 = 1;
        for (; c1 + c2 <= H; c2 += 1) {
            QuadElem xi = c1 * d.eta - quad_rational(d.p, c2);
            RootF nu{xi};
            if (!nu.is_totally_positive()) continue;
            max_n = std::max(max_n, to_long(Rational(-xi.norm()).get_num()));
        }
    }
    return max_n;
}

FourierSeries2 expand_phi1(long p, const PlusForm& f1, long H) {
    if (f1.p() != p) throw std::domain_error("form prime does not match p");
    if (f1.m() != 1) throw std::domain_error("Phi_1 expansion needs the index-1 form");
    RootDatum d = make_root_datum(p, 1);
    long D = series_denominator(p);
    QuadElem rho = weyl_vector(p, 1);
    std::vector<ProductFactor> factors = totally_positive_factors(d, f1, H);
    append_real_root_factors(d, 1, H, factors);
    FourierSeries2 probe(p, D, H, 1, {0, 0});
    return expand_product(p, 1, probe.index_of(rho), D, std::move(factors), H);
}

FourierSeries2 expand_psi_m(long p, const PlusForm& fm, PsiVariant variant, long H) {
    if (fm.p() != p) throw std::domain_error("form prime does not match p");
    RootDatum d = make_root_datum(p, 1);
    long D = series_denominator(p);
    if (variant == PsiVariant::NonRepresentable) {
        if (!has_inert_odd_power(fm.m(), p))
            throw std::domain_error(
                "non-representable variant needs an inert prime factor to an odd power");
        std::vector<ProductFactor> factors = totally_positive_factors(d, fm, H);
        return expand_product(p, fm.m(), {0, 0}, D, std::move(factors), H);
    }
    // square variant: index must be m^2 with every prime factor non-split
    long msq = fm.m();
    long root = std::lround(std::sqrt(static_cast<double>(msq)));
    if (root * root != msq)
        throw std::domain_error("square variant needs a perfect-square index");
    for (long q : prime_factors(root))
        if (legendre(q, p) == 1)
            throw std::domain_error("square variant needs every prime factor non-split in p");
    QuadElem rho_m = weyl_vector(p, root);
    std::vector<ProductFactor> factors = totally_positive_factors(d, fm, H);
    append_real_root_factors(d, root, H, factors);
    FourierSeries2 probe(p, D, H, fm.m(), {0, 0});
    return expand_product(p, fm.m(), probe.index_of(rho_m), D, std::move(factors), H);
}

namespace {

LatticeIndex apply_reflection(const FourierSeries2& s, int which, const LatticeIndex& idx) {
    QuadElem xi = s.xi_of(idx);
    QuadElem image = (which == 1) ? -((s.datum().eta * s.datum().eta) * xi.conj()) : -xi.conj();
    return s.index_of(image);
}

}  // namespace

AntisymmetryReport check_antisymmetry(const FourierSeries2& s) {
    AntisymmetryReport rep;
    for (int w = 1; w <= 2; ++w) {
        for (const auto& [idx, b] : s.terms()) {
            LatticeIndex widx = apply_reflection(s, w, idx);
            if (!s.in_region(widx)) continue;
            ++rep.pairs_checked;
            Rational expected = -b;  // det(r_i) = -1
            if (s.coeff(widx) != expected)
                rep.violations.push_back({w, idx, b, s.coeff(widx)});
        }
    }
    return rep;
}

SupportReport check_support_positivity(const FourierSeries2& s) {
    SupportReport rep;
    for (const auto& [idx, b] : s.terms()) {
        if (b == 0) continue;
        RootF nu = s.root_of(idx);
        if (!nu.is_totally_positive() || nu.xi().norm() >= 0) rep.violations.push_back(idx);
    }
    return rep;
}

SumSide extract_sum_side(const FourierSeries2& s) {
    SumSide out;
    const RootDatum& d = s.datum();
    RootF a1 = d.simple1(), a2 = d.simple2();
    for (const auto& [start, b_start] : s.terms()) {
        LatticeIndex cur = start;
        Rational b = b_start;
        long guard = 0;
        for (;;) {
            if (++guard > 100000)
                throw std::logic_error("chamber reduction failed to terminate");
            RootF nu = s.root_of(cur);
            Rational p1 = bilinear_form(nu, a1);
            Rational p2 = bilinear_form(nu, a2);
            if (p1 <= 0 && p2 <= 0) {
                if ((p1 == 0 || p2 == 0))
                    throw std::runtime_error(
                        "nonzero coefficient on a reflection wall contradicts the expansion");
                break;
            }
            LatticeIndex next = apply_reflection(s, p1 > 0 ? 1 : 2, cur);
            if (!s.in_region(next))
                throw std::logic_error("chamber walk left the truncation region");
            Rational b_next = s.coeff(next);
            if (b_next != -b)
                throw std::runtime_error("orbit coefficients violate antisymmetry");
            cur = next;
            b = b_next;
        }
        ++out.orbit_count;
        if (cur == s.offset()) {
            if (b != 1)
                throw std::runtime_error("leading orbit coefficient is not 1");
            continue;
        }
        LatticeIndex nu_idx = cur - s.offset();
        if (nu_idx.u % s.D() != 0 || nu_idx.v % s.D() != 0)
            throw std::runtime_error("reduced index does not lie on rho + d^-1");
        RootF nu = s.root_of(nu_idx);
        if (bilinear_form(nu, a1) > 0 || bilinear_form(nu, a2) > 0)
            throw std::runtime_error(
                "reduced index is outside the fundamental chamber: expansion is not of "
                "denominator-identity shape");
        Rational m_val = -b;
        if (!is_integer(m_val))
            throw std::runtime_error("extracted multiplicity is not an integer");
        LatticeIndex key{nu_idx.u / s.D(), nu_idx.v / s.D()};
        auto [it, inserted] = out.mult.emplace(key, m_val.get_num());
        if (!inserted && it->second != m_val.get_num())
            throw std::runtime_error("inconsistent multiplicities across one W-orbit");
    }
    return out;
}

namespace {

// Weyl-reduce the evaluation point into 1 < y1/y2 < eta_1^2; returns det(w).
int reduce_point(const RootDatum& d, std::complex<double>& z1, std::complex<double>& z2) {
    double eta = d.eta.to_double();
    double etabar = d.eta.conj().to_double();
    int det = 1;
    for (int i = 0; i < 500; ++i) {
        double ratio = z1.imag() / z2.imag();
        if (ratio < 1.0) {
            std::swap(z1, z2);
            det = -det;
            continue;
        }
        if (ratio > eta * eta) {
            std::complex<double> n1 = eta * eta * z2;
            std::complex<double> n2 = etabar * etabar * z1;
            z1 = n1;
            z2 = n2;
            det = -det;
            continue;
        }
        return det;
    }
    throw std::logic_error("evaluation point failed to reduce into the chamber");
}

void require_convergent(long p, long pole_index, std::complex<double> z1,
                        std::complex<double> z2) {
    double y1 = z1.imag(), y2 = z2.imag();
    if (!(y1 > 0 && y2 > 0 && y1 * y2 > 2.0 * pole_index / p))
        throw std::domain_error("point outside the convergence region y1 y2 > 2|N|/p");
}

std::complex<double> phase(long p, double nu1, double nu2, std::complex<double> z1,
                           std::complex<double> z2) {
    // e(-(nu, z)) = exp(2 pi i p (nu z2 + conj(nu) z1))
    std::complex<double> w = 2.0 * M_PI * std::complex<double>(0, 1) *
                             (static_cast<double>(p) * (nu1 * z2 + nu2 * z1));
    return std::exp(w);
}

}  // namespace

std::complex<double> evaluate_series(const FourierSeries2& s, std::complex<double> z1,
                                     std::complex<double> z2) {
    require_convergent(s.p(), s.pole_index(), z1, z2);
    int det = reduce_point(s.datum(), z1, z2);
    std::complex<double> acc = 0;
    for (const auto& [idx, b] : s.terms()) {
        RootF nu = s.root_of(idx);
        acc += b.get_d() * phase(s.p(), nu.embed1(), nu.embed2(), z1, z2);
    }
    return static_cast<double>(det) * acc;
}

std::complex<double> evaluate_phi1_product(long p, const PlusForm& f1, long H,
                                           std::complex<double> z1, std::complex<double> z2) {
    require_convergent(p, 1, z1, z2);
    RootDatum d = make_root_datum(p, 1);
    int det = reduce_point(d, z1, z2);
    std::vector<ProductFactor> factors = totally_positive_factors(d, f1, H);
    append_real_root_factors(d, 1, H, factors);
    QuadElem rho = weyl_vector(p, 1);
    RootF rho_nu{rho};
    std::complex<double> acc = phase(p, rho_nu.embed1(), rho_nu.embed2(), z1, z2);
    for (const ProductFactor& f : factors) {
        RootF nu{f.xi};
        std::complex<double> x = phase(p, nu.embed1(), nu.embed2(), z1, z2);
        acc *= std::exp(static_cast<double>(f.e) * std::log(1.0 - x));
    }
    return static_cast<double>(det) * acc;
}

void save_series_json(const FourierSeries2& s, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["p"] = s.p();
    doc["D"] = s.D();
    doc["H"] = s.H();
    doc["offset"] = {s.offset().u, s.offset().v};
    auto& arr = doc["terms"] = nlohmann::ordered_json::array();
    for (const auto& [idx, b] : s.terms())
        arr.push_back({idx.u, idx.v, b.get_num().get_str(), b.get_den().get_str()});
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write series file: " + path);
    out << doc.dump() << "\n";
}

void save_series_csv(const FourierSeries2& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write series file: " + path);
    out << "u,v,lambda,numerator,denominator\n";
    for (const auto& [idx, b] : s.terms())
        out << idx.u << "," << idx.v << "," << s.lambda_rel(idx).get_str() << ","
            << b.get_num().get_str() << "," << b.get_den().get_str() << "\n";
}

FourierSeries2 load_series_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open series file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed series JSON: " + std::string(e.what()));
    }
    FourierSeries2 s(doc.at("p").get<long>(), doc.at("D").get<long>(), doc.at("H").get<long>(),
                     1, {doc.at("offset")[0].get<long>(), doc.at("offset")[1].get<long>()});
    auto parse = [](const nlohmann::json& v) -> Integer {
        if (v.is_string()) return Integer(v.get<std::string>());
        return Integer(v.get<long>());
    };
    for (const auto& entry : doc.at("terms")) {
        LatticeIndex idx{entry[0].get<long>(), entry[1].get<long>()};
        s.set_term(idx, make_rational(parse(entry[2]), parse(entry[3])));
    }
    return s;
}

}  // namespace hilmod
