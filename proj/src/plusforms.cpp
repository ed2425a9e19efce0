#include "hilmod/plusforms.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace hilmod {

namespace {
const Rational kZero{};

void require_valid_index(long p, long m) {
    if (m < 1) throw std::domain_error("plus form index must be positive");
    if (legendre(m, p) == -1)
        throw std::domain_error("no plus form at index m with chi_p(m) = -1");
}
}  // namespace

PlusForm::PlusForm(long p, long m, long order, std::map<long, Rational> coeffs)
    : p_(p), m_(m), order_(order), s_m_(plus_space_s(m, p)), coeffs_(std::move(coeffs)) {
    if (!is_odd_prime(p_)) throw std::domain_error("plus form needs an odd prime");
    require_valid_index(p_, m_);
    for (auto& [n, c] : coeffs_)
        if (n < -m_ || n > order_)
            throw std::domain_error("plus form coefficient outside window");
}

const Rational& PlusForm::coeff(long n) const {
    if (n > order_) throw std::domain_error("plus form coefficient beyond truncation order");
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? kZero : it->second;
}

PlusFormReport verify_plusform(const PlusForm& f) {
    PlusFormReport rep;
    Rational lead = make_rational(1, f.s_m());
    if (f.coeff(-f.m()) != lead) rep.principal_part_ok = false;
    for (long n = -f.m(); n < 0; ++n)
        if (n != -f.m() && f.coeff(n) != 0) rep.principal_part_ok = false;
    for (long n = -f.m(); n <= f.order(); ++n) {
        const Rational& c = f.coeff(n);
        if (c == 0) continue;
        if (legendre(n, f.p()) == -1) rep.plus_support_violations.push_back(n);
        if (!is_integer(plus_space_s(n, f.p()) * c)) rep.integrality_violations.push_back(n);
    }
    return rep;
}

namespace {

PlusForm plusform_from_series(long p, long m, long order, const QExpansion& f) {
    if (f.order() < order)
        throw std::logic_error("series too shallow for requested plus form order");
    std::map<long, Rational> coeffs;
    for (long n = std::max(f.lo(), -m); n <= order; ++n) {
        const Rational& c = f.coeff(n);
        if (c != 0) coeffs.emplace(n, c);
    }
    return PlusForm(p, m, order, std::move(coeffs));
}

void check_constructed(const PlusForm& f) {
    PlusFormReport rep = verify_plusform(f);
    if (!rep.principal_part_ok)
        throw std::runtime_error("plus form construction failed: bad principal part");
    if (!rep.plus_support_violations.empty())
        throw std::runtime_error("plus form construction failed: support violation at n=" +
                                 std::to_string(rep.plus_support_violations.front()));
    if (!rep.integrality_violations.empty())
        throw std::runtime_error("plus form construction failed: s(n)a(n) not integral at n=" +
                                 std::to_string(rep.integrality_violations.front()));
}

// subtract multiples of lower forms until only q^-m survives in the principal
// part; multipliers must come out integral after scaling by s(t)
void triangular_clear(QExpansion& running, long m, long p,
                      const std::function<QExpansion(long)>& lower_form) {
    for (long t = m - 1; t >= 1; --t) {
        Rational c = running.coeff(-t);
        if (c == 0) continue;
        if (legendre(t, p) == -1)
            throw std::runtime_error("reduction left a pole at chi = -1 exponent " +
                                     std::to_string(t));
        Rational x = plus_space_s(t, p) * c;
        if (!is_integer(x))
            throw std::runtime_error("reduction multiplier not integral at exponent " +
                                     std::to_string(t));
        running = running - x * lower_form(t);
    }
}

}  // namespace

PlusForm build_f1(long p, long order) {
    if (p != 5 && p != 13)
        throw std::domain_error("f_1 construction supports p in {5, 13}; use a fixture otherwise");
    if (order < 10) throw std::domain_error("f_1 needs order >= 10");
    QExpansion e2 = classical_series(Series::E2p, p, order + 2);
    QExpansion h2 = classical_series(Series::H2, p, order + 2);
    if (h2.coeff(1) != 1) throw std::logic_error("H2 leading coefficient is not 1");
    QExpansion f = e2 * h2.inv();
    PlusForm out = plusform_from_series(p, 1, order, f);
    check_constructed(out);
    return out;
}

PlusFormFactory::PlusFormFactory(long p, long order)
    : p_(p), order_(order),
      htilde_pole_((p - 1) / std::gcd<long>(24, p - 1)),
      f1_(), htilde_(), jpz_() {
    if (p_ != 5 && p_ != 13)
        throw std::domain_error("plus form factory supports p in {5, 13}");
    if (order_ < 1) throw std::domain_error("plus form factory needs order >= 1");
}

QExpansion PlusFormFactory::candidate_series(const PlusCandidate& c, long target_order) {
    long pole = c.pole_order(p_, htilde_pole_);
    long base = target_order + pole + 2;
    long k = 24 / std::gcd<long>(24, p_ - 1);
    if (f1_.order() < base) {
        QExpansion e2 = classical_series(Series::E2p, p_, base + 2);
        QExpansion h2 = classical_series(Series::H2, p_, base + 2);
        f1_ = e2 * h2.inv();
    }
    if (htilde_.order() < base)
        htilde_ = eta_quotient({{1, k}, {p_, -k}}, base + htilde_pole_);
    QExpansion out = QExpansion::one(base);
    for (int i = 0; i < c.f1_pow; ++i) out = out * f1_;
    for (int i = 0; i < c.ht_pow; ++i) out = out * htilde_;
    if (c.jp_pow > 0) {
        if (jpz_.order() < base)
            jpz_ = level_raise(classical_series(Series::J, 0, base / p_ + 2), p_);
        for (int i = 0; i < c.jp_pow; ++i) out = out * jpz_;
    }
    if (out.order() < target_order)
        throw std::logic_error("candidate series lost too much truncation depth");
    return out.truncate(target_order);
}

const QExpansion& PlusFormFactory::series_for(long m, long need_order) {
    auto it = series_cache_.find(m);
    if (it != series_cache_.end() && it->second.order() >= need_order) return it->second;
    QExpansion s = build_series_at(m, need_order);
    if (s.order() < need_order)
        throw std::logic_error("plus form series shallower than requested");
    return series_cache_.insert_or_assign(m, std::move(s)).first->second;
}

QExpansion PlusFormFactory::build_series_at(long m, long need) {
    require_valid_index(p_, m);
    if (m < p_) {
        // integral combination of the canonical chain f1 * Htilde^(d-1)
        QExpansion running(0, need);
        for (long d = m; d >= 1; --d) {
            Rational want = (d == m) ? Rational(1) : Rational(0);
            Rational x = want - running.coeff(-d);
            if (!is_integer(x))
                throw std::runtime_error("Z-generation failed: non-integral multiplier at depth " +
                                         std::to_string(d));
            if (x != 0)
                running = running + x * candidate_series({1, static_cast<int>(d - 1), 0}, need);
        }
        return running;
    }
    if (m == p_) {
        QExpansion running = make_rational(1, 2) * classical_series(Series::E0, p_, need);
        triangular_clear(running, m, p_,
                         [&](long t) { return QExpansion(series_for(t, need)); });
        return running;
    }
    // m > p: start from j(pz) f_(m-p), then clear everything below
    long jorder = (need + m) / p_ + 2;
    QExpansion jp = level_raise(classical_series(Series::J, 0, jorder), p_);
    QExpansion running = (jp * series_for(m - p_, need + p_)).truncate(need);
    triangular_clear(running, m, p_,
                     [&](long t) { return QExpansion(series_for(t, need)); });
    return running;
}

PlusForm PlusFormFactory::build_from_candidates(long m, const std::vector<PlusCandidate>& cs) {
    require_valid_index(p_, m);
    if (static_cast<long>(cs.size()) != m)
        throw std::domain_error("need one candidate per pole depth m..1");
    long depth = order_ + 2;
    std::vector<QExpansion> series;
    series.reserve(cs.size());
    for (long d = m; d >= 1; --d) {
        const PlusCandidate& c = cs[static_cast<size_t>(m - d)];
        if (c.pole_order(p_, htilde_pole_) != d)
            throw std::domain_error("candidate pole order mismatch at depth " + std::to_string(d));
        QExpansion s = candidate_series(c, depth);
        if (s.coeff(-d) != 1)
            throw std::runtime_error("candidate at depth " + std::to_string(d) +
                                     " is not monic in the pole");
        series.push_back(std::move(s));
    }
    QExpansion running(0, depth);
    Rational target_lead = make_rational(1, plus_space_s(m, p_));
    for (long d = m; d >= 1; --d) {
        const QExpansion& cand = series[static_cast<size_t>(m - d)];
        Rational want = (d == m) ? target_lead : Rational(0);
        Rational x = want - running.coeff(-d);
        if (x != 0) running = running + x * cand;
    }
    PlusForm out = plusform_from_series(p_, m, order_, running);
    check_constructed(out);
    return out;
}

const PlusForm& PlusFormFactory::get(long m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    const QExpansion& s = series_for(m, order_);
    PlusForm form = plusform_from_series(p_, m, order_, s);
    check_constructed(form);
    return cache_.emplace(m, std::move(form)).first->second;
}

PlusForm build_fm(long p, long m, long order) {
    if (p != 5 && p != 13)
        throw std::domain_error("f_m construction supports p in {5, 13}; use a fixture otherwise");
    PlusFormFactory factory(p, order);
    return factory.get(m);
}

PlusForm load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open fixture file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed fixture JSON: " + std::string(e.what()));
    }
    if (!doc.contains("p") || !doc.contains("m") || !doc.contains("coeffs"))
        throw std::invalid_argument("fixture missing p/m/coeffs fields");
    long p = doc["p"].get<long>();
    long m = doc["m"].get<long>();
    std::map<long, Rational> coeffs;
    long prev = std::numeric_limits<long>::min();
    long order = -m - 1;
    for (const auto& entry : doc["coeffs"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw std::invalid_argument("fixture coefficient entries must be [n, num, den]");
        long n = entry[0].get<long>();
        auto parse = [&](const nlohmann::json& v) -> Integer {
            if (v.is_string()) return Integer(v.get<std::string>());
            return Integer(v.get<long>());
        };
        Integer num = parse(entry[1]), den = parse(entry[2]);
        if (n <= prev) throw std::invalid_argument("fixture exponents must be ascending");
        prev = n;
        Rational c = make_rational(num, den);
        if (c != 0) coeffs.emplace(n, c);
        order = n;
    }
    if (coeffs.empty() || coeffs.begin()->first != -m)
        throw std::invalid_argument("fixture must start with the q^-m principal term");
    PlusForm f(p, m, order, std::move(coeffs));
    PlusFormReport rep = verify_plusform(f);
    if (!rep.principal_part_ok)
        throw std::invalid_argument("fixture rejected: principal part is not q^-m / s(m)");
    if (!rep.plus_support_violations.empty())
        throw std::invalid_argument("fixture rejected: chi_p(n) = -1 coefficient at n=" +
                                    std::to_string(rep.plus_support_violations.front()));
    return f;
}

void save_fixture_json(const PlusForm& f, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["p"] = f.p();
    doc["m"] = f.m();
    auto& arr = doc["coeffs"] = nlohmann::ordered_json::array();
    for (long n = -f.m(); n <= f.order(); ++n) {
        const Rational& c = f.coeff(n);
        arr.push_back({n, c.get_num().get_str(), c.get_den().get_str()});
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write fixture file: " + path);
    out << doc.dump() << "\n";
}

void save_fixture_csv(const PlusForm& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write fixture file: " + path);
    out << "n,numerator,denominator\n";
    for (long n = -f.m(); n <= f.order(); ++n) {
        const Rational& c = f.coeff(n);
        out << n << "," << c.get_num().get_str() << "," << c.get_den().get_str() << "\n";
    }
}

}  // namespace hilmod
