#include <doctest.h>

#include <random>

#include "hilmod/qfield.hpp"

using namespace hilmod;

namespace {

// independent oracle: ascending brute-force scan of a^2 - p s^2 = 4
std::vector<std::pair<long, long>> pell_scan(long p, long count) {
    std::vector<std::pair<long, long>> out;
    for (long s = 1; static_cast<long>(out.size()) < count && s < 2000000; ++s) {
        __int128 t = static_cast<__int128>(p) * s * s + 4;
        long a = static_cast<long>(std::sqrt(static_cast<double>(t)));
        for (long c = std::max<long>(a - 2, 1); c <= a + 2; ++c)
            if (static_cast<__int128>(c) * c == t) out.emplace_back(c, s);
    }
    return out;
}

QuadElem random_elem(long p, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    return QuadElem(p, make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("field arithmetic on Q(sqrt p)") {
    // norm((3+sqrt13)/2) = (9-13)/4 = -1
    QuadElem x(13, make_rational(3, 2), make_rational(1, 2));
    CHECK(x.norm() == -1);

    QuadElem y(5, 2, 1);
    CHECK(y.conj().conj() == y);

    // trace((3+sqrt5)/2) = 3
    QuadElem z(5, make_rational(3, 2), make_rational(1, 2));
    CHECK(z.trace() == 3);

    CHECK(x.inv() * x == quad_rational(13, 1));
    CHECK_THROWS_AS(QuadElem(5, 0, 0).inv(), std::domain_error);
    CHECK_THROWS_AS(y + x, std::domain_error);  // mismatched p
}

TEST_CASE("norm is multiplicative on random pairs") {
    std::mt19937 rng(7043);
    for (int i = 0; i < 100; ++i) {
        QuadElem a = random_elem(13, rng), b = random_elem(13, rng);
        CHECK((a * b).norm() == a.norm() * b.norm());
        CHECK((a + b).trace() == a.trace() + b.trace());
        CHECK(a * b == b * a);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
}

TEST_CASE("sign and total positivity are exact") {
    // 3 - sqrt5 > 0, 2 - sqrt5 < 0
    CHECK(QuadElem(5, 3, -1).sign() == 1);
    CHECK(QuadElem(5, 2, -1).sign() == -1);
    CHECK(QuadElem(5, 0, 0).sign() == 0);
    CHECK(QuadElem(5, 3, -1).is_totally_positive());      // 3 +- sqrt5 both positive
    CHECK_FALSE(QuadElem(5, 1, 1).is_totally_positive()); // conjugate 1 - sqrt5 < 0
}

TEST_CASE("ring of integers membership") {
    CHECK(QuadElem(5, make_rational(1, 2), make_rational(1, 2)).is_integral());
    CHECK(QuadElem(5, 2, 3).is_integral());
    CHECK_FALSE(QuadElem(5, make_rational(1, 2), 0).is_integral());
    CHECK_FALSE(QuadElem(5, make_rational(1, 3), make_rational(1, 3)).is_integral());
}

TEST_CASE("fundamental units match the fixed table") {
    CHECK(fundamental_unit(5) == QuadElem(5, make_rational(1, 2), make_rational(1, 2)));
    CHECK(fundamental_unit(13) == QuadElem(13, make_rational(3, 2), make_rational(1, 2)));
    CHECK(fundamental_unit(17) == QuadElem(17, 4, 1));
    CHECK(fundamental_unit(5).norm() == -1);
    CHECK(fundamental_unit(13).norm() == -1);
    CHECK(fundamental_unit(17).norm() == -1);
    CHECK_THROWS_AS(fundamental_unit(4), std::domain_error);
    CHECK_THROWS_AS(fundamental_unit(15), std::domain_error);
}

TEST_CASE("unit search beyond the table agrees with known units") {
    // eps0(29) = (5+sqrt29)/2, eps0(3) = 2+sqrt3, eps0(7) = 8+3 sqrt7
    CHECK(fundamental_unit(29) == QuadElem(29, make_rational(5, 2), make_rational(1, 2)));
    CHECK(fundamental_unit(3) == QuadElem(3, 2, 1));
    CHECK(fundamental_unit(7) == QuadElem(7, 8, 3));
    CHECK(fundamental_unit(29).norm() == -1);
}

TEST_CASE("Pell families: first solutions and unit powers") {
    PellFamily f5 = pell_solutions(5, 5);
    CHECK(f5.entries[0].a == 3);
    CHECK(f5.entries[0].s == 1);
    CHECK(f5.entries[1].a == 7);  // eps0^4 = (7+3 sqrt5)/2
    CHECK(f5.entries[1].s == 3);

    PellFamily f13 = pell_solutions(13, 2);
    CHECK(f13.entries[0].a == 11);
    CHECK(f13.entries[0].s == 3);

    PellFamily f17 = pell_solutions(17, 2);
    CHECK(f17.entries[0].a == 66);
    CHECK(f17.entries[0].s == 16);

    // oracle comparison: scan solutions ascending
    for (long p : {5L, 13L}) {
        PellFamily fam = pell_solutions(p, 3);
        auto scan = pell_scan(p, 3);
        REQUIRE(scan.size() >= 3);
        for (int i = 0; i < 3; ++i) {
            CHECK(fam.entries[i].a == scan[i].first);
            CHECK(fam.entries[i].s == scan[i].second);
        }
    }
}

TEST_CASE("Pell invariants: a^2 - p s^2 = 4, unit relations, power law") {
    for (long p : {5L, 13L, 17L}) {
        PellFamily fam = pell_solutions(p, 20);
        const QuadElem one = quad_rational(p, 1);
        for (const PellEntry& e : fam.entries) {
            CHECK(e.a * e.a - p * e.s * e.s == 4);
            CHECK(e.eta * e.eta.conj() == one);
            CHECK(e.eta.trace() == Rational(e.a));
        }
        // 1 + eta^2 = a eta for the first solution
        const QuadElem& eta1 = fam.entries[0].eta;
        CHECK(one + eta1 * eta1 == Rational(fam.entries[0].a) * eta1);
        // eta_k^j = eta_{kj} whenever kj <= 20
        for (long k = 1; k <= 20; ++k)
            for (long j = 1; k * j <= 20; ++j)
                CHECK(fam.entries[k - 1].eta.pow(j) == fam.entries[k * j - 1].eta);
    }
}
