#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>

#include "hilmod/plusforms.hpp"

using namespace hilmod;

namespace {
const std::string kDataDir = HILMOD_DATA_DIR;

std::string temp_path(const std::string& name) {
    return std::string("/tmp/hilmod_test_") + name;
}
}  // namespace

TEST_CASE("f_1 for p = 5 reproduces the classical table") {
    PlusForm f1 = build_f1(5, 10);
    CHECK(f1.coeff(-1) == 1);
    const long expect[] = {5, 11, 0, 0, -54, 55, 44, 0, 0, -395, 340};
    for (long n = 0; n <= 10; ++n) CHECK(f1.coeff(n) == expect[n]);
    CHECK(f1.coeff(2) == 0);  // chi_5(2) = -1
    CHECK(f1.coeff(3) == 0);  // chi_5(3) = -1
    CHECK(verify_plusform(f1).clean());
}

TEST_CASE("f_1 for p = 13 reproduces the classical table") {
    PlusForm f1 = build_f1(13, 10);
    CHECK(f1.coeff(-1) == 1);
    CHECK(f1.coeff(0) == 1);
    CHECK(f1.coeff(1) == 1);
    CHECK(f1.coeff(2) == 0);
    CHECK(f1.coeff(3) == 3);
    CHECK(f1.coeff(4) == -2);
    CHECK(f1.coeff(9) == -1);
    CHECK(f1.coeff(10) == -4);
    CHECK(verify_plusform(f1).clean());
    CHECK_THROWS_AS(build_f1(17, 20), std::domain_error);
    CHECK_THROWS_AS(build_f1(5, 5), std::domain_error);  // order below 10
}

TEST_CASE("f_m reduction reproduces the classical tables") {
    PlusForm f4 = build_fm(5, 4, 6);
    CHECK(f4.coeff(0) == 15);
    CHECK(f4.coeff(1) == -216);
    CHECK(f4.coeff(4) == 4959);
    CHECK(f4.coeff(5) == 22040);
    CHECK(f4.coeff(6) == -90984);

    PlusForm f9 = build_fm(5, 9, 6);
    CHECK(f9.coeff(0) == 35);
    CHECK(f9.coeff(1) == -3555);
    CHECK(f9.coeff(4) == 922374);
    CHECK(f9.coeff(5) == 7512885);
    CHECK(f9.coeff(6) == -53113164);

    PlusForm g4 = build_fm(13, 4, 4);
    CHECK(g4.coeff(0) == 3);
    CHECK(g4.coeff(1) == -8);
    CHECK(g4.coeff(3) == 16);
    CHECK(g4.coeff(4) == 29);

    PlusForm g9 = build_fm(13, 9, 4);
    CHECK(g9.coeff(0) == 13);
    CHECK(g9.coeff(1) == -9);
    CHECK(g9.coeff(3) == 36);
    CHECK(g9.coeff(4) == -198);

    CHECK_THROWS_AS(build_fm(5, 2, 10), std::domain_error);   // chi_5(2) = -1
    CHECK_THROWS_AS(build_fm(13, 5, 10), std::domain_error);  // chi_13(5) = -1
    CHECK_THROWS_AS(build_fm(17, 1, 10), std::domain_error);  // fixture-only prime
}

TEST_CASE("uniqueness: two candidate bases give the same f_4 for p = 5") {
    PlusFormFactory factory(5, 100);
    // canonical chain f1 Htilde^(d-1)
    std::vector<PlusCandidate> chain = {{1, 3, 0}, {1, 2, 0}, {1, 1, 0}, {1, 0, 0}};
    // alternative with cubes of f1 at depths 4 and 3
    std::vector<PlusCandidate> alt = {{3, 1, 0}, {3, 0, 0}, {1, 1, 0}, {1, 0, 0}};
    PlusForm a = factory.build_from_candidates(4, chain);
    PlusForm b = factory.build_from_candidates(4, alt);
    for (long n = -4; n <= 100; ++n) CHECK(a.coeff(n) == b.coeff(n));
}

TEST_CASE("s(n) a_m(n) integrality through order 500") {
    for (long p : {5L, 13L}) {
        PlusFormFactory factory(p, 500);
        for (long m : {1L, 4L, 5L, 6L, 9L, 10L, 11L}) {
            if (legendre(m, p) == -1) continue;
            const PlusForm& f = factory.get(m);
            PlusFormReport rep = verify_plusform(f);
            CHECK(rep.clean());
            // positivity at p | n for p not dividing m
            if (m % p != 0)
                for (long n = p; n <= f.order(); n += p) CHECK(f.coeff(n) > 0);
        }
    }
}

TEST_CASE("fixture round trip and rejection") {
    PlusForm f1 = load_fixture(kDataDir + std::string("/fixtures/f1_p17.json"));
    CHECK(f1.p() == 17);
    CHECK(f1.m() == 1);
    CHECK(f1.coeff(-1) == 1);
    CHECK(f1.coeff(0) == make_rational(1, 2));
    CHECK(f1.coeff(1) == -1);
    CHECK(f1.coeff(2) == 1);
    CHECK(f1.coeff(4) == 2);
    CHECK(f1.order() >= 576);
    PlusFormReport rep = verify_plusform(f1);
    CHECK(rep.support_clean());
    CHECK(rep.integrality_violations.empty());  // observed status, not a theorem

    PlusForm f9 = load_fixture(kDataDir + std::string("/fixtures/f9_p17.json"));
    CHECK(f9.coeff(0) == make_rational(7, 2));
    CHECK(f9.coeff(1) == -18);

    // round trip through the exporter
    std::string path = temp_path("roundtrip.json");
    save_fixture_json(f9, path);
    PlusForm back = load_fixture(path);
    for (long n = -9; n <= back.order(); ++n) CHECK(back.coeff(n) == f9.coeff(n));
    std::remove(path.c_str());

    // a fixture with a(3) != 0 for p = 5 violates chi_5(3) = -1 and is rejected
    std::string bad = temp_path("bad.json");
    {
        std::ofstream out(bad);
        out << R"({"p":5,"m":1,"coeffs":[[-1,1,1],[0,5,1],[3,7,1]]})";
    }
    CHECK_THROWS_AS(load_fixture(bad), std::invalid_argument);
    std::remove(bad.c_str());

    std::string garbled = temp_path("garbled.json");
    {
        std::ofstream out(garbled);
        out << "{not json";
    }
    CHECK_THROWS_AS(load_fixture(garbled), std::invalid_argument);
    std::remove(garbled.c_str());
}

TEST_CASE("verify_plusform reports violations with their locations") {
    std::map<long, Rational> coeffs{{-1, Rational(1)}, {0, Rational(5)}, {2, Rational(3)},
                                    {5, make_rational(1, 3)}};
    PlusForm f(5, 1, 6, coeffs);
    PlusFormReport rep = verify_plusform(f);
    CHECK(rep.principal_part_ok);
    REQUIRE(rep.plus_support_violations.size() == 1);
    CHECK(rep.plus_support_violations[0] == 2);
    REQUIRE(rep.integrality_violations.size() == 1);
    CHECK(rep.integrality_violations[0] == 5);
}
