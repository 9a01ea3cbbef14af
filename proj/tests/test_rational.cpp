#include "support.hpp"

#include "expoly/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using namespace expoly;

TEST_CASE("rational normalization and printing") {
    CHECK(Rational(4, 6) == Rational(2, 3));
    // Sign canonicalization happens through arithmetic; the pair constructor
    // itself only accepts positive denominators.
    CHECK(Rational(-4) / Rational(-6) == Rational(2, 3));
    CHECK(Rational(4) / Rational(-6) == Rational(-2, 3));
    CHECK(to_string(Rational(-2, 3)) == "-2/3");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(is_integer(Rational(8, 4)));
    CHECK_FALSE(is_integer(Rational(1, 2)));
}

TEST_CASE("rational string parsing") {
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-7") == Rational(-7));
    CHECK(rational_from_string("-6/8") == Rational(-3, 4));
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rational_from_string("1/-2"), ParseError);
    CHECK_THROWS_AS(rational_from_string("abc"), ParseError);
    CHECK_THROWS_AS(rational_from_string("1.5"), ParseError);
    CHECK_THROWS_AS(rational_from_string(""), ParseError);
    CHECK_THROWS_AS(rational_from_string("/2"), ParseError);
    CHECK_THROWS_AS(rational_from_string("3/"), ParseError);
}

TEST_CASE("rational arithmetic does not overflow at large heights") {
    // cpp_rational grows digits as needed; a 2^200-scale computation stays exact.
    Rational big(1);
    for (int k = 0; k < 200; ++k) big *= Rational(2);
    CHECK(big * Rational(1, 2) + big * Rational(1, 2) == big);
    CHECK(to_string(big / (big - Rational(1)) - Rational(1)) ==
          "1/1606938044258990275541962092341162602522202993782792835301375");
}

TEST_CASE("rational parse/print round trip on random values") {
    auto rng = testsupport::make_rng(101);
    for (int k = 0; k < 200; ++k) {
        Rational r = testsupport::rand_rational(rng, 1000, 997);
        CHECK(rational_from_string(to_string(r)) == r);
    }
}

TEST_CASE("gaussian rational field laws") {
    const GaussRational i = GaussRational::unit_i();
    CHECK(i * i == GaussRational(Rational(-1)));
    CHECK(to_string(i) == "i");
    CHECK(to_string(GaussRational(Rational(1), Rational(-2))) == "1 - 2*i");

    auto rng = testsupport::make_rng(102);
    for (int k = 0; k < 100; ++k) {
        GaussRational a = testsupport::rand_gauss(rng), b = testsupport::rand_gauss(rng),
                      c = testsupport::rand_gauss(rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK(a * a.conj() == GaussRational(a.norm2()));
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("gaussian rational matches complex arithmetic numerically") {
    auto rng = testsupport::make_rng(103);
    for (int k = 0; k < 50; ++k) {
        GaussRational a = testsupport::rand_gauss(rng), b = testsupport::rand_gauss(rng);
        std::complex<double> za = a.to_complex(), zb = b.to_complex();
        CHECK(std::abs((a * b).to_complex() - za * zb) < 1e-9);
        CHECK(std::abs((a + b).to_complex() - (za + zb)) < 1e-12);
    }
}

TEST_CASE("gaussian rational division by zero throws") {
    CHECK_THROWS_AS(GaussRational(Rational(1)) / GaussRational(), std::domain_error);
}
