#include "rdgfv/rational.hpp"

#include <doctest.h>

using namespace rdgfv;

TEST_CASE("rational arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a * b == Rational(1, 18));
    CHECK(a - b == b);
    CHECK(to_double(Rational(1, 2)) == doctest::Approx(0.5));
    CHECK(factorial(6) == 720);
}

TEST_CASE("matrix inverse round trip") {
    RationalMatrix m(3, 3);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(0, 2) = Rational(1, 2);
    m(1, 0) = -1;
    m(1, 1) = 3;
    m(1, 2) = 0;
    m(2, 0) = 0;
    m(2, 1) = Rational(1, 7);
    m(2, 2) = 5;
    const RationalMatrix inv = m.inverse();
    const RationalMatrix prod = m * inv;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(prod(i, j) == (i == j ? Rational(1) : Rational(0)));
}

TEST_CASE("singular matrix is rejected") {
    RationalMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    CHECK(m.determinant() == 0);
    CHECK_THROWS(m.inverse());
}

TEST_CASE("linear solve") {
    RationalMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = -1;
    const std::vector<Rational> x = solve(m, {Rational(3), Rational(1)});
    CHECK(x[0] == 2);
    CHECK(x[1] == 1);
}
