#include <doctest.h>

#include <random>

#include "maxmin/errors.hpp"
#include "maxmin/value.hpp"

using namespace maxmin;

TEST_CASE("rendering uses lowest terms and drops unit denominators") {
    CHECK(value_str(value_of(6, 3)) == "2");
    CHECK(value_str(value_of(-6, 4)) == "-3/2");
    CHECK(value_str(Value(0)) == "0");
    CHECK(value_str(value_of(55, 27)) == "55/27");
}

TEST_CASE("parsing accepts p and p/q and rejects junk") {
    CHECK(parse_value("7") == 7);
    CHECK(parse_value("-12/8") == value_of(-3, 2));
    CHECK(parse_value("0/5") == 0);
    CHECK_THROWS_AS(parse_value(""), UsageError);
    CHECK_THROWS_AS(parse_value("1/0"), UsageError);
    CHECK_THROWS_AS(parse_value("1.5"), UsageError);
    CHECK_THROWS_AS(parse_value("2/-3"), UsageError);
    CHECK_THROWS_AS(parse_value("1/2/3"), UsageError);
    CHECK_THROWS_AS(parse_value("x"), UsageError);
}

TEST_CASE("parse is a left inverse of render") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 500; ++k) {
        long num = static_cast<long>(rng() % 2001) - 1000;
        long den = 1 + static_cast<long>(rng() % 999);
        Value v = value_of(num, den);
        CHECK(parse_value(value_str(v)) == v);
    }
}

TEST_CASE("arithmetic is exact") {
    Value third = value_of(1, 3);
    CHECK(third + third + third == 1);
    CHECK(value_of(2, 5) * value_of(5, 2) == 1);
    CHECK(value_of(1, 3) - value_of(1, 4) == value_of(1, 12));
    CHECK(value_of(7, 3) / value_of(7, 3) == 1);
    CHECK(value_of(1, 3) < value_of(34, 100));
}

TEST_CASE("ceiling to long") {
    CHECK(value_ceil_long(value_of(5, 2)) == 3);
    CHECK(value_ceil_long(Value(4)) == 4);
    CHECK(value_ceil_long(value_of(-5, 2)) == -2);
    CHECK(value_ceil_long(value_of(54, 54)) == 1);
}
