#include "lacuna/series_io.hpp"
#include "lacuna/qforms.hpp"

#include <doctest.h>

#include <random>

using namespace lacuna;

TEST_CASE("csv layout") {
    const auto f = QSeries::from_integers(3, -1, std::vector<std::int64_t>{1, 0, 2});
    CHECK(to_csv(f) == "exponent,coefficient\n-1,1\n1,2\n");
    CHECK(to_csv(f, CsvRows::all) == "exponent,coefficient\n-1,1\n0,0\n1,2\n");
    CHECK(from_csv(to_csv(f, CsvRows::all), 3) == f);
    CHECK(from_csv(to_csv(f), 3, -1, 3) == f);
}

TEST_CASE("csv rejects malformed input") {
    CHECK_THROWS(from_csv("exp,coef\n0,1\n", 3));
    CHECK_THROWS(from_csv("exponent,coefficient\n0,x\n", 3));
    CHECK_THROWS(from_csv("exponent,coefficient\n0,1\n0,1\n", 3));
    CHECK_THROWS(from_csv("exponent,coefficient\n5,1\n", 3, 0, 2));
}

TEST_CASE("json envelope") {
    const auto f = eta1(5, 60).series;
    const auto j = to_json(f);
    CHECK(j.at("modulus") == 5);
    CHECK(j.at("offset") == 1);
    CHECK(j.at("length") == 59);
    CHECK(j.at("coeffs").size() == 59);
    CHECK(series_from_json(j) == f);
    CHECK(series_from_json(nlohmann::json::parse(j.dump())) == f);
}

TEST_CASE("round trips are bit exact on random series") {
    std::mt19937_64 rng(5);
    for (std::uint32_t ell : {2u, 3u, 101u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::int64_t offset = static_cast<std::int64_t>(rng() % 21) - 10;
            std::vector<std::int64_t> c(1 + rng() % 300);
            for (auto& v : c) v = static_cast<std::int64_t>(rng() % ell);
            const auto f = QSeries::from_integers(ell, offset, c);
            CHECK(from_csv(to_csv(f, CsvRows::all), ell) == f);
            CHECK(from_csv(to_csv(f), ell, f.offset(), f.length()) == f);
            CHECK(series_from_json(nlohmann::json::parse(to_json(f).dump())) == f);
        }
    }
}
