#include <doctest.h>

#include <cmath>
#include <vector>

#include "wrad/rng.hpp"

using namespace wrad;

TEST_SUITE("rng") {

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 test suite.
    SUBCASE("zero counter, zero key") {
        const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }
    SUBCASE("all-ones counter and key") {
        const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                    {0xffffffffu, 0xffffffffu});
        CHECK(out[0] == 0x408f276du);
        CHECK(out[1] == 0x41c83b0eu);
        CHECK(out[2] == 0xa20bc7c6u);
        CHECK(out[3] == 0x6d5451fdu);
    }
    SUBCASE("pi digits") {
        const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                    {0xa4093822u, 0x299f31d0u});
        CHECK(out[0] == 0xd16cfe09u);
        CHECK(out[1] == 0x94fdccebu);
        CHECK(out[2] == 0x5001e420u);
        CHECK(out[3] == 0x24126ea1u);
    }
}

TEST_CASE("uniform mapping lands strictly inside (0,1)") {
    CHECK(uniform_from_bits(0) > 0.0);
    CHECK(uniform_from_bits(~0ull) < 1.0);
    CHECK(uniform_from_bits(1ull << 63) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("normal quantile inverts the erfc-based normal CDF") {
    const auto normal_cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    for (double p : {1e-12, 1e-6, 0.01, 0.025, 0.3, 0.5, 0.7, 0.975, 0.99, 1.0 - 1e-6}) {
        const double x = normal_quantile(p);
        CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-14));
    CHECK(normal_quantile(0.25) == doctest::Approx(-normal_quantile(0.75)).epsilon(1e-15));
}

TEST_CASE("streams are addressable and reproducible") {
    const NormalStream a(42, 7);
    const NormalStream b(42, 7);
    const NormalStream c(42, 8);
    const NormalStream d(43, 7);
    for (uint64_t i = 0; i < 16; ++i) {
        CHECK(a.draw(i) == b.draw(i));
    }
    CHECK(a.draw(0) != c.draw(0));
    CHECK(a.draw(0) != d.draw(0));

    std::vector<double> filled(17);
    a.fill(filled);
    for (uint64_t i = 0; i < filled.size(); ++i) {
        CHECK(filled[i] == a.draw(i));
    }
    std::vector<double> offset(5);
    a.fill(offset, 3);
    for (uint64_t i = 0; i < offset.size(); ++i) {
        CHECK(offset[i] == a.draw(3 + i));
    }
}

TEST_CASE("stream moments look standard normal") {
    const NormalStream s(2718, 0);
    const int n = 200000;
    KahanSum sum, sum_sq;
    for (int i = 0; i < n; ++i) {
        const double x = s.draw(static_cast<uint64_t>(i));
        sum.add(x);
        sum_sq.add(x * x);
    }
    const double mean = sum.value() / n;
    const double var = sum_sq.value() / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("mix_seed separates substreams") {
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
    CHECK(mix_seed(0, 0) != mix_seed(1, 0));
    CHECK(mix_seed(7, 3) == mix_seed(7, 3));
}

TEST_CASE("compensated summation recovers a hard sum") {
    KahanSum s;
    s.add(1e16);
    for (int i = 0; i < 10; ++i) s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 10.0);
}

}  // TEST_SUITE
