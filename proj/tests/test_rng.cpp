#include <doctest.h>

#include <cmath>
#include <set>

#include <seqnet/rng.hpp>

using namespace seqnet;

TEST_SUITE("rng") {
    TEST_CASE("philox4x32-10 known answer, zero key and counter") {
        const auto out = philox::block(0, {0, 0, 0, 0});
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }

    TEST_CASE("keyed block regression lock") {
        const auto out = philox::block(0xdeadbeefcafef00dull, {1, 2, 3, 4});
        CHECK(out[0] == 0xab044ecfu);
        CHECK(out[1] == 0x76b42c08u);
        CHECK(out[2] == 0x3518bf56u);
        CHECK(out[3] == 0xf3d7ae8bu);
    }

    TEST_CASE("uniforms are deterministic and counter-addressed") {
        const TrialStream s{42, 7, 123};
        const auto u = s.uniforms(5, 3);
        const auto u_again = s.uniforms(5, 3);
        CHECK(u.u1 == u_again.u1);
        CHECK(u.u2 == u_again.u2);

        // Any change of address changes the output.
        std::set<double> seen{u.u1};
        CHECK(seen.insert(TrialStream{42, 7, 124}.uniforms(5, 3).u1).second);
        CHECK(seen.insert(TrialStream{42, 8, 123}.uniforms(5, 3).u1).second);
        CHECK(seen.insert(TrialStream{43, 7, 123}.uniforms(5, 3).u1).second);
        CHECK(seen.insert(s.uniforms(6, 3).u1).second);
        CHECK(seen.insert(s.uniforms(5, 4).u1).second);
        CHECK(seen.insert(s.uniforms(5, 3, 1).u1).second);
    }

    TEST_CASE("uniform moments") {
        const std::size_t n = 1000000;
        const TrialStream s{2024, 0, 0};
        double sum = 0.0, sum_sq = 0.0, lo = 1.0, hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto u = s.uniforms(static_cast<std::uint32_t>(i), 0);
            sum += u.u1;
            sum_sq += u.u1 * u.u1;
            lo = std::min(lo, u.u1);
            hi = std::max(hi, u.u1);
        }
        const double mean = sum / n;
        const double var = sum_sq / n - mean * mean;
        // 4 standard errors.
        CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
        CHECK(std::abs(var - 1.0 / 12.0) < 4.0 * 0.0745 / std::sqrt(static_cast<double>(n)));
        CHECK(lo > 0.0);
        CHECK(hi < 1.0);
    }

    TEST_CASE("normal and laplace variate moments") {
        const std::size_t n = 1000000;
        const TrialStream s{77, 1, 0};
        double nsum = 0.0, nsq = 0.0, lsum = 0.0, lsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto u = s.uniforms(static_cast<std::uint32_t>(i), 0);
            const double z = standard_normal(u);
            const double l = standard_laplace(s.uniforms(static_cast<std::uint32_t>(i), 1));
            nsum += z;
            nsq += z * z;
            lsum += l;
            lsq += l * l;
        }
        const double se = 1.0 / std::sqrt(static_cast<double>(n));
        CHECK(std::abs(nsum / n) < 4.0 * se);
        CHECK(std::abs(nsq / n - 1.0) < 4.0 * std::sqrt(2.0) * se);  // var of z^2 is 2
        CHECK(std::abs(lsum / n) < 4.0 * std::sqrt(2.0) * se);
        CHECK(std::abs(lsq / n - 2.0) < 4.0 * std::sqrt(20.0) * se);  // E l^4 = 24
    }
}
