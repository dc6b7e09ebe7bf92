#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <seqnet/topology.hpp>
#include <seqnet/weights.hpp>

#include "test_util.hpp"

using namespace seqnet;

namespace {

// Circulant Laplacian eigenvalues: 2m - 2 sum_{d<=m} cos(2 pi j d / n).
std::vector<double> circulant_laplacian_eigenvalues(int n, int m) {
    std::vector<double> ev(n);
    for (int j = 0; j < n; ++j) {
        double v = 2.0 * m;
        for (int d = 1; d <= m; ++d) v -= 2.0 * std::cos(2.0 * M_PI * j * d / n);
        ev[j] = v;
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

}  // namespace

TEST_SUITE("consensus weights") {
    TEST_CASE("jacobi eigenvalues on small fixed matrices") {
        Matrix path(2, 2);
        path.at(0, 0) = 1.0;
        path.at(0, 1) = -1.0;
        path.at(1, 0) = -1.0;
        path.at(1, 1) = 1.0;
        const auto ev = symmetric_eigenvalues(path);
        CHECK(ev[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(ev[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

        const auto id = symmetric_eigenvalues(Matrix::identity(5));
        for (double v : id) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

        Matrix asym(2, 2);
        asym.at(0, 1) = 0.5;
        CHECK_THROWS_AS(symmetric_eigenvalues(asym), std::invalid_argument);
    }

    TEST_CASE("jacobi matches the circulant closed form") {
        for (int n = 3; n <= 30; ++n) {
            for (int m = 1; m <= 3; ++m) {
                if (2 * m >= n) continue;
                const auto expect = circulant_laplacian_eigenvalues(n, m);
                const auto got = symmetric_eigenvalues(laplacian(ring_topology(n, m)));
                REQUIRE(got.size() == expect.size());
                for (std::size_t i = 0; i < got.size(); ++i)
                    CHECK(std::abs(got[i] - expect[i]) < 1e-9);
            }
        }
    }

    TEST_CASE("equal-weight sigma2 on the three reference networks") {
        CHECK(std::abs(equal_weight_matrix(ring_topology(12, 2)).sigma2 - 0.6511) < 5e-4);
        CHECK(std::abs(equal_weight_matrix(ring_topology(20, 2)).sigma2 - 0.8571) < 5e-4);
        CHECK(std::abs(equal_weight_matrix(ring_topology(26, 2)).sigma2 - 0.9115) < 5e-4);
    }

    TEST_CASE("equal weights on the complete graph collapse to averaging") {
        std::vector<std::pair<int, int>> full;
        const int n = 6;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) full.push_back({i, j});
        const WeightMatrix wm = equal_weight_matrix(from_edge_list(n, full));
        CHECK(*wm.delta == doctest::Approx(1.0 / n).epsilon(1e-12));
        CHECK(wm.sigma2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(max_abs_diff(wm.w, Matrix::averaging(n)) < 1e-12);
        CHECK(!wm.warnings.empty());
    }

    TEST_CASE("condition checks") {
        const WeightMatrix wm = equal_weight_matrix(ring_topology(12, 2));
        const SpectralReport ok = validate_condition1(wm.w);
        CHECK(ok.condition1_ok);
        CHECK(ok.sigma1 == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(ok.sigma2 == doctest::Approx(wm.sigma2).epsilon(1e-9));

        const SpectralReport id = validate_condition1(Matrix::identity(4));
        CHECK(!id.condition1_ok);  // sigma2 = 1

        const SpectralReport avg = validate_condition1(Matrix::averaging(4));
        CHECK(!avg.condition1_ok);  // sigma2 = 0 boundary
        CHECK(!avg.warnings.empty());

        // Doubly stochastic but not symmetric: still passes via singular values.
        Matrix rot(3, 3);
        const double third = 1.0 / 3.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) rot.at(i, j) = third;
        rot.at(0, 0) += 0.1;
        rot.at(0, 1) -= 0.1;
        rot.at(1, 1) += 0.1;
        rot.at(1, 2) -= 0.1;
        rot.at(2, 2) += 0.1;
        rot.at(2, 0) -= 0.1;
        const SpectralReport r = validate_condition1(rot);
        CHECK(r.condition1_ok);
        CHECK(r.sigma2 > 0.0);
        CHECK(r.sigma2 < 1.0);
    }

    TEST_CASE("matrix powers") {
        const Matrix w = equal_weight_matrix(ring_topology(12, 2)).w;
        CHECK(max_abs_diff(matrix_power(w, 0), Matrix::identity(12)) == 0.0);
        CHECK(max_abs_diff(matrix_power(w, 1), w) == 0.0);
        CHECK(max_abs_diff(mat_mul(matrix_power(w, 2), matrix_power(w, 2)), matrix_power(w, 4)) <
              1e-12);
    }

    TEST_CASE("difference matrix identity and contraction") {
        for (auto [n, m] : {std::pair{12, 2}, {20, 2}, {26, 2}}) {
            const WeightMatrix wm = equal_weight_matrix(ring_topology(n, m));
            const Matrix j = Matrix::averaging(n);

            CHECK(max_abs_diff(delta_matrix(wm, 1), mat_sub(wm.w, j)) < 1e-14);
            for (unsigned t : {2u, 5u, 10u, 20u, 50u}) CHECK_NOTHROW(delta_matrix(wm, t));

            // ||Delta_t x|| <= sigma2^t ||x|| on random unit vectors.
            const TrialStream stream{99, 0xFFFFFFF1u, static_cast<std::uint32_t>(n)};
            for (unsigned t = 1; t <= 20; ++t) {
                const Matrix d = delta_matrix(wm, t);
                const double bound = std::pow(wm.sigma2, t) * (1.0 + 1e-9) + 1e-12;
                for (int rep = 0; rep < 5; ++rep) {
                    Vec x(n);
                    double norm = 0.0;
                    for (int i = 0; i < n; ++i) {
                        x[i] = standard_normal(
                            stream.uniforms(t * 100 + rep, static_cast<std::uint16_t>(i)));
                        norm += x[i] * x[i];
                    }
                    norm = std::sqrt(norm);
                    Vec y;
                    mat_vec(d, x, y);
                    double ny = 0.0;
                    for (double v : y) ny += v * v;
                    CHECK(std::sqrt(ny) / norm <= bound);
                }
            }
        }

        // W = J: the difference vanishes for every t.
        WeightMatrix avg = weight_matrix_from(Matrix::averaging(5));
        for (unsigned t : {1u, 2u, 7u}) CHECK(max_abs(delta_matrix(avg, t)) < 1e-15);
    }

    TEST_CASE("powers stay doubly stochastic and contract geometrically") {
        const WeightMatrix wm = equal_weight_matrix(ring_topology(12, 2));
        for (unsigned t : {1u, 3u, 10u, 30u, 100u}) {
            const Matrix p = matrix_power(wm.w, t);
            for (int i = 0; i < 12; ++i) {
                double row = 0.0, col = 0.0;
                for (int j = 0; j < 12; ++j) {
                    row += p.at(i, j);
                    col += p.at(j, i);
                }
                CHECK(std::abs(row - 1.0) < 1e-10);
                CHECK(std::abs(col - 1.0) < 1e-10);
            }
            // Symmetric W: sigma2(W^t) = sigma2(W)^t.
            const auto ev = symmetric_eigenvalues(p);
            std::vector<double> mags;
            for (double v : ev) mags.push_back(std::abs(v));
            std::sort(mags.begin(), mags.end(), std::greater<>());
            CHECK(std::abs(mags[1] - std::pow(wm.sigma2, t)) < 1e-9);
        }
    }

    TEST_CASE("user-supplied matrices are validated") {
        CHECK_THROWS_AS(weight_matrix_from(Matrix::identity(3)), std::invalid_argument);
        Matrix bad(2, 2);
        bad.at(0, 0) = 0.9;
        bad.at(0, 1) = 0.2;
        bad.at(1, 0) = 0.1;
        bad.at(1, 1) = 0.8;
        CHECK_THROWS_AS(weight_matrix_from(bad), std::invalid_argument);
    }
}
