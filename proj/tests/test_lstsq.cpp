#include <limits>
#include <random>

#include <Eigen/LU>

#include "doctest.h"
#include "testutil.hpp"

#include "solarcast/lstsq.hpp"

using namespace solarcast;

namespace {

Matrix<double> random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix<double> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("identity system returns the targets") {
    Matrix<double> H = Matrix<double>::Identity(3, 3);
    Matrix<double> D(3, 1);
    D << 2.0, -1.0, 0.5;
    const Matrix<double> beta = solve_min_norm<double>({H, D, 0.0});
    for (Index i = 0; i < 3; ++i) CHECK(beta(i, 0) == doctest::Approx(D(i, 0)).epsilon(1e-12));
}

TEST_CASE("one-column least squares is the mean") {
    Matrix<double> H(2, 1);
    H << 1.0, 1.0;
    Matrix<double> D(2, 1);
    D << 0.0, 2.0;
    const LinearSystem<double> sys{H, D, 0.0};
    const Matrix<double> beta = solve_min_norm(sys);
    REQUIRE(beta.rows() == 1);
    CHECK(beta(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(residual_norm(sys, beta) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("min-norm puts nothing on the null space") {
    Matrix<double> H(2, 3);
    H << 1, 0, 0, 1, 0, 0;
    Matrix<double> D(2, 1);
    D << 1.0, 1.0;
    const Matrix<double> beta = solve_min_norm<double>({H, D, 0.0});
    CHECK(beta(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(beta(1, 0) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(beta(2, 0) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("residual_norm definition") {
    std::mt19937_64 rng(41);
    Matrix<double> H = random_matrix(rng, 6, 3);
    Matrix<double> D = random_matrix(rng, 6, 1);
    const LinearSystem<double> sys{H, D, 0.0};
    CHECK(residual_norm(sys, Matrix<double>::Zero(3, 1)) ==
          doctest::Approx(D.norm()).epsilon(1e-12));

    // An exactly consistent system has zero residual.
    Matrix<double> beta_star = random_matrix(rng, 3, 1);
    const LinearSystem<double> exact{H, (H * beta_star).eval(), 0.0};
    const Matrix<double> beta = solve_min_norm(exact);
    CHECK(residual_norm(exact, beta) < 1e-10);

    Matrix<double> wrong = Matrix<double>::Zero(4, 1);
    CHECK_THROWS_AS(residual_norm(sys, wrong), DimensionMismatch);
}

TEST_CASE("no unit perturbation of the solution lowers the residual") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const Index rows = 20 + static_cast<Index>(rng() % 181);
        const Index cols = 5 + static_cast<Index>(rng() % 46);
        const LinearSystem<double> sys{random_matrix(rng, rows, cols),
                                       random_matrix(rng, rows, 1), 0.0};
        const Matrix<double> beta = solve_min_norm(sys);
        const double base = residual_norm(sys, beta);
        for (int trial = 0; trial < 20; ++trial) {
            Matrix<double> delta(cols, 1);
            for (Index i = 0; i < cols; ++i) delta(i, 0) = gauss(rng);
            delta *= 1e-3 / delta.norm();
            CHECK(residual_norm(sys, (beta + delta).eval()) >= base - 1e-9);
        }
    }
}

TEST_CASE("adding null-space components only grows the norm") {
    // Columns 1 and 2 are identical, so (0, 1, -1) spans the null space.
    Matrix<double> H(4, 3);
    H << 1, 1, 1, 2, 1, 1, 3, 2, 2, 4, 5, 5;
    Matrix<double> D(4, 1);
    D << 1, 2, 3, 4;
    const LinearSystem<double> sys{H, D, 0.0};
    const Matrix<double> beta = solve_min_norm(sys);
    const double base = residual_norm(sys, beta);
    Matrix<double> null_dir(3, 1);
    null_dir << 0, 1, -1;
    for (double t : {-2.0, -0.5, 0.5, 2.0}) {
        const Matrix<double> other = beta + t * null_dir;
        CHECK(residual_norm(sys, other) == doctest::Approx(base).epsilon(1e-9));
        CHECK(other.norm() > beta.norm());
    }
}

TEST_CASE("a planted full-rank solution is recovered") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix<double> H = random_matrix(rng, 40, 8);
        Matrix<double> beta_star = random_matrix(rng, 8, 2);
        const Matrix<double> beta = solve_min_norm<double>({H, (H * beta_star).eval(), 0.0});
        CHECK((beta - beta_star).norm() <= 1e-8 * beta_star.norm());
    }
}

TEST_CASE("the pseudoinverse satisfies the four Penrose conditions") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 100; ++rep) {
        const Index rows = 1 + static_cast<Index>(rng() % 20);
        const Index cols = 1 + static_cast<Index>(rng() % 20);
        Matrix<double> A = random_matrix(rng, rows, cols);
        if (rep % 3 == 0 && rows > 1 && cols > 1) {
            // Force rank deficiency with a duplicated column and row.
            A.col(cols - 1) = A.col(0);
            A.row(rows - 1) = A.row(0);
        }
        const Matrix<double> P = pseudoinverse(A);
        const double scale = std::max(1.0, A.norm());
        CHECK((A * P * A - A).norm() <= 1e-8 * scale);
        CHECK((P * A * P - P).norm() <= 1e-8 * std::max(1.0, P.norm()));
        CHECK(((A * P).transpose() - A * P).norm() <= 1e-8 * scale);
        CHECK(((P * A).transpose() - P * A).norm() <= 1e-8 * scale);
    }
}

TEST_CASE("normal-equation forms agree with the SVD route on full-rank systems") {
    std::mt19937_64 rng(59);

    // Tall full-column-rank: beta = (H^T H)^-1 H^T D.
    Matrix<double> tall = random_matrix(rng, 30, 6);
    Matrix<double> d_tall = random_matrix(rng, 30, 1);
    const Matrix<double> svd_tall = solve_min_norm<double>({tall, d_tall, 0.0});
    const Matrix<double> normal_tall =
        (tall.transpose() * tall).inverse() * tall.transpose() * d_tall;
    CHECK((svd_tall - normal_tall).norm() <= 1e-8 * normal_tall.norm());

    // Wide full-row-rank: beta = H^T (H H^T)^-1 D.
    Matrix<double> wide = random_matrix(rng, 6, 30);
    Matrix<double> d_wide = random_matrix(rng, 6, 1);
    const Matrix<double> svd_wide = solve_min_norm<double>({wide, d_wide, 0.0});
    const Matrix<double> normal_wide =
        wide.transpose() * (wide * wide.transpose()).inverse() * d_wide;
    CHECK((svd_wide - normal_wide).norm() <= 1e-8 * normal_wide.norm());
}

TEST_CASE("the ridge path solves the regularized normal equations") {
    std::mt19937_64 rng(61);
    Matrix<double> H = random_matrix(rng, 25, 7);
    Matrix<double> D = random_matrix(rng, 25, 1);
    const double lambda = 0.37;
    const Matrix<double> beta = solve_min_norm<double>({H, D, lambda});
    const Matrix<double> direct =
        (H.transpose() * H + lambda * Matrix<double>::Identity(7, 7)).inverse() *
        H.transpose() * D;
    CHECK((beta - direct).norm() <= 1e-10 * direct.norm());
}

TEST_CASE("bad systems are rejected") {
    Matrix<double> H = Matrix<double>::Ones(3, 2);
    Matrix<double> D = Matrix<double>::Ones(4, 1);
    CHECK_THROWS_AS(solve_min_norm<double>({H, D, 0.0}), DimensionMismatch);

    Matrix<double> bad = H;
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_min_norm<double>({bad, Matrix<double>::Ones(3, 1), 0.0}),
                    NonFiniteEntries);
    CHECK_THROWS_AS(solve_min_norm<double>({H, Matrix<double>::Ones(3, 1), -1.0}), DataError);
    CHECK_THROWS_AS(pseudoinverse(bad), NonFiniteEntries);
}
