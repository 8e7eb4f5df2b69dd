#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dtt/oracle.hpp"
#include "dtt/rng.hpp"

using namespace dtt;

TEST_CASE("basic integrals") {
    QuadGrid g1 = QuadGrid::make(VectorXd::Zero(1), VectorXd::Ones(1), 8);
    CHECK(quad_integral([](const VectorXd& x) { return x[0]; }, g1) ==
          doctest::Approx(0.5).epsilon(1e-14));
    QuadGrid g2 = QuadGrid::make(VectorXd::Zero(2), VectorXd::Ones(2), 8);
    CHECK(quad_integral([](const VectorXd& x) { return x[0] * x[1]; }, g2) ==
          doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("degree-7 polynomial is exact at order 4") {
    // per dimension: int_0^1 (x^7 + 2 x^3) dx = 1/8 + 1/2 = 5/8
    QuadGrid g = QuadGrid::make(VectorXd::Zero(3), VectorXd::Ones(3), 4);
    auto f = [](const VectorXd& x) {
        double p = 1.0;
        for (int k = 0; k < 3; ++k)
            p *= std::pow(x[k], 7) + 2.0 * std::pow(x[k], 3);
        return p;
    };
    CHECK(quad_integral(f, g) ==
          doctest::Approx(std::pow(5.0 / 8, 3)).epsilon(1e-12));
}

TEST_CASE("grid invariants and dimension caps") {
    QuadGrid g = QuadGrid::make(VectorXd::Constant(2, -1.0),
                                VectorXd::Constant(2, 3.0), 12);
    for (int k = 0; k < 2; ++k) {
        CHECK(g.weights[k].minCoeff() > 0);
        CHECK(g.weights[k].sum() == doctest::Approx(4.0).epsilon(1e-13));
    }
    CHECK(g.size() == 144);
    CHECK_THROWS(QuadGrid::make(VectorXd::Zero(5), VectorXd::Ones(5), 4));
    QuadGrid g4 = QuadGrid::make(VectorXd::Zero(4), VectorXd::Ones(4), 3);
    MatrixXd C = MatrixXd::Identity(4, 4);
    TargetDensity t = target_gaussian(C, VectorXd::Constant(4, -1),
                                      VectorXd::Constant(4, 1));
    CHECK_THROWS(divergences(t, [](const VectorXd&) { return 0.0; }, g4));
    CHECK_THROWS(quad_integral(
        [](const VectorXd&) { return std::numeric_limits<double>::quiet_NaN(); },
        QuadGrid::make(VectorXd::Zero(1), VectorXd::Ones(1), 4)));
}

TEST_CASE("identical densities give vanishing divergences") {
    MatrixXd C(1, 1);
    C << 1.0;
    TargetDensity t = target_gaussian(C, VectorXd::Constant(1, -6),
                                      VectorXd::Constant(1, 6));
    QuadGrid g = QuadGrid::make(t.lower, t.upper, 80);
    double z = quad_integral(
        [&](const VectorXd& x) {
            return std::exp(t.log_density(MatrixXd(x.transpose()))[0]);
        },
        g);
    auto approx = [&](const VectorXd& x) {
        return t.log_density(MatrixXd(x.transpose()))[0] - std::log(z);
    };
    auto surrogate = [&](const VectorXd& x) {
        return std::exp(0.5 * t.log_density(MatrixXd(x.transpose()))[0]);
    };
    Divergences d = divergences(t, approx, g, surrogate);
    CHECK(d.hellinger < 1e-9);
    CHECK(d.tv < 1e-9);
    CHECK(d.chi2 < 1e-9);
    CHECK(d.l2_sqrt_err < 1e-9);
    CHECK(d.z == doctest::Approx(z).epsilon(1e-12));
    CHECK(d.z_hat == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("two gaussians match the closed-form Hellinger distance") {
    // N(0, s1^2) vs N(mu, s2^2) on a wide box (truncation negligible)
    const double s1 = 1.0, s2 = 1.3, mu = 0.4;
    MatrixXd C(1, 1);
    C << s1 * s1;
    TargetDensity t = target_gaussian(C, VectorXd::Constant(1, -10),
                                      VectorXd::Constant(1, 10));
    auto approx = [&](const VectorXd& x) {
        double d = (x[0] - mu) / s2;
        return -0.5 * d * d - 0.5 * std::log(2 * M_PI * s2 * s2);
    };
    QuadGrid g = QuadGrid::make(t.lower, t.upper, 150);
    Divergences d = divergences(t, approx, g);
    double bc = std::sqrt(2 * s1 * s2 / (s1 * s1 + s2 * s2)) *
                std::exp(-mu * mu / (4 * (s1 * s1 + s2 * s2)));
    double want = std::sqrt(1.0 - bc);
    CHECK(d.hellinger == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("inequality chain D_TV <= sqrt(2) D_H on random pairs") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        double s1 = 0.5 + rng.uniform(), s2 = 0.5 + rng.uniform();
        double mu = 2.0 * rng.uniform() - 1.0;
        MatrixXd C(1, 1);
        C << s1 * s1;
        TargetDensity t = target_gaussian(C, VectorXd::Constant(1, -12),
                                          VectorXd::Constant(1, 12));
        auto approx = [&](const VectorXd& x) {
            double d = (x[0] - mu) / s2;
            return -0.5 * d * d - 0.5 * std::log(2 * M_PI * s2 * s2);
        };
        QuadGrid g = QuadGrid::make(t.lower, t.upper, 120);
        Divergences d = divergences(t, approx, g);
        CHECK(d.tv <= std::sqrt(2.0) * d.hellinger + 1e-12);
        CHECK(d.chi2 >= 0.0);
    }
}

TEST_CASE("self-consistency under order doubling") {
    MatrixXd C(2, 2);
    C << 1.0, 0.4, 0.4, 0.8;
    TargetDensity t = target_gaussian(C, VectorXd::Constant(2, -5),
                                      VectorXd::Constant(2, 5));
    auto approx = [&](const VectorXd& x) {
        return -0.5 * x.squaredNorm() - std::log(2 * M_PI);
    };
    QuadGrid g1 = QuadGrid::make(t.lower, t.upper, 60);
    QuadGrid g2 = QuadGrid::make(t.lower, t.upper, 120);
    Divergences a = divergences(t, approx, g1);
    Divergences b = divergences(t, approx, g2);
    CHECK(a.hellinger == doctest::Approx(b.hellinger).epsilon(1e-6));
    // |f - fh| is kinked where the densities cross, so the TV integral only
    // converges algebraically in the order
    CHECK(a.tv == doctest::Approx(b.tv).epsilon(1e-2));
    CHECK(a.z == doctest::Approx(b.z).epsilon(1e-6));
}
