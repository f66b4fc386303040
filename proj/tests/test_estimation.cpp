#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cesaro/estimation.hpp"
#include "cesaro/extremal.hpp"
#include "cesaro/minimizer.hpp"

using namespace cesaro;

TEST_CASE("analytic norms for both operators") {
    CHECK(analytic_norm(OperatorKind::cesaro, Exponent(4.0)) ==
          doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-12));
    CHECK(analytic_norm(OperatorKind::cesaro, Exponent::infinite()) == 2.0);
    CHECK(analytic_norm(OperatorKind::cesaro_transpose, Exponent(4.0)) == 3.0);
    // transpose below 2 resolves through duality
    CHECK(analytic_norm(OperatorKind::cesaro_transpose, Exponent(1.5)) ==
          doctest::Approx(1.1951439825080237).epsilon(1e-12));
    CHECK_THROWS_AS(
        analytic_norm(OperatorKind::cesaro_transpose, Exponent::infinite()),
        std::domain_error);
}

TEST_CASE("degenerate one by one section gives a zero bound") {
    const NormEstimate est = dual_power_lower_bound(
        OperatorKind::cesaro, 2.0, 1, RealVector{1.0}, 50, 1e-12);
    CHECK(est.lower_bound == 0.0);
}

TEST_CASE("input contract") {
    const RealVector x0(16, 1.0);
    CHECK_THROWS_AS(dual_power_lower_bound(OperatorKind::cesaro, 1.0, 16, x0,
                                           100, 1e-12),
                    std::domain_error);
    CHECK_THROWS_AS(dual_power_lower_bound(
                        OperatorKind::cesaro,
                        std::numeric_limits<double>::infinity(), 16, x0, 100,
                        1e-12),
                    std::domain_error);
    CHECK_THROWS_AS(dual_power_lower_bound(OperatorKind::cesaro, 2.0, 8, x0,
                                           100, 1e-12),
                    std::domain_error);
    CHECK_THROWS_AS(dual_power_lower_bound(OperatorKind::cesaro, 2.0, 16,
                                           RealVector(16, 0.0), 100, 1e-12),
                    std::domain_error);
}

TEST_CASE("a p barely above 1 stays within its analytic ceiling") {
    const NormEstimate est = dual_power_lower_bound(
        OperatorKind::cesaro, 1.0001, 16, RealVector(16, 1.0), 50, 1e-12);
    CHECK(est.analytic == doctest::Approx(1.0 / 0.0001).epsilon(1e-9));
    CHECK(est.lower_bound <= est.analytic * (1.0 + 1e-9));
    CHECK(std::isfinite(est.lower_bound));
}

TEST_CASE("ratio traces never decrease") {
    const RealVector seed = ExtremalSequence(3.0, 8).build(256);
    const NormEstimate est = dual_power_lower_bound(OperatorKind::cesaro, 3.0,
                                                    256, seed, 400, 1e-13);
    REQUIRE(est.ratio_trace.size() >= 2);
    for (std::size_t i = 1; i < est.ratio_trace.size(); ++i) {
        CHECK(est.ratio_trace[i] >=
              est.ratio_trace[i - 1] * (1.0 - 1e-13) - 1e-300);
    }
    CHECK(est.lower_bound <= est.analytic * (1.0 + 1e-9));
}

TEST_CASE("the extremal seed ratio is a floor for the converged bound") {
    const std::int64_t N = 1024;
    const ExtremalReport rep = discrete_ratio(4.0, 16, N);
    const RealVector seed = ExtremalSequence(4.0, 16).build(N);
    const NormEstimate est = dual_power_lower_bound(OperatorKind::cesaro, 4.0,
                                                    N, seed, 400, 1e-13);
    CHECK(std::pow(est.lower_bound, 4.0) >= rep.ratio_p * (1.0 - 1e-12));
    CHECK(est.ratio_trace.front() ==
          doctest::Approx(std::pow(rep.ratio_p, 0.25)).epsilon(1e-12));
}

TEST_CASE("self-adjoint exponent reaches most of its section norm at N = 256") {
    MultiStartOptions opt;
    opt.starts = 4;
    opt.max_iter = 2000;
    const NormEstimate est =
        multi_start_lower_bound(OperatorKind::cesaro, 2.0, 256, opt);
    CHECK(est.analytic == 1.0);
    CHECK(est.lower_bound <= 1.0 + 1e-9);
    CHECK(est.lower_bound >= 0.9);
}

TEST_CASE("multistart bounds grow with the section size") {
    MultiStartOptions opt;
    opt.starts = 4;
    opt.max_iter = 300;
    double prev = 0.0;
    for (std::int64_t N : {64, 256, 1024}) {
        const NormEstimate est =
            multi_start_lower_bound(OperatorKind::cesaro, 4.0, N, opt);
        CHECK(est.lower_bound >= prev * (1.0 - 1e-6));
        CHECK(est.lower_bound <= est.analytic * (1.0 + 1e-9));
        prev = est.lower_bound;
    }
}

TEST_CASE("multistart is deterministic and thread count neutral") {
    MultiStartOptions opt;
    opt.starts = 6;
    opt.max_iter = 120;
    opt.seed = 0xABCDEF;
    const NormEstimate a =
        multi_start_lower_bound(OperatorKind::cesaro, 2.5, 128, opt);
    opt.threads = 4;
    const NormEstimate b =
        multi_start_lower_bound(OperatorKind::cesaro, 2.5, 128, opt);
    CHECK(a.lower_bound == b.lower_bound);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("both dual routes reach the same section norm") {
    // matched seeds, generous budget: the remaining discrepancy is iteration
    // truncation only
    CHECK(duality_check(2.0, 128, 8000) <= 1e-6);
    CHECK(duality_check(4.0, 256) <= 1e-3);
    // the 1x1 section of the averaging operator is the identity
    CHECK(duality_check(2.0, 1) == 0.0);
}

TEST_CASE("transpose side multistart stays under its analytic value") {
    MultiStartOptions opt;
    opt.starts = 4;
    opt.max_iter = 300;
    for (double p : {1.5, 2.0, 3.0}) {
        const NormEstimate est =
            multi_start_lower_bound(OperatorKind::cesaro_transpose, p, 256, opt);
        CHECK(est.lower_bound <= est.analytic * (1.0 + 1e-9));
        CHECK(est.lower_bound > 0.0);
    }
}

TEST_CASE("interpolation bound between supercritical exponents") {
    const InterpolationReport rep = interpolation_spot_check(3.0, 3.5, 4.0, 64);
    CHECK(rep.holds);
    CHECK(rep.rhs - rep.lhs > 0.0);
    CHECK(rep.theta == doctest::Approx((1.0 / 3.5 - 1.0 / 3.0) /
                                       (1.0 / 4.0 - 1.0 / 3.0)));
    CHECK(rep.section_p <= rep.lhs * (1.0 + 1e-9));

    const InterpolationReport wide = interpolation_spot_check(2.5, 3.0, 4.0, 64);
    CHECK(wide.holds);
    CHECK(wide.rhs - wide.lhs > 0.0);

    CHECK_THROWS_AS(interpolation_spot_check(3.0, 3.0, 3.0, 64),
                    std::domain_error);
    CHECK_THROWS_AS(interpolation_spot_check(2.0, 3.0, 4.0, 64),
                    std::domain_error);
}
