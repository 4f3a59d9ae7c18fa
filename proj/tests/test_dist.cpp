#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "linmod/dist.hpp"

using namespace linmod;

TEST_CASE("f_sf: boundary and reference values") {
    CHECK(f_sf(0.0, {1, 4}) == doctest::Approx(1.0));
    // F(1,4) upper 5% point
    CHECK(std::abs(f_sf(7.708649, {1, 4}) - 0.05) < 5e-6);
    CHECK_THROWS(f_sf(-1.0, {1, 4}));
    CHECK_THROWS(f_sf(1.0, {0, 4}));
}

TEST_CASE("f_sf: median self-consistency by bisection") {
    for (auto [d1, d2] : {std::pair{1.0, 4.0}, {3.0, 7.0}, {10.0, 200.0}}) {
        double lo = 0.0, hi = 50.0;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (f_sf(mid, {d1, d2}) > 0.5)
                lo = mid;
            else
                hi = mid;
        }
        const double median = 0.5 * (lo + hi);
        CHECK(std::abs(f_sf(median, {d1, d2}) - 0.5) < 1e-8);
    }
}

TEST_CASE("f_sf: monotone nonincreasing on a grid") {
    for (auto [d1, d2] : {std::pair{1.0, 1.0}, {2.0, 9.0}, {120.0, 200.0}}) {
        double prev = 1.0;
        for (double x = 0.0; x <= 20.0; x += 0.25) {
            const double v = f_sf(x, {d1, d2});
            CHECK(v <= prev + 1e-14);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("incomplete_beta: symmetry I_x(a,b) = 1 - I_{1-x}(b,a)") {
    for (double x : {0.1, 0.37, 0.5, 0.93})
        for (auto [a, b] : {std::pair{0.5, 2.0}, {3.0, 3.0}, {10.0, 1.5}})
            CHECK(incomplete_beta(a, b, x) ==
                  doctest::Approx(1.0 - incomplete_beta(b, a, 1.0 - x)).epsilon(1e-12));
}

TEST_CASE("normal_sampler: determinism and moments") {
    NormalSampler s1(42), s2(42);
    for (int i = 0; i < 1000; ++i) CHECK(s1.next() == s2.next());

    NormalSampler s(99);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = s.next();
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("normal_sampler: worker streams differ and are reproducible") {
    auto w0 = NormalSampler::for_worker(7, 0);
    auto w1 = NormalSampler::for_worker(7, 1);
    auto w0_again = NormalSampler::for_worker(7, 0);
    bool all_equal = true;
    for (int i = 0; i < 100; ++i) {
        const double a = w0.next(), b = w1.next();
        CHECK(a == w0_again.next());
        if (a != b) all_equal = false;
    }
    CHECK(!all_equal);
}

TEST_CASE("chi2_mean_check: squared standard normals have mean 1") {
    NormalSampler s(5);
    std::vector<double> samples;
    for (int i = 0; i < 20000; ++i) {
        const double v = s.next();
        samples.push_back(v * v);
    }
    CHECK(chi2_mean_check(samples, 1.0, 0.0));
    CHECK(!chi2_mean_check(samples, 5.0, 0.0));
    CHECK_THROWS(chi2_mean_check({1.0, 2.0}, 1.0, 0.0));
}

TEST_CASE("chi2_mean_check: shifted mean tracks df + delta2") {
    // 3 df chi-squared with noncentrality: sum of squares of N(mu_i, 1)
    NormalSampler s(17);
    const double mu[3] = {1.0, 2.0, -2.0};
    const double delta2 = 1.0 + 4.0 + 4.0;
    std::vector<double> samples;
    for (int i = 0; i < 50000; ++i) {
        double ss = 0.0;
        for (double m : mu) {
            const double v = m + s.next();
            ss += v * v;
        }
        samples.push_back(ss);
    }
    CHECK(chi2_mean_check(samples, 3.0, delta2));
}
