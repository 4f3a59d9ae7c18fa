#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace linmod {

struct FParams {
    double df_num;
    double df_den;
};

// Upper-tail probability P(F > x) for the central F distribution, via the
// regularized incomplete beta function (Lentz continued fraction).
double f_sf(double x, const FParams& p);

// Regularized incomplete beta I_x(a, b). Exposed for testing.
double incomplete_beta(double a, double b, double x);

// True iff the sample mean is within 4 standard errors of df + delta2, the
// mean of a noncentral chi-squared.
bool chi2_mean_check(const std::vector<double>& samples, double df, double delta2);

// Deterministic standard-normal stream. The 64-bit Mersenne Twister output
// sequence is pinned by the standard; the Box-Muller pairing is ours, so
// the stream does not depend on the library's distribution implementation.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed);

    double next();

    // Independent stream for a Monte Carlo worker: mixes the worker index
    // into the base seed so fan-out is order-independent.
    static NormalSampler for_worker(std::uint64_t seed, std::uint64_t worker);

private:
    double uniform01();

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace linmod
