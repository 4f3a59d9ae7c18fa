#include "linmod/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace linmod {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-30;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete_beta: a,b > 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // Use the fraction on the side where it converges fast.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_sf(double x, const FParams& p) {
    if (!(p.df_num > 0.0 && p.df_den > 0.0))
        throw std::invalid_argument("f_sf: degrees of freedom must be positive");
    if (x < 0.0) throw std::invalid_argument("f_sf: x must be nonnegative");
    if (x == 0.0) return 1.0;
    // P(F > x) = I_{d2/(d2 + d1 x)}(d2/2, d1/2)
    const double t = p.df_den / (p.df_den + p.df_num * x);
    return incomplete_beta(0.5 * p.df_den, 0.5 * p.df_num, t);
}

bool chi2_mean_check(const std::vector<double>& samples, double df, double delta2) {
    if (samples.size() < 10000)
        throw std::invalid_argument("chi2_mean_check: need at least 10000 samples");
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= static_cast<double>(samples.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(samples.size()));
    return std::abs(mean - (df + delta2)) <= 4.0 * se;
}

NormalSampler::NormalSampler(std::uint64_t seed) : rng_(seed) {}

NormalSampler NormalSampler::for_worker(std::uint64_t seed, std::uint64_t worker) {
    // splitmix64 step keeps nearby (seed, worker) pairs decorrelated.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (worker + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return NormalSampler(z ^ (z >> 31));
}

double NormalSampler::uniform01() {
    // 53-bit mantissa, in (0, 1] so log() below is safe.
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * 3.14159265358979323846 * v;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace linmod
