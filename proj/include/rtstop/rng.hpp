#pragma once

// Counter-based random number streams for reproducible parallel Monte Carlo.
// Every stream is identified by a (master seed, lane) pair; draws are pure
// functions of that identity plus a draw counter, so results do not depend on
// worker count or scheduling order.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace rtstop {

// What a stream is used for. Distinct purposes never share draws.
enum class StreamPurpose : std::uint8_t {
    truncation = 1,
    train = 2,
    eval = 3,
    dual_outer = 4,
    dual_sub = 5,
    threshold_fit = 6,
    threshold_eval = 7,
    improve_outer = 8,
    improve_sub = 9,
};

struct Lane {
    StreamPurpose purpose = StreamPurpose::train;
    std::uint64_t path = 0;
    std::uint32_t exercise = 0;
    std::uint32_t sub = 0;
};

namespace detail {

struct PhiloxBlock {
    std::uint32_t x[4];
};

// Philox4x32-10 round function (Salmon et al. counter-based generator).
inline PhiloxBlock philox4x32(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                              std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return PhiloxBlock{{c0, c1, c2, c3}};
}

// Inverse standard normal CDF: Acklam's rational approximation polished with
// one Halley step against erfc, giving near machine precision on (0,1).
inline double inverse_normal_cdf(double p) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;

    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement.
    const double e = 0.5 * std::erfc(-x / 1.4142135623730951) - p;
    const double u = e * 2.5066282746310002 * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

// Derives a child seed for an indexed unit of work (e.g. one table cell).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return detail::mix64(master ^ detail::mix64(index + 1));
}

// One lane of a counter-based generator. Cheap to copy; copies replay the
// identical draw sequence.
class RngStream {
  public:
    RngStream(std::uint64_t seed, Lane lane)
        : k0_(static_cast<std::uint32_t>(seed)),
          k1_(static_cast<std::uint32_t>(seed >> 32)),
          c1_(static_cast<std::uint32_t>(lane.path)),
          c2_(lane.sub),
          c3_((static_cast<std::uint32_t>(lane.purpose) << 24) ^
              (static_cast<std::uint32_t>(lane.path >> 32) << 16) ^ lane.exercise) {}

    std::uint32_t next_u32() {
        if (avail_ == 0) {
            block_ = detail::philox4x32(counter_++, c1_, c2_, c3_, k0_, k1_);
            avail_ = 4;
        }
        return block_.x[4 - avail_--];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return detail::inverse_normal_cdf(uniform()); }

    double exponential(double rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
        return -std::log(uniform()) / rate;
    }

    // Poisson by CDF inversion; one uniform per draw for moderate means,
    // chunked additively when the mean is too large for exp(-mean).
    long poisson(double mean) {
        if (mean < 0.0 || !std::isfinite(mean))
            throw std::invalid_argument("poisson mean must be finite and non-negative");
        long total = 0;
        while (mean > 500.0) {
            total += poisson_small(500.0);
            mean -= 500.0;
        }
        return total + poisson_small(mean);
    }

  private:
    long poisson_small(double mean) {
        if (mean == 0.0) return 0;
        const double u = uniform();
        double p = std::exp(-mean);
        double cdf = p;
        long k = 0;
        while (u > cdf) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
            if (k > 2000) break;  // cdf within 1 ulp of 1 long before this
        }
        return k;
    }

    std::uint32_t k0_, k1_;
    std::uint32_t c1_, c2_, c3_;
    std::uint32_t counter_ = 0;
    detail::PhiloxBlock block_{};
    int avail_ = 0;
};

}  // namespace rtstop
