#include "ergw/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ergw/errors.hpp"
#include "ergw/expsum.hpp"

namespace ergw::dynsys {

namespace {
using u128 = unsigned __int128;

std::int64_t isqrt64(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::int64_t divisor_summatory(std::int64_t n) {
    const std::int64_t r = isqrt64(n);
    std::int64_t s = 0;
    for (std::int64_t k = 1; k <= r; ++k) s += n / k;
    return 2 * s - r * r;
}
}  // namespace

Observable character(std::int64_t m) {
    return [m](double x) {
        const double ph = 2.0 * M_PI * static_cast<double>(m) * x;
        return std::complex<double>{std::cos(ph), std::sin(ph)};
    };
}

Observable indicator(double a, double b) {
    return [a, b](double x) {
        return std::complex<double>{(x >= a && x < b) ? 1.0 : 0.0, 0.0};
    };
}

Observable step_observable() {
    return [](double x) { return std::complex<double>{x < 0.5 ? 1.0 : -1.0, 0.0}; };
}

Observable tabulated(std::vector<std::complex<double>> table) {
    if (table.empty()) throw ParameterError("tabulated observable: empty table");
    return [t = std::move(table)](double x) {
        auto i = static_cast<std::size_t>(x * static_cast<double>(t.size()));
        if (i >= t.size()) i = t.size() - 1;
        return t[i];
    };
}

Observable constant_one() {
    return [](double) { return std::complex<double>{1.0, 0.0}; };
}

// ---------------------------------------------------------------------------
// DynamicalSystem
// ---------------------------------------------------------------------------

DynamicalSystem DynamicalSystem::rotation(double alpha) {
    DynamicalSystem s;
    s.kind_ = "rotation";
    s.alpha_ = alpha;
    return s;
}

DynamicalSystem DynamicalSystem::doubling(double x0) {
    DynamicalSystem s;
    s.kind_ = "doubling";
    s.x0_ = x0;
    return s;
}

DynamicalSystem DynamicalSystem::doubling_seeded(std::uint64_t seed) {
    DynamicalSystem s;
    s.kind_ = "doubling";
    s.seed_ = seed;
    s.seeded_bits_ = true;
    return s;
}

DynamicalSystem DynamicalSystem::bernoulli(std::uint64_t seed) {
    DynamicalSystem s;
    s.kind_ = "bernoulli";
    s.seed_ = seed;
    return s;
}

std::vector<double> DynamicalSystem::orbit(std::int64_t count, std::optional<double> x0) const {
    if (count < 0) throw ParameterError("orbit: count >= 0 required");
    std::vector<double> out(static_cast<std::size_t>(count) + 1);

    if (kind_ == "rotation") {
        // tau^k x = frac(x0 + k alpha), evaluated per k in extended precision
        const long double base = static_cast<long double>(x0.value_or(0.0));
        const long double al = static_cast<long double>(alpha_);
        for (std::int64_t k = 0; k <= count; ++k) {
            long double v = base + static_cast<long double>(k) * al;
            v -= floorl(v);
            out[k] = static_cast<double>(v);
        }
        return out;
    }

    if (kind_ == "doubling") {
        if (seeded_bits_) {
            // doubling along a point with i.i.d. random binary digits:
            // x_j = 0.b_j b_{j+1} ..., kept as a sliding 64-bit window
            std::mt19937_64 rng(seed_);
            std::uint64_t window = rng();
            std::uint64_t fresh = rng();
            int fresh_left = 64;
            for (std::int64_t j = 0; j <= count; ++j) {
                out[j] = static_cast<double>(window) * 0x1p-64;
                const std::uint64_t bit = fresh >> 63;
                fresh <<= 1;
                if (--fresh_left == 0) {
                    fresh = rng();
                    fresh_left = 64;
                }
                window = (window << 1) | bit;
            }
            return out;
        }
        // 128-bit fixed-point doubling; exact until the bits run out
        const long double xl = static_cast<long double>(x0.value_or(x0_));
        const long double scaled_hi = floorl(ldexpl(xl, 64));
        const long double rem = ldexpl(xl, 64) - scaled_hi;
        u128 state = (static_cast<u128>(static_cast<std::uint64_t>(scaled_hi)) << 64) |
                     static_cast<u128>(static_cast<std::uint64_t>(floorl(ldexpl(rem, 64))));
        for (std::int64_t j = 0; j <= count; ++j) {
            out[j] = static_cast<double>(static_cast<std::uint64_t>(state >> 64)) * 0x1p-64;
            state <<= 1;
        }
        return out;
    }

    // bernoulli: fresh i.i.d. uniform each step
    std::mt19937_64 rng(seed_);
    for (std::int64_t j = 0; j <= count; ++j)
        out[j] = static_cast<double>(rng() >> 11) * 0x1p-53;
    return out;
}

// ---------------------------------------------------------------------------
// averages
// ---------------------------------------------------------------------------

AverageSeries weighted_average(const DynamicalSystem& system,
                               const arith::ArithmeticTable& weights, const Observable& f,
                               double x0, const std::vector<std::int64_t>& n_grid) {
    if (n_grid.empty()) throw ParameterError("weighted_average: empty grid");
    if (!std::is_sorted(n_grid.begin(), n_grid.end()))
        throw ParameterError("weighted_average: grid must be ascending");
    const std::int64_t nmax = n_grid.back();
    if (nmax < 1) throw ParameterError("weighted_average: grid entries >= 1 required");
    if (weights.size() < nmax)
        throw ResourceError("weighted_average: weights table covers only N = " +
                            std::to_string(weights.size()));

    const auto orb = system.orbit(nmax, x0);

    AverageSeries series;
    series.weights_name = weights.name();
    series.n_grid = n_grid;
    series.values.reserve(n_grid.size());
    series.w_used.reserve(n_grid.size());

    std::complex<double> acc{0.0, 0.0};
    std::size_t gi = 0;
    for (std::int64_t k = 1; k <= nmax && gi < n_grid.size(); ++k) {
        acc += weights.value(k) * f(orb[static_cast<std::size_t>(k)]);
        while (gi < n_grid.size() && n_grid[gi] == k) {
            const double wn = weights.abs_summatory(k);
            if (wn == 0.0) throw DegenerateInputError("weighted_average: W_n = 0 at n = " + std::to_string(k));
            series.values.push_back(acc / wn);
            series.w_used.push_back(wn);
            ++gi;
        }
    }
    return series;
}

std::vector<double> rotation_character_limit(double alpha,
                                             const std::vector<std::int64_t>& n_grid) {
    std::vector<double> out;
    out.reserve(n_grid.size());
    for (const auto n : n_grid) {
        const double dn = static_cast<double>(divisor_summatory(n));
        out.push_back(std::abs(expsum::divisor_expsum_hyperbola(n, alpha).value) / dn);
    }
    return out;
}

MobiusAverageSeries mobius_weighted(const DynamicalSystem& system,
                                    const arith::ArithmeticTable& mu, double h,
                                    const Observable& f, double x0,
                                    const std::vector<std::int64_t>& n_grid) {
    if (h < 0.0) throw ParameterError("mobius_weighted: h >= 0 required");
    if (n_grid.empty() || !std::is_sorted(n_grid.begin(), n_grid.end()))
        throw ParameterError("mobius_weighted: ascending non-empty grid required");
    const std::int64_t nmax = n_grid.back();
    if (mu.size() < nmax) throw ResourceError("mobius_weighted: table too small");

    const auto orb = system.orbit(nmax, x0);

    MobiusAverageSeries series;
    series.n_grid = n_grid;
    std::complex<double> acc{0.0, 0.0};
    std::size_t gi = 0;
    for (std::int64_t k = 1; k <= nmax && gi < n_grid.size(); ++k) {
        acc += mu.value(k) * f(orb[static_cast<std::size_t>(k)]);
        while (gi < n_grid.size() && n_grid[gi] == k) {
            const double scale =
                std::pow(std::log(static_cast<double>(k)), h) / static_cast<double>(k);
            series.values.push_back(scale * acc);
            ++gi;
        }
    }
    series.suffix_sup.assign(series.values.size(), 0.0);
    double sup = 0.0;
    for (std::size_t i = series.values.size(); i-- > 0;) {
        sup = std::max(sup, std::abs(series.values[i]));
        series.suffix_sup[i] = sup;
    }
    return series;
}

double convergence_diagnostic(const std::vector<std::complex<double>>& series,
                              double tail_fraction) {
    if (series.size() < 4) throw ParameterError("convergence_diagnostic: series length >= 4 required");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw ParameterError("convergence_diagnostic: tail fraction in (0,1] required");
    const auto len = series.size();
    auto tail = static_cast<std::size_t>(
        std::ceil(tail_fraction * static_cast<double>(len)));
    tail = std::clamp<std::size_t>(tail, 2, len);
    double dev = 0.0;
    for (std::size_t i = len - tail; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j)
            dev = std::max(dev, std::abs(series[i] - series[j]));
    return dev;
}

std::vector<std::int64_t> dyadic_grid(std::int64_t n) {
    if (n < 2) throw ParameterError("dyadic_grid: n >= 2 required");
    std::vector<std::int64_t> g;
    for (std::int64_t v = 2; v <= n; v *= 2) g.push_back(v);
    if (g.back() != n) g.push_back(n);
    return g;
}

}  // namespace ergw::dynsys
