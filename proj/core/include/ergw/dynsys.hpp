#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ergw/arith.hpp"

namespace ergw::dynsys {

// observable f: [0,1) -> C
using Observable = std::function<std::complex<double>(double)>;

Observable character(std::int64_t m);                  // e^{2 pi i m x}
Observable indicator(double a, double b);              // 1_{[a,b)}
Observable step_observable();                          // 1_{[0,1/2)} - 1_{[1/2,1)}
Observable tabulated(std::vector<std::complex<double>> table);  // f(x) = table[floor(x len)]
Observable constant_one();

// ---------------------------------------------------------------------------
// Measure-preserving systems on [0,1):
//   rotation(alpha):   x -> x + alpha mod 1 (orbit points evaluated directly
//                      in extended precision, no drift accumulation)
//   doubling(x0):      x -> 2x mod 1 with 128-bit fixed-point state; exact
//                      while bits remain, collapses to 0 after 128 steps for
//                      dyadic x0 (use the seeded variant for long orbits)
//   doubling_seeded:   doubling along a point with an i.i.d. random binary
//                      expansion drawn from the seed (exact dynamics of a
//                      generic point, any orbit length)
//   bernoulli(seed):   fresh i.i.d. uniform state each step
// ---------------------------------------------------------------------------
class DynamicalSystem {
  public:
    static DynamicalSystem rotation(double alpha);
    static DynamicalSystem doubling(double x0);
    static DynamicalSystem doubling_seeded(std::uint64_t seed);
    static DynamicalSystem bernoulli(std::uint64_t seed);

    const std::string& kind() const { return kind_; }

    // orbit values tau^0 x0, tau^1 x0, ..., tau^count x0 (count+1 entries);
    // rotation ignores the stored base point when x0 is supplied
    std::vector<double> orbit(std::int64_t count, std::optional<double> x0 = std::nullopt) const;

  private:
    std::string kind_;
    double alpha_ = 0.0;
    double x0_ = 0.0;
    std::uint64_t seed_ = 0;
    bool seeded_bits_ = false;
};

// ---------------------------------------------------------------------------
// Weighted Birkhoff averages A_n f(x0) = (1/W_n) sum_{k=1}^{n} w_k f(tau^k x0).
// ---------------------------------------------------------------------------
struct AverageSeries {
    std::string weights_name;
    std::vector<std::int64_t> n_grid;
    std::vector<std::complex<double>> values;
    std::vector<double> w_used;  // W_n at each grid point
};

AverageSeries weighted_average(const DynamicalSystem& system,
                               const arith::ArithmeticTable& weights, const Observable& f,
                               double x0, const std::vector<std::int64_t>& n_grid);

// |D_n(alpha)| / D_n along the grid (rotation character decay).
std::vector<double> rotation_character_limit(double alpha,
                                             const std::vector<std::int64_t>& n_grid);

// Mobius-weighted averages M_{n,h} = ((log n)^h / n) sum_{k<=n} mu(k) f(tau^k x)
// along the grid, plus the decay diagnostic sup_{m >= n} |M_{m,h}| (suffix sup
// over the grid).
struct MobiusAverageSeries {
    std::vector<std::int64_t> n_grid;
    std::vector<std::complex<double>> values;
    std::vector<double> suffix_sup;
};

MobiusAverageSeries mobius_weighted(const DynamicalSystem& system,
                                    const arith::ArithmeticTable& mu, double h,
                                    const Observable& f, double x0,
                                    const std::vector<std::int64_t>& n_grid);

// max pairwise deviation over the last ceil(tail_fraction * len) entries
// (empirical Cauchy defect).
double convergence_diagnostic(const std::vector<std::complex<double>>& series,
                              double tail_fraction);

// dyadic grid 2, 4, ..., up to n (n appended when not a power of two)
std::vector<std::int64_t> dyadic_grid(std::int64_t n);

}  // namespace ergw::dynsys
