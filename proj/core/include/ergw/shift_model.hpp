#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ergw/arith.hpp"

namespace ergw::shift {

// ---------------------------------------------------------------------------
// Finitely supported sequence g: Z -> C, stored on [offset, offset + len).
// ---------------------------------------------------------------------------
class LatticeSignal {
  public:
    LatticeSignal() = default;
    LatticeSignal(std::int64_t offset, std::vector<std::complex<double>> values);

    static LatticeSignal delta(std::int64_t at = 0);

    std::int64_t offset() const { return offset_; }
    std::int64_t length() const { return static_cast<std::int64_t>(values_.size()); }
    std::int64_t end() const { return offset_ + length(); }  // one past support
    const std::vector<std::complex<double>>& values() const { return values_; }

    std::complex<double> at(std::int64_t i) const;  // 0 outside the window
    std::complex<double>& ref(std::int64_t i);      // within the window

    double norm(double p) const;  // l^p, p in [1, inf] (inf = sup)

    LatticeSignal reflected() const;  // g(-i)
    LatticeSignal operator-(const LatticeSignal& rhs) const;
    LatticeSignal operator+(const LatticeSignal& rhs) const;
    LatticeSignal scaled(std::complex<double> c) const;

  private:
    std::int64_t offset_ = 0;
    std::vector<std::complex<double>> values_;
};

// Exact discrete convolution; direct O(|K||g|) below the size threshold,
// FFT above it, both agreeing to 1e-9.
LatticeSignal convolve(const LatticeSignal& kernel, const LatticeSignal& g);
LatticeSignal convolve_direct(const LatticeSignal& kernel, const LatticeSignal& g);
LatticeSignal convolve_fft(const LatticeSignal& kernel, const LatticeSignal& g);

// (1/W_n) sum_{k=1}^{n} w_k delta_k from an arithmetic table (k = 1..n
// convention); the divisor kernel K_n for w = d.
LatticeSignal weight_kernel(const arith::ArithmeticTable& w, std::int64_t n);

// Cesaro kernel kappa_n = (1/n) sum_{k=1}^{n} delta_k.
LatticeSignal cesaro_kernel(std::int64_t n);

// ---------------------------------------------------------------------------
// Maximal operators
// ---------------------------------------------------------------------------
struct MaximalReport {
    double p = 2.0;
    double input_norm = 0.0;
    double output_norm = 0.0;
    double ratio = 0.0;
    std::int64_t witness_index = 0;  // index of the pointwise max of the sup-function
    // square-function diagnostic when a second family is supplied:
    // sum_k ||(K_k - L_k) * g||_2^2
    std::optional<double> square_function;
};

// sup_{k} |family[k] * g| pointwise, its l^p norm and ratio to ||g||_p.
MaximalReport dyadic_maximal(const std::vector<LatticeSignal>& family, const LatticeSignal& g,
                             double p,
                             const std::vector<LatticeSignal>* second_family = nullptr);

// One-sided Hardy-Littlewood constant: || sup_{j>=i} average |sum g| ||_p^p
// over ||g||_p^p for non-negative g, asserted <= (p/(p-1))^p by the caller.
// The sum over window starts i left of the support is completed by an exact
// switch-point evaluation of max_j |P(j)|/(j - i + 1) plus an analytic tail
// bound, so the reported ratio is an upper value.
double cesaro_maximal_constant(const LatticeSignal& g, double p);

// ---------------------------------------------------------------------------
// Oscillation sums: for blocks [N_j, N_{j+1}) and N restricted to
// I_rho = {floor(rho^m)}, the per-block quantities
//   O_j = || sup_{N in I_rho ∩ [N_j, N_{j+1})} |(K_N - K_{N_j}) * g| ||_2^2
// normalized by ||g||_2^2. Blocks whose kernels exceed the exact-FFT cap are
// reported as certified upper bounds (Young inequality + a rigorous bound on
// sum d(k)^2), flagged by is_upper_bound.
// ---------------------------------------------------------------------------
struct OscillationBlock {
    std::int64_t block_start = 0;
    double value = 0.0;       // O_j / ||g||_2^2  (squared-norm form)
    double value_norm = 0.0;  // sqrt form, || . ||_2 / ||g||_2
    bool is_upper_bound = false;
};

struct OscillationReport {
    std::vector<OscillationBlock> blocks;
    // (1/J) sum_{j<=J} blocks[j].value for J = 1..#blocks: the o(J) diagnostic
    std::vector<double> normalized_sums;
};

using KernelFamily = std::function<LatticeSignal(std::int64_t)>;

OscillationReport oscillation_sum(const KernelFamily& family, const LatticeSignal& g,
                                  const std::vector<std::int64_t>& blocks, double rho);

// Certified ||K_N - K_M||_2 for divisor kernels (exact D_n + the rigorous
// bound sum_{k<=X} d(k)^2 <= X (1 + log X)^3); exposed for the bound path.
double divisor_kernel_l2_diff_bound(std::int64_t small_n, std::int64_t big_n);

// I_rho = {floor(rho^m)} deduplicated, restricted to [lo, hi).
std::vector<std::int64_t> rho_ladder(double rho, std::int64_t lo, std::int64_t hi);

// ---------------------------------------------------------------------------
// Calderon transference: ergodic averages along an orbit equal shift-model
// correlations of the orbit signal. Returns max |lhs - rhs| over
// 0 <= j < J - N and 1 <= n <= N.
// ---------------------------------------------------------------------------
struct TransferenceResult {
    double max_deviation = 0.0;
    std::int64_t argmax_j = 0;
    std::int64_t argmax_n = 0;
};

// orbit_values[j] = f(tau^j x), 0 <= j <= J
TransferenceResult transference_check(const std::vector<std::complex<double>>& orbit_values,
                                      const arith::ArithmeticTable& weights, std::int64_t n_max,
                                      std::int64_t j_total);

}  // namespace ergw::shift
