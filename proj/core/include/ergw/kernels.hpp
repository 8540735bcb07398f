#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ergw/arcs.hpp"
#include "ergw/arith.hpp"

namespace ergw::kernels {

// ---------------------------------------------------------------------------
// Smooth bump: eta = 1 on [-1/4, 1/4], 0 outside [-1/2, 1/2], C^infinity in
// between (exp(-1/t) smooth-step glue). eta_s(x) = eta(4^s M x).
// ---------------------------------------------------------------------------
class BumpFunction {
  public:
    explicit BumpFunction(std::int64_t M = 4);
    std::int64_t M() const { return m_; }
    double operator()(double x) const { return eval(x); }
    double eval(double x) const;
    double scaled(int s, double x) const;  // eta(4^s M x)

  private:
    std::int64_t m_;
};

// ---------------------------------------------------------------------------
// Model kernel w_{n,q} on 1..n and its transform psi_{n,q} = w^_{n,q}:
//   w_{n,q}(k) = (log k + 2(gamma - log q)) / (q n log n),
// so that sum_k w_{n,q}(k) = (n/q)(log n - 2 log q + 2 gamma - 1)/(n log n),
// the rational main term over n log n. psi is evaluable by direct Kahan
// summation and by the Abel / geometric-sum closed form, agreeing to 1e-8.
// ---------------------------------------------------------------------------
class ModelKernel {
  public:
    ModelKernel(std::int64_t n, std::int64_t q);

    std::int64_t n() const { return n_; }
    std::int64_t q() const { return q_; }
    double weight(std::int64_t k) const;         // w_{n,q}(k), 1 <= k <= n
    double weight_sum() const;                   // psi_{n,q}(0)
    std::complex<double> psi(double x) const;    // direct Kahan path
    std::complex<double> psi_direct(double x) const;
    std::complex<double> psi_closed(double x) const;  // Abel + geometric sums

  private:
    std::int64_t n_;
    std::int64_t q_;      // q = 0 aliases q = 1
    double coeff_log_;    // 1/(q n log n)
    double coeff_const_;  // 2(gamma - log q)/(q n log n)
    std::shared_ptr<const std::vector<double>> logs_;  // log k, shared per n
};

ModelKernel model_weights(std::int64_t n, std::int64_t q);

// ---------------------------------------------------------------------------
// Divisor kernel K_n = (1/D_n) sum d(k) delta_k with transform
// T_n(x) = D_n(x)/D_n.
// ---------------------------------------------------------------------------
class DivisorKernel {
  public:
    DivisorKernel(const arith::ArithmeticTable& d, std::int64_t n);
    std::int64_t n() const { return n_; }
    double total() const { return dn_; }             // D_n
    double weight(std::int64_t k) const;             // d(k)/D_n
    std::complex<double> transform(double x) const;  // T_n(x), O(sqrt n)
    // all grid values T_n(j/G) by one DFT
    std::vector<std::complex<double>> transform_grid(std::int64_t grid) const;

  private:
    const arith::ArithmeticTable* d_;
    std::int64_t n_;
    double dn_;
};

// ---------------------------------------------------------------------------
// Approximant phi_n(x) = psi_{n,1}(u) eta_0(u) +
//   sum_{s=2}^{s_max} psi_{n,q}(x - a/q) eta_s(x - a/q) over the unique
// active band-s center (u = x reduced to [-1/2,1/2); the band-1 center 1/1 is
// the same circle point as 0/1 and is covered once by the q = 1 term).
// Bands above the cutoff are dropped; optional truncation t keeps s <= t only.
// ---------------------------------------------------------------------------
class ApproximantKernel {
  public:
    ApproximantKernel(const arcs::ArcParameters& params, std::int64_t n,
                      std::optional<int> s_max = std::nullopt,
                      std::optional<int> truncation = std::nullopt);

    std::int64_t n() const { return n_; }
    const arcs::ArcParameters& params() const { return params_; }
    int band_cutoff() const { return s_max_; }
    std::optional<int> truncation() const { return trunc_; }

    std::complex<double> eval(double x) const;
    std::complex<double> operator()(double x) const { return eval(x); }

    // the band-s term active at x, if any: (center, psi * eta value)
    struct ActiveTerm {
        int s = 0;
        arcs::Rational center;
        std::complex<double> value{0.0, 0.0};
    };
    std::vector<ActiveTerm> active_terms(double x) const;

  private:
    arcs::ArcParameters params_;
    std::int64_t n_;
    int s_max_;
    std::optional<int> trunc_;
    BumpFunction bump_;
    std::vector<ModelKernel> psi_;  // psi_[q-1] = ModelKernel(n, q), q <= 2^{s_max}
};

int default_band_cutoff(const arcs::ArcParameters& params);

std::complex<double> phi_eval(const arcs::ArcParameters& params, std::int64_t n, double x);

ApproximantKernel truncated_kernel(const arcs::ArcParameters& params, std::int64_t n, int t);

// ---------------------------------------------------------------------------
// sup-grid |T_n - phi_n| split by arc classification.
// ---------------------------------------------------------------------------
struct ApproxErrorReport {
    std::int64_t n = 0;
    std::int64_t grid = 0;
    double S = 0.0, tau = 0.0;
    std::int64_t M = 0;
    double sup_major = 0.0;
    double sup_minor = 0.0;
    double sup_total = 0.0;
    double normalized = 0.0;  // (log n)^S * sup_total (Section-8 exponent choice)
};

ApproxErrorReport approx_error(const arith::ArithmeticTable& d, const arcs::ArcParameters& params,
                               std::int64_t n, std::int64_t grid);

// per-point rows for CSV dumps: x, T, phi, classification, error
struct GridPointError {
    double x;
    std::complex<double> t;
    std::complex<double> phi;
    bool is_major;
    double abs_err;
};
std::vector<GridPointError> approx_error_rows(const arith::ArithmeticTable& d,
                                              const arcs::ArcParameters& params, std::int64_t n,
                                              std::int64_t grid);

// ---------------------------------------------------------------------------
// Inverse transform of a 1-periodic evaluator: trapezoid-rule Fourier
// coefficients on a grid of size >= 4B, truncated to |k| <= B. Raises
// ResolutionError when the aliasing tail exceeds the tolerance.
// ---------------------------------------------------------------------------
struct InverseTransform {
    std::int64_t offset = 0;                    // coefficient index of values[0]
    std::vector<std::complex<double>> values;   // L(k), k = offset..offset+len-1
    double reconstruction_error = 0.0;          // sup-grid |phi - sum L(k) e^{2 pi i k x}|
    double tail_mass = 0.0;                     // sum_{|k|>B} |coef|
};

InverseTransform inverse_transform(const std::function<std::complex<double>(double)>& evaluator,
                                   std::int64_t support_bound, std::int64_t grid = 0,
                                   double alias_tolerance = 1e-6);

}  // namespace ergw::kernels
