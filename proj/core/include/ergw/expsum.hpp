#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ergw/arith.hpp"

namespace ergw::expsum {

enum class Method { direct, hyperbola, fft_batch };
const char* method_name(Method m);

// D_n(x) = sum_{1<=k<=n} d(k) e^{2 pi i k x}
struct ExpSumResult {
    std::int64_t n = 0;
    double x = 0.0;
    std::complex<double> value{0.0, 0.0};
    Method method = Method::direct;
};

// sum_{l=1}^{L} e^{2 pi i l u}, stable near u in Z: closed form
// e^{i pi (L+1) u} sin(pi L u)/sin(pi u) with a sinc branch when
// |sin(pi u)| < 1e-8 and the exact count L at u = 0.
std::complex<double> geometric_sum(long double u, std::int64_t L);

// O(n) Kahan-compensated direct sum; needs the divisor table up to n.
ExpSumResult divisor_expsum_direct(const arith::ArithmeticTable& d, std::int64_t n, double x);

// O(sqrt n) evaluation by the hyperbola decomposition
//   D_n(x) = 2 sum_{k<=sqrt n} sum_{l<=n/k} e^{2 pi i k l x}
//              - sum_{k,l<=sqrt n} e^{2 pi i k l x};
// needs no divisor table.
ExpSumResult divisor_expsum_hyperbola(std::int64_t n, double x);

// All G values D_n(j/G), j = 0..G-1, via one length-G DFT of d(k) folded
// modulo G (D_n(j/G) depends on k mod G only).
std::vector<ExpSumResult> divisor_expsum_batch(const arith::ArithmeticTable& d, std::int64_t n,
                                               std::int64_t grid);

// Main-term diagnostic at a rational point a/q (Lemma-style):
//   main       = (n/q)(log n - 2 log q + 2 gamma - 1)
//   defect     = |D_n(a/q) - main|
//   normalized = defect / ((sqrt n + q) log(q+1))
struct RationalMainTerm {
    std::int64_t n = 0;
    std::int64_t a = 0, q = 1;
    double main = 0.0;
    double defect = 0.0;
    double normalized = 0.0;
};

RationalMainTerm rational_diagnostic(std::int64_t n, std::int64_t a, std::int64_t q);

// Four-term minor-arc bound n log n/P + sqrt n log n + Q log n + n^2 log n/(PQ)
// (n real so the formula itself is unit-testable by plug-in).
double minor_arc_bound(double n, double P, double Q);

// |D_n(x)| / minor_arc_bound; raises PreconditionError when x lies in a major
// arc of the (P, Q) partition.
double minor_arc_diagnostic(std::int64_t n, double x, std::int64_t P, std::int64_t Q);

// Mobius exponential sums sum_{k<=n} mu(k) e^{2 pi i k x}.
std::complex<double> mobius_expsum(const arith::ArithmeticTable& mu, std::int64_t n, double x);

// sup over the grid j/G of |sum_{k<=n} mu(k) e^{2 pi i k j/G}|.
double mobius_sup(const arith::ArithmeticTable& mu, std::int64_t n, std::int64_t grid);

// sum_{m<=n} 1/m - log n; approaches Euler's constant with O(1/n) defect.
double harmonic_gamma(std::int64_t n);

}  // namespace ergw::expsum
