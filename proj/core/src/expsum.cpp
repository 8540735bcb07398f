#include "ergw/expsum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ergw/arcs.hpp"
#include "ergw/errors.hpp"
#include "ergw/fft.hpp"

namespace ergw::expsum {

namespace {
constexpr long double kPiL = 3.14159265358979323846264338327950288L;

long double wrap_unit(long double t) {
    // reduce to [-1/2, 1/2)
    long double r = t - nearbyintl(t);
    if (r >= 0.5L) r -= 1.0L;
    return r;
}

std::int64_t isqrt64(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

long double sinc(long double t) {
    if (std::abs(t) < 1e-6L) return 1.0L - t * t / 6.0L + t * t * t * t / 120.0L;
    return sinl(t) / t;
}
}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::direct: return "direct";
        case Method::hyperbola: return "hyperbola";
        case Method::fft_batch: return "fft-batch";
    }
    return "?";
}

std::complex<double> geometric_sum(long double u, std::int64_t L) {
    if (L <= 0) return {0.0, 0.0};
    u = wrap_unit(u);
    if (u == 0.0L) return {static_cast<double>(L), 0.0};

    const long double su = sinl(kPiL * u);
    const long double Lu = static_cast<long double>(L) * u;
    if (std::abs(su) < 1e-8L) {
        // near-degenerate: ratio through sinc, stable for all L since
        // |pi L u| stays O(L * 1e-8)
        const long double ratio = static_cast<long double>(L) * sinc(kPiL * Lu) / sinc(kPiL * u);
        const long double phase = kPiL * (static_cast<long double>(L) + 1.0L) * u;
        return {static_cast<double>(ratio * cosl(phase)), static_cast<double>(ratio * sinl(phase))};
    }
    // modular reduction keeps the sine/phase arguments small and exact:
    // sin(pi t) and e^{i pi t} have period 2 in t
    const long double t2 = fmodl(Lu, 2.0L);
    const long double t1 = fmodl(Lu + u, 2.0L);
    const long double mag = sinl(kPiL * t2) / su;
    return {static_cast<double>(mag * cosl(kPiL * t1)), static_cast<double>(mag * sinl(kPiL * t1))};
}

ExpSumResult divisor_expsum_direct(const arith::ArithmeticTable& d, std::int64_t n, double x) {
    if (n < 1) throw ParameterError("divisor_expsum_direct: n >= 1 required");
    if (d.size() < n)
        throw ResourceError("divisor table covers only N = " + std::to_string(d.size()));
    const auto& dv = d.integer_values();

    // incremental rotation z^k with periodic phase resync, Kahan-compensated
    const long double xl = x;
    const std::complex<long double> step{cosl(2.0L * kPiL * wrap_unit(xl)),
                                         sinl(2.0L * kPiL * wrap_unit(xl))};
    std::complex<long double> z{1.0L, 0.0L};
    long double re = 0.0L, im = 0.0L, cre = 0.0L, cim = 0.0L;
    for (std::int64_t k = 1; k <= n; ++k) {
        if ((k & 4095) == 1) {
            const long double ph = 2.0L * kPiL * wrap_unit(static_cast<long double>(k) * xl);
            z = {cosl(ph), sinl(ph)};
        } else {
            z *= step;
        }
        const long double w = static_cast<long double>(dv[k - 1]);
        long double y = w * z.real() - cre;
        long double t = re + y;
        cre = (t - re) - y;
        re = t;
        y = w * z.imag() - cim;
        t = im + y;
        cim = (t - im) - y;
        im = t;
    }
    return {n, x, {static_cast<double>(re), static_cast<double>(im)}, Method::direct};
}

ExpSumResult divisor_expsum_hyperbola(std::int64_t n, double x) {
    if (n < 1) throw ParameterError("divisor_expsum_hyperbola: n >= 1 required");
    const std::int64_t r = isqrt64(n);
    const long double xl = x;
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t k = 1; k <= r; ++k) {
        const long double u = wrap_unit(static_cast<long double>(k) * xl);
        acc += 2.0 * geometric_sum(u, n / k);
        acc -= geometric_sum(u, r);
    }
    return {n, x, acc, Method::hyperbola};
}

std::vector<ExpSumResult> divisor_expsum_batch(const arith::ArithmeticTable& d, std::int64_t n,
                                               std::int64_t grid) {
    if (n < 1 || grid < 1) throw ParameterError("divisor_expsum_batch: n, grid >= 1 required");
    if (d.size() < n)
        throw ResourceError("divisor table covers only N = " + std::to_string(d.size()));
    if (grid > (1LL << 26)) throw ResourceError("batch grid too large");
    const auto& dv = d.integer_values();

    std::vector<std::complex<double>> folded(static_cast<std::size_t>(grid), {0.0, 0.0});
    for (std::int64_t k = 1; k <= n; ++k)
        folded[static_cast<std::size_t>(k % grid)] += static_cast<double>(dv[k - 1]);
    // D_n(j/G) = sum_r folded[r] e^{+2 pi i r j/G}
    fft::backward(folded);

    std::vector<ExpSumResult> out(static_cast<std::size_t>(grid));
    for (std::int64_t j = 0; j < grid; ++j)
        out[j] = {n, static_cast<double>(j) / static_cast<double>(grid), folded[j],
                  Method::fft_batch};
    return out;
}

RationalMainTerm rational_diagnostic(std::int64_t n, std::int64_t a, std::int64_t q) {
    if (n < 1 || q < 1) throw ParameterError("rational_diagnostic: n, q >= 1 required");
    const bool zero_case = (a == 0 && q == 1);
    if (!zero_case && (a < 1 || a > q || std::gcd(a, q) != 1))
        throw ParameterError("rational_diagnostic: need gcd(a,q) = 1 with 1 <= a <= q, or (0,1)");

    const double x = static_cast<double>(a) / static_cast<double>(q);
    const std::complex<double> dn = divisor_expsum_hyperbola(n, x).value;
    const double g = arith::euler_gamma();
    const double nn = static_cast<double>(n);
    const double main =
        nn / static_cast<double>(q) *
        (std::log(nn) - 2.0 * std::log(static_cast<double>(q)) + 2.0 * g - 1.0);
    const double defect = std::abs(dn - std::complex<double>{main, 0.0});
    const double norm =
        defect / ((std::sqrt(nn) + static_cast<double>(q)) * std::log(static_cast<double>(q) + 1.0));
    return {n, a, q, main, defect, norm};
}

double minor_arc_bound(double n, double P, double Q) {
    const double ln = std::log(n);
    return n * ln / P + std::sqrt(n) * ln + Q * ln + n * n * ln / (P * Q);
}

double minor_arc_diagnostic(std::int64_t n, double x, std::int64_t P, std::int64_t Q) {
    if (n < 2 || P < 1 || Q < 1) throw ParameterError("minor_arc_diagnostic: bad parameters");
    const auto best = arcs::best_rational(x, P);
    const double dist = std::abs(x - static_cast<double>(best.a) / static_cast<double>(best.q));
    if (dist <= 1.0 / static_cast<double>(Q))
        throw PreconditionError("minor_arc_diagnostic: x lies in the major arc of " +
                                std::to_string(best.a) + "/" + std::to_string(best.q));
    const double dn = std::abs(divisor_expsum_hyperbola(n, x).value);
    return dn / minor_arc_bound(static_cast<double>(n), static_cast<double>(P),
                                static_cast<double>(Q));
}

std::complex<double> mobius_expsum(const arith::ArithmeticTable& mu, std::int64_t n, double x) {
    if (n < 1) throw ParameterError("mobius_expsum: n >= 1 required");
    if (mu.size() < n) throw ResourceError("mobius table too small");
    const auto& mv = mu.integer_values();
    const long double xl = x;
    std::complex<long double> step{cosl(2.0L * kPiL * wrap_unit(xl)),
                                   sinl(2.0L * kPiL * wrap_unit(xl))};
    std::complex<long double> z{1.0L, 0.0L}, acc{0.0L, 0.0L};
    for (std::int64_t k = 1; k <= n; ++k) {
        if ((k & 4095) == 1) {
            const long double ph = 2.0L * kPiL * wrap_unit(static_cast<long double>(k) * xl);
            z = {cosl(ph), sinl(ph)};
        } else {
            z *= step;
        }
        const auto m = mv[k - 1];
        if (m != 0) acc += static_cast<long double>(m) * z;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double mobius_sup(const arith::ArithmeticTable& mu, std::int64_t n, std::int64_t grid) {
    if (n < 1 || grid < 1) throw ParameterError("mobius_sup: n, grid >= 1 required");
    if (mu.size() < n) throw ResourceError("mobius table too small");
    const auto& mv = mu.integer_values();
    std::vector<std::complex<double>> folded(static_cast<std::size_t>(grid), {0.0, 0.0});
    for (std::int64_t k = 1; k <= n; ++k)
        folded[static_cast<std::size_t>(k % grid)] += static_cast<double>(mv[k - 1]);
    fft::backward(folded);
    double sup = 0.0;
    for (const auto& v : folded) sup = std::max(sup, std::abs(v));
    return sup;
}

double harmonic_gamma(std::int64_t n) {
    if (n < 1) throw ParameterError("harmonic_gamma: n >= 1 required");
    double h = 0.0, c = 0.0;
    for (std::int64_t m = 1; m <= n; ++m) {
        double y = 1.0 / static_cast<double>(m) - c;
        double t = h + y;
        c = (t - h) - y;
        h = t;
    }
    return h - std::log(static_cast<double>(n));
}

}  // namespace ergw::expsum
