#include "ergw/shift_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergw/config.hpp"
#include "ergw/errors.hpp"
#include "ergw/fft.hpp"
#include "ergw/parallel.hpp"

namespace ergw::shift {

namespace {
std::int64_t isqrt64(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// D(n) = sum_{k<=n} d(k), exact, O(sqrt n):  2 sum_{k<=r} floor(n/k) - r^2
std::int64_t divisor_summatory(std::int64_t n) {
    if (n <= 0) return 0;
    const std::int64_t r = isqrt64(n);
    std::int64_t s = 0;
    for (std::int64_t k = 1; k <= r; ++k) s += n / k;
    return 2 * s - r * r;
}
}  // namespace

// ---------------------------------------------------------------------------
// LatticeSignal
// ---------------------------------------------------------------------------

LatticeSignal::LatticeSignal(std::int64_t offset, std::vector<std::complex<double>> values)
    : offset_(offset), values_(std::move(values)) {}

LatticeSignal LatticeSignal::delta(std::int64_t at) {
    return LatticeSignal(at, {std::complex<double>{1.0, 0.0}});
}

std::complex<double> LatticeSignal::at(std::int64_t i) const {
    if (i < offset_ || i >= end()) return {0.0, 0.0};
    return values_[static_cast<std::size_t>(i - offset_)];
}

std::complex<double>& LatticeSignal::ref(std::int64_t i) {
    if (i < offset_ || i >= end()) throw ParameterError("LatticeSignal::ref outside window");
    return values_[static_cast<std::size_t>(i - offset_)];
}

double LatticeSignal::norm(double p) const {
    if (p < 1.0) throw ParameterError("norm: p >= 1 required");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : values_) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

LatticeSignal LatticeSignal::reflected() const {
    std::vector<std::complex<double>> v(values_.rbegin(), values_.rend());
    return LatticeSignal(-(offset_ + length() - 1), std::move(v));
}

namespace {
LatticeSignal combine(const LatticeSignal& a, const LatticeSignal& b, double sign) {
    if (a.length() == 0) return sign < 0 ? b.scaled({-1.0, 0.0}) : b;
    if (b.length() == 0) return a;
    const std::int64_t lo = std::min(a.offset(), b.offset());
    const std::int64_t hi = std::max(a.end(), b.end());
    std::vector<std::complex<double>> v(static_cast<std::size_t>(hi - lo), {0.0, 0.0});
    for (std::int64_t i = a.offset(); i < a.end(); ++i) v[i - lo] += a.at(i);
    for (std::int64_t i = b.offset(); i < b.end(); ++i) v[i - lo] += sign * b.at(i);
    return LatticeSignal(lo, std::move(v));
}
}  // namespace

LatticeSignal LatticeSignal::operator+(const LatticeSignal& rhs) const {
    return combine(*this, rhs, 1.0);
}
LatticeSignal LatticeSignal::operator-(const LatticeSignal& rhs) const {
    return combine(*this, rhs, -1.0);
}

LatticeSignal LatticeSignal::scaled(std::complex<double> c) const {
    auto v = values_;
    for (auto& x : v) x *= c;
    return LatticeSignal(offset_, std::move(v));
}

// ---------------------------------------------------------------------------
// convolution
// ---------------------------------------------------------------------------

LatticeSignal convolve_direct(const LatticeSignal& kernel, const LatticeSignal& g) {
    if (kernel.length() == 0 || g.length() == 0) return LatticeSignal(0, {});
    const std::int64_t len = kernel.length() + g.length() - 1;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(len), {0.0, 0.0});
    const auto& kv = kernel.values();
    const auto& gv = g.values();
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (kv[i] == std::complex<double>{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < gv.size(); ++j) out[i + j] += kv[i] * gv[j];
    }
    return LatticeSignal(kernel.offset() + g.offset(), std::move(out));
}

LatticeSignal convolve_fft(const LatticeSignal& kernel, const LatticeSignal& g) {
    if (kernel.length() == 0 || g.length() == 0) return LatticeSignal(0, {});
    const std::int64_t len = kernel.length() + g.length() - 1;
    std::int64_t size = 1;
    while (size < len) size *= 2;
    if (size > (1LL << 24)) throw ResourceError("convolve: window overflow (support too large)");
    std::vector<std::complex<double>> a(static_cast<std::size_t>(size), {0.0, 0.0});
    std::vector<std::complex<double>> b(static_cast<std::size_t>(size), {0.0, 0.0});
    std::copy(kernel.values().begin(), kernel.values().end(), a.begin());
    std::copy(g.values().begin(), g.values().end(), b.begin());
    fft::forward(a);
    fft::forward(b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    fft::backward(a);
    const double inv = 1.0 / static_cast<double>(size);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(len));
    for (std::int64_t i = 0; i < len; ++i) out[i] = a[i] * inv;
    return LatticeSignal(kernel.offset() + g.offset(), std::move(out));
}

LatticeSignal convolve(const LatticeSignal& kernel, const LatticeSignal& g) {
    const std::int64_t work = kernel.length() * g.length();
    if (work > (1LL << 20)) return convolve_fft(kernel, g);
    return convolve_direct(kernel, g);
}

LatticeSignal weight_kernel(const arith::ArithmeticTable& w, std::int64_t n) {
    if (n < 1 || n > w.size()) throw ParameterError("weight_kernel: n out of table range");
    const double wn = w.abs_summatory(n);
    if (wn == 0.0) throw DegenerateInputError("weight_kernel: W_n = 0");
    std::vector<std::complex<double>> v(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k) v[k - 1] = {w.value(k) / wn, 0.0};
    return LatticeSignal(1, std::move(v));
}

LatticeSignal cesaro_kernel(std::int64_t n) {
    if (n < 1) throw ParameterError("cesaro_kernel: n >= 1 required");
    std::vector<std::complex<double>> v(static_cast<std::size_t>(n),
                                        {1.0 / static_cast<double>(n), 0.0});
    return LatticeSignal(1, std::move(v));
}

// ---------------------------------------------------------------------------
// dyadic maximal operator
// ---------------------------------------------------------------------------

MaximalReport dyadic_maximal(const std::vector<LatticeSignal>& family, const LatticeSignal& g,
                             double p, const std::vector<LatticeSignal>* second_family) {
    if (family.empty()) throw ParameterError("dyadic_maximal: empty kernel family");
    if (!(p > 1.0)) throw ParameterError("dyadic_maximal: p > 1 required");
    if (second_family && second_family->size() != family.size())
        throw ParameterError("dyadic_maximal: families must have equal length");

    std::vector<LatticeSignal> convs(family.size());
    parallel_for(0, static_cast<std::int64_t>(family.size()),
                 [&](std::int64_t k) { convs[k] = convolve(family[k], g); });

    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& c : convs) {
        lo = std::min(lo, c.offset());
        hi = std::max(hi, c.end());
    }

    double out_p = 0.0, best = -1.0;
    std::int64_t witness = lo;
    for (std::int64_t i = lo; i < hi; ++i) {
        double m = 0.0;
        for (const auto& c : convs) m = std::max(m, std::abs(c.at(i)));
        out_p += std::pow(m, p);
        if (m > best) {
            best = m;
            witness = i;
        }
    }

    MaximalReport rep;
    rep.p = p;
    rep.input_norm = g.norm(p);
    rep.output_norm = std::pow(out_p, 1.0 / p);
    rep.ratio = rep.input_norm > 0.0 ? rep.output_norm / rep.input_norm : 0.0;
    rep.witness_index = witness;

    if (second_family) {
        double sq = 0.0;
        for (std::size_t k = 0; k < family.size(); ++k) {
            const auto diff = convolve(family[k] - (*second_family)[k], g);
            const double n2 = diff.norm(2.0);
            sq += n2 * n2;
        }
        rep.square_function = sq;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// one-sided Hardy-Littlewood constant
// ---------------------------------------------------------------------------

double cesaro_maximal_constant(const LatticeSignal& g, double p) {
    if (!(p > 1.0)) throw ParameterError("cesaro_maximal_constant: p > 1 required");
    const std::int64_t len = g.length();
    std::vector<double> vals(static_cast<std::size_t>(len));
    double norm_p = 0.0;
    for (std::int64_t i = 0; i < len; ++i) {
        const auto v = g.values()[i];
        if (v.imag() != 0.0 || v.real() < 0.0)
            throw ParameterError("cesaro_maximal_constant: g must be non-negative real");
        vals[i] = v.real();
        norm_p += std::pow(v.real(), p);
    }
    if (norm_p == 0.0) return 0.0;  // degenerate zero signal

    // interior window starts: M(i) = sup_{j>=i} (sum_{l=i}^{j} g)/(j-i+1);
    // g >= 0, so windows past the support only shrink the average
    double total = 0.0;
    for (std::int64_t i = 0; i < len; ++i) {
        double run = 0.0, m = 0.0;
        for (std::int64_t j = i; j < len; ++j) {
            run += vals[j];
            m = std::max(m, run / static_cast<double>(j - i + 1));
        }
        total += std::pow(m, p);
    }

    // window starts left of the support: V(m) = max_j P(j)/(d_j + m) with
    // P(j) the full prefix sums, d_j = j + 1, m = 1, 2, ...; the argmax is
    // monotone along the Pareto front as m grows
    struct Node {
        double c;         // prefix value
        std::int64_t d;   // window length to reach it at m = 0
    };
    // prefixes are non-decreasing, so the Pareto front (larger c, smaller d)
    // is the first index of each strictly larger prefix value
    std::vector<Node> pareto;
    double prefix = 0.0;
    for (std::int64_t j = 0; j < len; ++j) {
        prefix += vals[j];
        if (pareto.empty() || prefix > pareto.back().c) pareto.push_back({prefix, j + 1});
    }

    const std::int64_t direct_span = 200000;
    std::size_t cur = 0;
    for (std::int64_t m = 1; m <= direct_span; ++m) {
        while (cur + 1 < pareto.size() &&
               pareto[cur + 1].c * static_cast<double>(pareto[cur].d + m) >=
                   pareto[cur].c * static_cast<double>(pareto[cur + 1].d + m))
            ++cur;
        const double v = pareto[cur].c / static_cast<double>(pareto[cur].d + m);
        total += std::pow(v, p);
    }
    // analytic tail: V(m) <= c_max/(1 + m); sum_{m>M} (1+m)^{-p} <= M^{1-p}/(p-1)
    const double cmax = pareto.back().c;
    total += std::pow(cmax, p) * std::pow(static_cast<double>(direct_span), 1.0 - p) / (p - 1.0);

    return total / norm_p;
}

// ---------------------------------------------------------------------------
// oscillation sums
// ---------------------------------------------------------------------------

std::vector<std::int64_t> rho_ladder(double rho, std::int64_t lo, std::int64_t hi) {
    if (!(rho > 1.0)) throw ParameterError("rho_ladder: rho > 1 required");
    std::vector<std::int64_t> out;
    for (int m = 0; m < 4096; ++m) {
        const long double v = powl(static_cast<long double>(rho), m);
        if (v >= static_cast<long double>(hi) || v > 4e18L) break;
        const auto n = static_cast<std::int64_t>(v);
        if (n >= lo && (out.empty() || out.back() != n)) out.push_back(n);
    }
    return out;
}

double divisor_kernel_l2_diff_bound(std::int64_t small_n, std::int64_t big_n) {
    if (small_n < 1 || big_n < small_n)
        throw ParameterError("divisor_kernel_l2_diff_bound: need 1 <= M <= N");
    const auto dm = static_cast<double>(divisor_summatory(small_n));
    const auto dn = static_cast<double>(divisor_summatory(big_n));
    auto s2_bound = [](std::int64_t x) {
        // sum_{k<=X} d(k)^2 = sum_{a,b} floor(X/lcm(a,b)) <= X (1 + log X)^3
        const double xd = static_cast<double>(x);
        const double l = 1.0 + std::log(xd);
        return xd * l * l * l;
    };
    const double t1 = (1.0 / dm - 1.0 / dn);
    const double bound2 = t1 * t1 * s2_bound(small_n) + s2_bound(big_n) / (dn * dn);
    return std::sqrt(bound2);
}

OscillationReport oscillation_sum(const KernelFamily& family, const LatticeSignal& g,
                                  const std::vector<std::int64_t>& blocks, double rho) {
    if (blocks.size() < 2) throw ParameterError("oscillation_sum: need at least one block");
    for (std::size_t j = 0; j + 1 < blocks.size(); ++j)
        if (blocks[j + 1] < 2 * blocks[j])
            throw ParameterError("oscillation_sum: block condition N_{j+1} >= 2 N_j violated");
    const double g2 = g.norm(2.0);
    if (g2 == 0.0) throw DegenerateInputError("oscillation_sum: zero signal");
    const double g1 = g.norm(1.0);

    OscillationReport rep;
    for (std::size_t j = 0; j + 1 < blocks.size(); ++j) {
        const std::int64_t njlo = blocks[j], njhi = blocks[j + 1];
        const auto members = rho_ladder(rho, njlo, njhi);

        OscillationBlock blk;
        blk.block_start = njlo;
        const std::int64_t biggest = members.empty() ? njlo : members.back();

        if (biggest + g.length() <= kMaxExactKernelSupport) {
            const auto base = family(njlo);
            LatticeSignal sup;  // pointwise sup of |diff * g|
            bool first = true;
            for (const auto n : members) {
                if (n == njlo) continue;  // zero difference
                const auto diff = convolve(family(n) - base, g);
                if (first) {
                    std::vector<std::complex<double>> mods(diff.values().size());
                    for (std::size_t i = 0; i < mods.size(); ++i)
                        mods[i] = {std::abs(diff.values()[i]), 0.0};
                    sup = LatticeSignal(diff.offset(), std::move(mods));
                    first = false;
                } else {
                    const std::int64_t lo = std::min(sup.offset(), diff.offset());
                    const std::int64_t hi = std::max(sup.end(), diff.end());
                    std::vector<std::complex<double>> mods(static_cast<std::size_t>(hi - lo));
                    for (std::int64_t i = lo; i < hi; ++i)
                        mods[i - lo] = {std::max(std::abs(sup.at(i)), std::abs(diff.at(i))), 0.0};
                    sup = LatticeSignal(lo, std::move(mods));
                }
            }
            const double n2 = first ? 0.0 : sup.norm(2.0);
            blk.value = (n2 * n2) / (g2 * g2);
            blk.value_norm = n2 / g2;
            blk.is_upper_bound = false;
        } else {
            // certified upper bound (Young): ||sup|diff*g|||_2 <= sum_N ||diff_N*g||_2,
            // ||diff*g||_2 <= min(||diff||_2 ||g||_1, ||diff||_1 ||g||_2)
            double acc = 0.0;
            for (const auto n : members) {
                if (n == njlo) continue;
                const double l2d = divisor_kernel_l2_diff_bound(njlo, n);
                const double dm = static_cast<double>(divisor_summatory(njlo));
                const double dn = static_cast<double>(divisor_summatory(n));
                const double l1d = 2.0 * (1.0 - dm / dn);
                acc += std::min(l2d * g1, l1d * g2);
            }
            blk.value = (acc * acc) / (g2 * g2);
            blk.value_norm = acc / g2;
            blk.is_upper_bound = true;
        }
        rep.blocks.push_back(blk);
    }

    double run = 0.0;
    for (std::size_t j = 0; j < rep.blocks.size(); ++j) {
        run += rep.blocks[j].value;
        rep.normalized_sums.push_back(run / static_cast<double>(j + 1));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Calderon transference
// ---------------------------------------------------------------------------

TransferenceResult transference_check(const std::vector<std::complex<double>>& orbit_values,
                                      const arith::ArithmeticTable& weights, std::int64_t n_max,
                                      std::int64_t j_total) {
    if (j_total < 4 * n_max)
        throw ParameterError("transference_check: J >= 4 N required");
    if (static_cast<std::int64_t>(orbit_values.size()) < j_total + 1)
        throw ParameterError("transference_check: orbit must cover 0..J");
    if (weights.size() < n_max) throw ParameterError("transference_check: weights table too small");

    // phi(j) = f(tau^j x) on 0..J, zero elsewhere
    LatticeSignal phi(0, std::vector<std::complex<double>>(orbit_values.begin(),
                                                           orbit_values.begin() + j_total + 1));

    TransferenceResult res;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double wn = weights.abs_summatory(n);
        if (wn == 0.0) continue;
        // shift-model side: (K~_n * phi)(j) = (1/W_n) sum_k w_k phi(j+k),
        // K~_n the reflection of the weight kernel
        const auto conv = convolve(weight_kernel(weights, n).reflected(), phi);
        for (std::int64_t j = 0; j < j_total - n_max; ++j) {
            std::complex<double> lhs{0.0, 0.0};
            for (std::int64_t k = 1; k <= n; ++k)
                lhs += weights.value(k) * orbit_values[static_cast<std::size_t>(j + k)];
            lhs /= wn;
            const double dev = std::abs(lhs - conv.at(j));
            if (dev > res.max_deviation) {
                res.max_deviation = dev;
                res.argmax_j = j;
                res.argmax_n = n;
            }
        }
    }
    return res;
}

}  // namespace ergw::shift
