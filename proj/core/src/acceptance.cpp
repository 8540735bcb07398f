#include "ergw/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "ergw/arcs.hpp"
#include "ergw/arith.hpp"
#include "ergw/config.hpp"
#include "ergw/dynsys.hpp"
#include "ergw/errors.hpp"
#include "ergw/expsum.hpp"
#include "ergw/kernels.hpp"
#include "ergw/shift_model.hpp"

namespace ergw::accept {

namespace {

using Clock = std::chrono::steady_clock;

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// zeta(s) by partial sums with Euler-Maclaurin tail correction:
//   zeta(s) = sum_{m<=M} m^-s + M^{1-s}/(s-1) - M^-s/2 + s M^{-s-1}/12 + ...
// error far below 1e-10 at M = 4096 for s >= 2
double zeta_partial(double s) {
    const std::int64_t M = 4096;
    double sum = 0.0, c = 0.0;
    for (std::int64_t m = 1; m <= M; ++m) {
        const double y = std::pow(static_cast<double>(m), -s) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    const double Md = static_cast<double>(M);
    sum += std::pow(Md, 1.0 - s) / (s - 1.0);
    sum -= std::pow(Md, -s) / 2.0;
    sum += s * std::pow(Md, -s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * std::pow(Md, -s - 3.0) / 720.0;
    return sum;
}

// --------------------------------------------------------------------------
// 1. convolution identity suite (pointwise exact)
// --------------------------------------------------------------------------
CheckResult check_conv_identities(bool quick) {
    const std::int64_t n = quick ? 10'000 : 100'000;
    CheckResult r{"conv-identities", "Dirichlet convolution identity suite", false, 0, 0, "", 0};

    const auto one = arith::sieve("one", n);
    const auto d = arith::sieve("d", n);
    const auto mu = arith::sieve("mobius", n);
    const auto mut = arith::sieve("mobius-tilde", n);
    const auto theta = arith::sieve("theta", n);
    const auto delta = arith::sieve("delta", n);

    std::int64_t bad = 0;
    auto cmp_int = [&](const arith::ArithmeticTable& got, const arith::ArithmeticTable& want) {
        for (std::int64_t k = 1; k <= n; ++k)
            if (got.ivalue(k) != want.ivalue(k)) ++bad;
    };
    auto cmp_real = [&](const arith::ArithmeticTable& got, const arith::ArithmeticTable& want) {
        for (std::int64_t k = 1; k <= n; ++k)
            if (got.value(k) != want.value(k)) ++bad;
    };

    cmp_int(arith::dirichlet_convolve(one, one), d);        // 1*1 = d
    cmp_int(arith::dirichlet_convolve(one, mu), delta);     // 1*mu = delta
    cmp_int(arith::dirichlet_convolve(d, mut), theta);      // d*mu~ = theta
    for (const double s : {1.0, 2.0}) {
        const auto pow_s = arith::sieve("power", n, s);
        cmp_real(arith::dirichlet_convolve(pow_s, mu), arith::sieve("jordan", n, s));  // s_s*mu = J_s
        cmp_real(arith::dirichlet_convolve(one, pow_s), arith::sieve("sigma", n, s));  // 1*s_s = sigma_s
    }

    r.value = static_cast<double>(bad);
    r.threshold = 0.0;
    r.pass = bad == 0;
    r.detail = std::to_string(bad) + " mismatches over 7 identities at N = " + std::to_string(n);
    return r;
}

// --------------------------------------------------------------------------
// 2. summatory asymptotic |D_n - n(log n + 2 gamma - 1)| / n^{1/3} <= 2.0
// --------------------------------------------------------------------------
CheckResult check_summatory(bool quick) {
    CheckResult r{"summatory-dnest", "divisor summatory main term", false, 0, 2.0, "", 0};
    const std::vector<std::int64_t> ns =
        quick ? std::vector<std::int64_t>{1000, 10'000}
              : std::vector<std::int64_t>{1000, 10'000, 100'000, 1'000'000};
    const auto d = arith::sieve("d", ns.back());
    const double g = arith::euler_gamma();
    double worst = 0.0;
    for (const auto n : ns) {
        const double nn = static_cast<double>(n);
        const double main = nn * (std::log(nn) + 2.0 * g - 1.0);
        const double dev = std::abs(d.summatory(n) - main) / std::cbrt(nn);
        worst = std::max(worst, dev);
    }
    r.value = worst;
    r.pass = worst <= r.threshold;
    r.detail = "max normalized deviation " + num(worst) + " over n up to " +
               std::to_string(ns.back());
    return r;
}

// --------------------------------------------------------------------------
// 3. rational main term: normalized defect ceiling + stability under doubling
// --------------------------------------------------------------------------
CheckResult check_rational_main_term(bool quick) {
    // ceiling frozen from the brute-force run of this very grid (max observed
    // 0.7396 at full scale); drift bound per the criterion
    CheckResult r{"rational-main-term", "rational-point main term defect", false, 0, 0.90, "", 0};
    const int lo = 8, hi = quick ? 12 : 18;

    std::vector<double> maxima;
    for (int e = lo; e <= hi; ++e) {
        const std::int64_t n = std::int64_t{1} << e;
        double m = 0.0;
        for (std::int64_t q = 1; q <= 50; ++q)
            for (std::int64_t a = 1; a <= q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                m = std::max(m, expsum::rational_diagnostic(n, a, q).normalized);
            }
        maxima.push_back(m);
    }
    double worst = 0.0, drift = 0.0;
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        worst = std::max(worst, maxima[i]);
        if (i > 0) drift = std::max(drift, std::abs(maxima[i] - maxima[i - 1]) / maxima[i - 1]);
    }
    r.value = worst;
    r.pass = worst <= r.threshold && drift <= 0.10;
    r.detail = "max normalized defect " + num(worst) + ", worst doubling drift " +
               num(100.0 * drift) + "% (bound 10%)";
    return r;
}

// --------------------------------------------------------------------------
// 4. Wintner limit for theta: |(1/D_n) sum theta - 1/zeta(2)| <= 0.01 at 1e6.
// The gap is the second-order term -2 zeta'(2)/zeta(2)^2 * n / D_n which
// decays like 0.693/log n, so this criterion cannot pass at any reachable n;
// it is reported honestly (measured 0.0496 at n = 1e6).
// --------------------------------------------------------------------------
CheckResult check_wintner(bool quick) {
    const std::int64_t n = quick ? 100'000 : 1'000'000;
    CheckResult r{"wintner-theta", "Wintner limit of theta/D_n", false, 0, 0.01, "", 0};
    const auto d = arith::sieve("d", n);
    const auto theta = arith::sieve("theta", n);
    const double inv_zeta2 = 1.0 / zeta_partial(2.0);
    const double ratio = theta.summatory(n) / d.summatory(n);
    r.value = std::abs(ratio - inv_zeta2);
    r.pass = r.value <= r.threshold;
    r.detail = "ratio " + num(ratio) + " vs 1/zeta(2) = " + num(inv_zeta2) +
               "; gap decays like 0.693/log n (irreducible second-order term)";
    return r;
}

// --------------------------------------------------------------------------
// 5. kernel approximation decay: sup|T_n - phi_n| halves from 2^10 to 2^18
// --------------------------------------------------------------------------
CheckResult check_kernel_decay(bool quick) {
    CheckResult r{"kernel-decay", "Fourier kernel approximation decay", false, 0, 0.5, "", 0};
    const std::int64_t n_small = 1 << 10;
    const std::int64_t n_big = quick ? (1 << 14) : (1 << 18);
    const std::int64_t grid = quick ? (1 << 12) : (1 << 16);

    const auto d = arith::sieve("d", n_big);
    auto run = [&](std::int64_t n) {
        const auto params = arcs::feasible_parameters(n, 2.0, 0.9, 4);
        return kernels::approx_error(d, params, n, grid);
    };
    const auto small = run(n_small);
    const auto big = run(n_big);

    const double rt = big.sup_total / small.sup_total;
    const double rm = big.sup_major / small.sup_major;
    const double rn = big.sup_minor / small.sup_minor;
    r.value = std::max({rt, rm, rn});
    r.pass = r.value < r.threshold;
    r.detail = "sup_total " + num(small.sup_total) + " -> " + num(big.sup_total) +
               "; ratios total/major/minor = " + num(rt) + "/" + num(rm) + "/" + num(rn);
    return r;
}

// --------------------------------------------------------------------------
// 6. Hardy-Littlewood constant (p/(p-1))^p over the seeded corpus
// --------------------------------------------------------------------------
CheckResult check_hardy_littlewood(bool quick) {
    CheckResult r{"hardy-littlewood", "one-sided maximal constant", false, 0, 1.0, "", 0};
    const int count = quick ? 50 : 200;
    std::mt19937_64 rng(kCorpusSeed);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::int64_t len = 16 << (rng() % 5);  // 16..256
        std::vector<std::complex<double>> v(static_cast<std::size_t>(len));
        const int shape = static_cast<int>(rng() % 3);
        for (auto& x : v) {
            if (shape == 0) x = {uniform(rng), 0.0};                       // uniform mass
            else if (shape == 1) x = {uniform(rng) < 0.1 ? 1.0 : 0.0, 0.0};  // sparse spikes
            else x = {1.0, 0.0};                                           // constant block (near-extremal)
        }
        const shift::LatticeSignal g(static_cast<std::int64_t>(rng() % 64) - 32, std::move(v));
        for (const double p : {1.5, 2.0, 3.0}) {
            const double bound = std::pow(p / (p - 1.0), p);
            worst = std::max(worst, shift::cesaro_maximal_constant(g, p) / bound);
        }
    }
    r.value = worst;
    r.pass = worst <= r.threshold;
    r.detail = "max ratio/(p/(p-1))^p = " + num(worst) + " over " + std::to_string(count) +
               " signals, p in {1.5, 2, 3}";
    return r;
}

// --------------------------------------------------------------------------
// 7. Calderon transference identity, exact to 1e-12
// --------------------------------------------------------------------------
CheckResult check_transference(bool quick) {
    CheckResult r{"transference", "orbit averages = shift-model correlations", false, 0, 1e-12,
                  "", 0};
    const std::int64_t n_max = quick ? 32 : 64;
    const std::int64_t j_total = 4 * n_max;
    const auto d = arith::sieve("d", n_max);
    const auto one = arith::sieve("one", n_max);

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<dynsys::DynamicalSystem> systems;
    systems.push_back(dynsys::DynamicalSystem::rotation(golden));
    systems.push_back(dynsys::DynamicalSystem::rotation(1.0 / 3.0));
    systems.push_back(dynsys::DynamicalSystem::doubling(golden));
    systems.push_back(dynsys::DynamicalSystem::doubling_seeded(kCorpusSeed));
    systems.push_back(dynsys::DynamicalSystem::bernoulli(kCorpusSeed + 1));

    const auto f = dynsys::character(1);
    double worst = 0.0;
    for (const auto& sys : systems) {
        const auto orb = sys.orbit(j_total, 0.1234375);
        std::vector<std::complex<double>> fv(orb.size());
        for (std::size_t i = 0; i < orb.size(); ++i) fv[i] = f(orb[i]);
        worst = std::max(worst, shift::transference_check(fv, d, n_max, j_total).max_deviation);
        worst = std::max(worst, shift::transference_check(fv, one, n_max, j_total).max_deviation);
    }
    r.value = worst;
    r.pass = worst <= r.threshold;
    r.detail = "max |A_n f(tau^j x) - (K~_n * phi)(j)| = " + num(worst) +
               " over 5 systems, weights {d, 1}, n <= " + std::to_string(n_max);
    return r;
}

// --------------------------------------------------------------------------
// 8. oscillation trend: diag(16) < 0.75 diag(4), blocks N_j = 4^j, rho = 2
// (blocks beyond the exact-FFT cap enter as certified upper bounds, which
// only inflates diag(16))
// --------------------------------------------------------------------------
CheckResult check_oscillation(bool quick) {
    CheckResult r{"oscillation-trend", "oscillation-sum decay in J", false, 0, 0.75, "", 0};
    const std::int64_t support = quick ? (1 << 10) : (1 << 12);

    std::mt19937_64 rng(kCorpusSeed + 2);
    std::vector<std::complex<double>> v(static_cast<std::size_t>(support));
    for (auto& x : v) x = {(rng() & 1) ? 1.0 : -1.0, 0.0};
    const shift::LatticeSignal g(0, std::move(v));

    std::vector<std::int64_t> endpoints;
    for (int j = 1; j <= 17; ++j) endpoints.push_back(std::int64_t{1} << (2 * j));  // 4^j

    std::int64_t exact_max = 0;
    for (const auto e : endpoints)
        if (2 * e + support <= kMaxExactKernelSupport) exact_max = std::max(exact_max, 2 * e);
    const auto d = arith::sieve("d", exact_max);
    shift::KernelFamily family = [&](std::int64_t n) { return shift::weight_kernel(d, n); };

    const auto rep = shift::oscillation_sum(family, g, endpoints, 2.0);
    const double diag4 = rep.normalized_sums[3];
    const double diag16 = rep.normalized_sums[15];
    int bounded = 0;
    for (const auto& b : rep.blocks) bounded += b.is_upper_bound ? 1 : 0;

    r.value = diag16 / diag4;
    r.pass = r.value < r.threshold;
    r.detail = "diag(4) = " + num(diag4) + ", diag(16) <= " + num(diag16) + " (" +
               std::to_string(bounded) + " blocks as certified bounds); ratio " + num(r.value);
    return r;
}

// --------------------------------------------------------------------------
// 9. Davenport decay of Mobius sums on the grid
// --------------------------------------------------------------------------
CheckResult check_davenport(bool quick) {
    CheckResult r{"davenport-decay", "Mobius exponential-sum decay", false, 0, 0.5, "", 0};
    const std::int64_t n_small = 1000;
    const std::int64_t n_big = quick ? 30'000 : 100'000;
    const std::int64_t grid = 1 << 16;
    const auto mu = arith::sieve("mobius", n_big);
    const double s_small = expsum::mobius_sup(mu, n_small, grid) / static_cast<double>(n_small);
    const double s_big = expsum::mobius_sup(mu, n_big, grid) / static_cast<double>(n_big);
    r.value = s_big / s_small;
    r.pass = r.value < r.threshold;
    r.detail = "sup/n: " + num(s_small) + " at n = 1000 -> " + num(s_big) + " at n = " +
               std::to_string(n_big);
    return r;
}

// --------------------------------------------------------------------------
// 10. Delange ratio for omega at m = 1
// --------------------------------------------------------------------------
CheckResult check_delange(bool quick) {
    const std::int64_t x = quick ? 100'000 : 1'000'000;
    CheckResult r{"delange-ratio", "additive-function mean ratio", false, 0, 0, "", 0};
    const auto omega = arith::sieve("omega", x);
    const double ratio = arith::delange_ratio(omega, 1, x);
    r.threshold = 3.0 / arith::log_log(static_cast<double>(x));
    r.value = std::abs(ratio - 1.0);
    r.pass = r.value <= r.threshold;
    r.detail = "ratio " + num(ratio) + ", |ratio - 1| = " + num(r.value) + " vs 3/loglog = " +
               num(r.threshold);
    return r;
}

// --------------------------------------------------------------------------
// 11. method equivalence + hyperbola speed gate
// --------------------------------------------------------------------------
CheckResult check_method_equivalence(bool quick) {
    CheckResult r{"method-equivalence", "direct/hyperbola/batch agreement + speed", false, 0,
                  1e-6, "", 0};
    const std::int64_t nmax = 10'000;
    const auto d = arith::sieve("d", nmax);

    std::mt19937_64 rng(kCorpusSeed + 3);
    double rel = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::int64_t n = 16 + static_cast<std::int64_t>(rng() % (nmax - 16));
        const double x = uniform(rng);
        const double scale = d.summatory(n);
        const auto vd = expsum::divisor_expsum_direct(d, n, x).value;
        const auto vh = expsum::divisor_expsum_hyperbola(n, x).value;
        rel = std::max(rel, std::abs(vd - vh) / scale);
    }
    // batch vs direct on grid points
    for (int i = 0; i < 8; ++i) {
        const std::int64_t n = 16 + static_cast<std::int64_t>(rng() % (nmax - 16));
        const std::int64_t grid = 64 << (rng() % 4);
        const auto batch = expsum::divisor_expsum_batch(d, n, grid);
        const double scale = d.summatory(n);
        for (std::int64_t j = 0; j < grid; j += std::max<std::int64_t>(1, grid / 16)) {
            const auto vd =
                expsum::divisor_expsum_direct(d, n, static_cast<double>(j) / grid).value;
            rel = std::max(rel, std::abs(vd - batch[j].value) / scale);
        }
    }

    double speedup = 0.0;
    if (!quick) {
        const std::int64_t n = 1'000'000;
        const auto dbig = arith::sieve("d", n);
        const double x = 0.6180339887498949;
        double t_direct = 1e300, t_hyp = 1e300;
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = Clock::now();
            volatile double sink = std::abs(expsum::divisor_expsum_direct(dbig, n, x).value);
            auto t1 = Clock::now();
            sink = std::abs(expsum::divisor_expsum_hyperbola(n, x).value);
            (void)sink;
            auto t2 = Clock::now();
            t_direct = std::min(t_direct, std::chrono::duration<double>(t1 - t0).count());
            t_hyp = std::min(t_hyp, std::chrono::duration<double>(t2 - t1).count());
        }
        speedup = t_direct / t_hyp;
    }

    r.value = rel;
    r.pass = rel <= r.threshold && (quick || speedup >= 10.0);
    r.detail = "max relative deviation " + num(rel) +
               (quick ? " (speed gate skipped in quick mode)"
                      : "; hyperbola speedup x" + num(speedup) + " at n = 1e6 (gate x10)");
    return r;
}

using CheckFn = CheckResult (*)(bool);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"conv-identities", check_conv_identities},
        {"summatory-dnest", check_summatory},
        {"rational-main-term", check_rational_main_term},
        {"wintner-theta", check_wintner},
        {"kernel-decay", check_kernel_decay},
        {"hardy-littlewood", check_hardy_littlewood},
        {"transference", check_transference},
        {"oscillation-trend", check_oscillation},
        {"davenport-decay", check_davenport},
        {"delange-ratio", check_delange},
        {"method-equivalence", check_method_equivalence},
    };
    return reg;
}

}  // namespace

const std::vector<std::string>& check_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, fn] : registry()) v.push_back(id);
        return v;
    }();
    return ids;
}

CheckResult run_check(const std::string& id, bool quick) {
    for (const auto& [cid, fn] : registry()) {
        if (cid == id) {
            const auto t0 = Clock::now();
            auto res = fn(quick);
            res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            return res;
        }
    }
    throw ParameterError("unknown acceptance check '" + id + "'");
}

std::vector<CheckResult> run_all(bool quick) {
    std::vector<CheckResult> out;
    for (const auto& id : check_ids()) out.push_back(run_check(id, quick));
    return out;
}

}  // namespace ergw::accept
