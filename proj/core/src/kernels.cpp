#include "ergw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "ergw/errors.hpp"
#include "ergw/expsum.hpp"
#include "ergw/fft.hpp"
#include "ergw/parallel.hpp"

namespace ergw::kernels {

namespace {

double wrap_half(double t) {
    // reduce to [-1/2, 1/2)
    double r = t - std::nearbyint(t);
    if (r >= 0.5) r -= 1.0;
    return r;
}

// shared log-value tables, one per n (psi evaluations are log-bound otherwise)
std::shared_ptr<const std::vector<double>> log_table(std::int64_t n) {
    static std::mutex mu;
    static std::map<std::int64_t, std::weak_ptr<const std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end())
        if (auto sp = it->second.lock()) return sp;
    auto t = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k) (*t)[k - 1] = std::log(static_cast<double>(k));
    cache[n] = t;
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// BumpFunction
// ---------------------------------------------------------------------------

BumpFunction::BumpFunction(std::int64_t M) : m_(M) {
    if (M <= 2) throw ParameterError("BumpFunction: M > 2 required");
}

double BumpFunction::eval(double x) const {
    // smooth step h(t) = g(t)/(g(t)+g(1-t)), g(t) = exp(-1/t);
    // eta(x) = h((1/2 - |x|)/(1/4)): exact 1 on [-1/4,1/4], 0 off [-1/2,1/2]
    const double t = (0.5 - std::abs(x)) * 4.0;
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double g = std::exp(-1.0 / t);
    const double g1 = std::exp(-1.0 / (1.0 - t));
    return g / (g + g1);
}

double BumpFunction::scaled(int s, double x) const {
    // eta_s(x) = eta(4^s M x)
    return eval(std::ldexp(x * static_cast<double>(m_), 2 * s));
}

// ---------------------------------------------------------------------------
// ModelKernel
// ---------------------------------------------------------------------------

ModelKernel::ModelKernel(std::int64_t n, std::int64_t q) : n_(n), q_(q == 0 ? 1 : q) {
    if (n < 2) throw ParameterError("model_weights: n >= 2 required (log n = 0 at n = 1)");
    if (q < 0) throw ParameterError("model_weights: q >= 0 required");
    const double logn = std::log(static_cast<double>(n));
    const double qd = static_cast<double>(q_);
    coeff_log_ = 1.0 / (qd * static_cast<double>(n) * logn);
    coeff_const_ = 2.0 * (arith::euler_gamma() - std::log(qd)) * coeff_log_;
    logs_ = log_table(n);
}

ModelKernel model_weights(std::int64_t n, std::int64_t q) { return ModelKernel(n, q); }

double ModelKernel::weight(std::int64_t k) const {
    if (k < 1 || k > n_) throw ParameterError("model kernel weight index out of range");
    return coeff_log_ * (*logs_)[k - 1] + coeff_const_;
}

double ModelKernel::weight_sum() const {
    double s = 0.0, c = 0.0;
    for (std::int64_t k = 1; k <= n_; ++k) {
        const double y = weight(k) - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

std::complex<double> ModelKernel::psi(double x) const { return psi_direct(x); }

std::complex<double> ModelKernel::psi_direct(double x) const {
    constexpr long double kPiL = 3.14159265358979323846264338327950288L;
    const long double xl = x;
    auto wrapl = [](long double t) {
        long double r = t - nearbyintl(t);
        if (r >= 0.5L) r -= 1.0L;
        return r;
    };
    const long double ph0 = 2.0L * kPiL * wrapl(xl);
    const std::complex<long double> step{cosl(ph0), sinl(ph0)};
    std::complex<long double> z{1.0L, 0.0L};
    long double re = 0.0L, im = 0.0L, cre = 0.0L, cim = 0.0L;
    const double* lg = logs_->data();
    for (std::int64_t k = 1; k <= n_; ++k) {
        if ((k & 4095) == 1) {
            const long double ph = 2.0L * kPiL * wrapl(static_cast<long double>(k) * xl);
            z = {cosl(ph), sinl(ph)};
        } else {
            z *= step;
        }
        const long double w = coeff_log_ * lg[k - 1] + coeff_const_;
        long double y = w * z.real() - cre;
        long double t = re + y;
        cre = (t - re) - y;
        re = t;
        y = w * z.imag() - cim;
        t = im + y;
        cim = (t - im) - y;
        im = t;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::complex<double> ModelKernel::psi_closed(double x) const {
    // Abel summation of the log-weighted part:
    //   sum_{k<=n} log k z^k = log n G_n - sum_{k<n} log(1+1/k) G_k,
    // with every G_k = sum_{j<=k} z^j in geometric closed form.
    const long double u = x;
    std::complex<double> abel{0.0, 0.0};
    for (std::int64_t k = 1; k < n_; ++k)
        abel += std::log1p(1.0 / static_cast<double>(k)) * expsum::geometric_sum(u, k);
    const auto gn = expsum::geometric_sum(u, n_);
    const std::complex<double> slog =
        std::log(static_cast<double>(n_)) * gn - abel;
    return coeff_log_ * slog + coeff_const_ * gn;
}

// ---------------------------------------------------------------------------
// DivisorKernel
// ---------------------------------------------------------------------------

DivisorKernel::DivisorKernel(const arith::ArithmeticTable& d, std::int64_t n) : d_(&d), n_(n) {
    if (n < 1) throw ParameterError("DivisorKernel: n >= 1 required");
    if (d.size() < n) throw ResourceError("DivisorKernel: divisor table too small");
    dn_ = d.summatory(n);
}

double DivisorKernel::weight(std::int64_t k) const {
    if (k < 1 || k > n_) return 0.0;
    return d_->value(k) / dn_;
}

std::complex<double> DivisorKernel::transform(double x) const {
    return expsum::divisor_expsum_hyperbola(n_, x).value / dn_;
}

std::vector<std::complex<double>> DivisorKernel::transform_grid(std::int64_t grid) const {
    auto batch = expsum::divisor_expsum_batch(*d_, n_, grid);
    std::vector<std::complex<double>> out(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) out[j] = batch[j].value / dn_;
    return out;
}

// ---------------------------------------------------------------------------
// ApproximantKernel
// ---------------------------------------------------------------------------

int default_band_cutoff(const arcs::ArcParameters& params) {
    int s = 1;
    while ((std::int64_t{1} << s) <= params.P) ++s;  // s = ceil(log2 P) + 1
    return s;
}

ApproximantKernel::ApproximantKernel(const arcs::ArcParameters& params, std::int64_t n,
                                     std::optional<int> s_max, std::optional<int> truncation)
    : params_(params),
      n_(n),
      s_max_(s_max.value_or(default_band_cutoff(params))),
      trunc_(truncation),
      bump_(params.M) {
    if (n < 2) throw ParameterError("ApproximantKernel: n >= 2 required");
    if (s_max_ < 1) throw ParameterError("ApproximantKernel: band cutoff >= 1 required");
    if (s_max_ > 24) throw ResourceError("ApproximantKernel: band cutoff too large");
    if (trunc_ && *trunc_ < 1) throw ParameterError("ApproximantKernel: truncation t >= 1 required");
    const std::int64_t qmax = (std::int64_t{1} << s_max_) - 1;
    psi_.reserve(static_cast<std::size_t>(qmax));
    for (std::int64_t q = 1; q <= qmax; ++q) psi_.emplace_back(n_, q);
}

std::vector<ApproximantKernel::ActiveTerm> ApproximantKernel::active_terms(double x) const {
    std::vector<ActiveTerm> terms;
    const int hi = trunc_ ? std::min(*trunc_, s_max_) : s_max_;

    // q = 1 term at the wrapped point (covers both ends of [0,1), and the
    // band-1 center 1/1 which is the same circle point as 0/1)
    const double u = wrap_half(x);
    const double m = static_cast<double>(params_.M);
    if (std::abs(u) < 0.5 / m) {
        const double eta = bump_.scaled(0, u);
        if (eta > 0.0) terms.push_back({0, {0, 1}, eta * psi_[0].psi(u)});
    }

    for (int s = 2; s <= hi; ++s) {
        // at most one band-s center can be within the eta_s support; when it
        // exists it is the closest fraction with denominator < 2^s
        const double halfwidth = 0.5 / (std::ldexp(m, 2 * s));
        const auto c = arcs::best_rational(x, (std::int64_t{1} << s) - 1);
        if (c.q < (std::int64_t{1} << (s - 1)) || c.q >= (std::int64_t{1} << s)) continue;
        const double y = x - c.value();
        if (std::abs(y) >= halfwidth) continue;
        const double eta = bump_.scaled(s, y);
        if (eta > 0.0) terms.push_back({s, c, eta * psi_[c.q - 1].psi(y)});
    }
    return terms;
}

std::complex<double> ApproximantKernel::eval(double x) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& t : active_terms(x)) acc += t.value;
    return acc;
}

std::complex<double> phi_eval(const arcs::ArcParameters& params, std::int64_t n, double x) {
    return ApproximantKernel(params, n).eval(x);
}

ApproximantKernel truncated_kernel(const arcs::ArcParameters& params, std::int64_t n, int t) {
    return ApproximantKernel(params, n, std::nullopt, t);
}

// ---------------------------------------------------------------------------
// approx_error
// ---------------------------------------------------------------------------

std::vector<GridPointError> approx_error_rows(const arith::ArithmeticTable& d,
                                              const arcs::ArcParameters& params, std::int64_t n,
                                              std::int64_t grid) {
    if (grid < 1) throw ParameterError("approx_error: grid >= 1 required");
    const DivisorKernel kernel(d, n);
    const ApproximantKernel phi(params, n);
    const auto tvals = kernel.transform_grid(grid);

    std::vector<GridPointError> rows(static_cast<std::size_t>(grid));
    parallel_for(0, grid, [&](std::int64_t j) {
        const double x = static_cast<double>(j) / static_cast<double>(grid);
        const auto pv = phi.eval(x);
        const auto loc = arcs::classify(x, params);
        rows[j] = {x, tvals[j], pv, loc.is_major, std::abs(tvals[j] - pv)};
    });
    return rows;
}

ApproxErrorReport approx_error(const arith::ArithmeticTable& d, const arcs::ArcParameters& params,
                               std::int64_t n, std::int64_t grid) {
    const auto rows = approx_error_rows(d, params, n, grid);
    ApproxErrorReport rep;
    rep.n = n;
    rep.grid = grid;
    rep.S = params.S;
    rep.tau = params.tau;
    rep.M = params.M;
    for (const auto& r : rows) {
        rep.sup_total = std::max(rep.sup_total, r.abs_err);
        if (r.is_major)
            rep.sup_major = std::max(rep.sup_major, r.abs_err);
        else
            rep.sup_minor = std::max(rep.sup_minor, r.abs_err);
    }
    rep.normalized = std::pow(std::log(static_cast<double>(n)), params.S) * rep.sup_total;
    return rep;
}

// ---------------------------------------------------------------------------
// inverse transform
// ---------------------------------------------------------------------------

InverseTransform inverse_transform(const std::function<std::complex<double>(double)>& evaluator,
                                   std::int64_t support_bound, std::int64_t grid,
                                   double alias_tolerance) {
    if (support_bound < 1) throw ParameterError("inverse_transform: support bound >= 1 required");
    std::int64_t gg = grid;
    if (gg == 0) {
        gg = 64;
        while (gg < 4 * support_bound) gg *= 2;
    }
    if (gg < 4 * support_bound) throw ParameterError("inverse_transform: grid >= 4B required");
    if (gg > (1LL << 24)) throw ResourceError("inverse_transform: grid too large");

    std::vector<std::complex<double>> samples(static_cast<std::size_t>(gg));
    parallel_for(0, gg, [&](std::int64_t j) {
        samples[j] = evaluator(static_cast<double>(j) / static_cast<double>(gg));
    });

    // trapezoid rule on the periodic grid: L(k) = (1/G) sum_j phi(j/G) e^{-2 pi i k j/G}
    auto coef = samples;
    fft::forward(coef);
    const double inv = 1.0 / static_cast<double>(gg);
    for (auto& c : coef) c *= inv;

    auto coef_at = [&](std::int64_t k) {  // k in [-G/2, G/2)
        return coef[static_cast<std::size_t>((k + gg) % gg)];
    };

    double total_l1 = 0.0, tail = 0.0;
    for (std::int64_t k = -gg / 2; k < gg - gg / 2; ++k) {
        const double a = std::abs(coef_at(k));
        total_l1 += a;
        if (std::llabs(k) > support_bound) tail += a;
    }
    if (tail > alias_tolerance * std::max(1.0, total_l1))
        throw ResolutionError("inverse_transform: aliasing tail mass " + std::to_string(tail));

    InverseTransform out;
    out.offset = -support_bound;
    out.values.resize(static_cast<std::size_t>(2 * support_bound + 1));
    for (std::int64_t k = -support_bound; k <= support_bound; ++k)
        out.values[static_cast<std::size_t>(k + support_bound)] = coef_at(k);
    out.tail_mass = tail;

    // reconstruction error on the grid from the truncated coefficients
    std::vector<std::complex<double>> trunc(static_cast<std::size_t>(gg), {0.0, 0.0});
    for (std::int64_t k = -support_bound; k <= support_bound; ++k)
        trunc[static_cast<std::size_t>((k + gg) % gg)] = coef_at(k);
    fft::backward(trunc);
    double err = 0.0;
    for (std::int64_t j = 0; j < gg; ++j) err = std::max(err, std::abs(trunc[j] - samples[j]));
    out.reconstruction_error = err;
    return out;
}

}  // namespace ergw::kernels
