#include "ergw/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "ergw/config.hpp"
#include "ergw/errors.hpp"

namespace ergw::arith {

namespace {

// Smallest-prime-factor table for 2..n; spf[k] = least prime dividing k.
// Linear sieve, O(n) time and memory.
std::vector<std::uint32_t> build_spf(std::int64_t n) {
    if (n > kMaxSieveSize)
        throw ResourceError("sieve size " + std::to_string(n) + " exceeds limit " +
                            std::to_string(kMaxSieveSize));
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf[i] || p * static_cast<std::int64_t>(i) > n) break;
            spf[p * i] = p;
        }
    }
    return spf;
}

struct Factorization {
    // (prime, exponent) pairs, at most 15 for k <= 2e8
    std::array<std::pair<std::int64_t, int>, 16> pe;
    int count = 0;
};

Factorization factorize(std::int64_t k, const std::vector<std::uint32_t>& spf) {
    Factorization f;
    while (k > 1) {
        std::int64_t p = spf[k];
        int e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        f.pe[f.count++] = {p, e};
    }
    return f;
}

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ArithmeticTable
// ---------------------------------------------------------------------------

ArithmeticTable ArithmeticTable::from_integer(std::string name, std::vector<std::int64_t> values,
                                              std::optional<double> param) {
    if (values.empty()) throw ParameterError("table must have N >= 1 entries");
    ArithmeticTable t;
    t.name_ = std::move(name);
    t.n_ = static_cast<std::int64_t>(values.size());
    t.param_ = param;
    t.ivals_ = std::move(values);
    t.build_summatory();
    return t;
}

ArithmeticTable ArithmeticTable::from_real(std::string name, std::vector<double> values,
                                           std::optional<double> param) {
    if (values.empty()) throw ParameterError("table must have N >= 1 entries");
    ArithmeticTable t;
    t.name_ = std::move(name);
    t.n_ = static_cast<std::int64_t>(values.size());
    t.param_ = param;
    t.rvals_ = std::move(values);
    t.build_summatory();
    return t;
}

void ArithmeticTable::build_summatory() {
    if (is_integer()) {
        isum_.resize(ivals_.size());
        iabs_.resize(ivals_.size());
        std::int64_t s = 0, w = 0;
        for (std::size_t i = 0; i < ivals_.size(); ++i) {
            s += ivals_[i];
            w += std::abs(ivals_[i]);
            isum_[i] = s;
            iabs_[i] = w;
        }
    } else {
        rsum_.resize(rvals_.size());
        rabs_.resize(rvals_.size());
        double s = 0, w = 0, cs = 0, cw = 0;  // Kahan-compensated prefixes
        for (std::size_t i = 0; i < rvals_.size(); ++i) {
            double y = rvals_[i] - cs;
            double t = s + y;
            cs = (t - s) - y;
            s = t;
            double ya = std::abs(rvals_[i]) - cw;
            double ta = w + ya;
            cw = (ta - w) - ya;
            w = ta;
            rsum_[i] = s;
            rabs_[i] = w;
        }
    }
}

double ArithmeticTable::value(std::int64_t k) const {
    if (k < 1 || k > n_) throw ParameterError("index out of table range");
    return is_integer() ? static_cast<double>(ivals_[k - 1]) : rvals_[k - 1];
}

std::int64_t ArithmeticTable::ivalue(std::int64_t k) const {
    if (!is_integer()) throw ParameterError("table '" + name_ + "' is not integer-valued");
    if (k < 1 || k > n_) throw ParameterError("index out of table range");
    return ivals_[k - 1];
}

double ArithmeticTable::summatory(std::int64_t k) const {
    if (k < 1 || k > n_) throw ParameterError("index out of table range");
    return is_integer() ? static_cast<double>(isum_[k - 1]) : rsum_[k - 1];
}

double ArithmeticTable::abs_summatory(std::int64_t k) const {
    if (k < 1 || k > n_) throw ParameterError("index out of table range");
    return is_integer() ? static_cast<double>(iabs_[k - 1]) : rabs_[k - 1];
}

// ---------------------------------------------------------------------------
// sieve
// ---------------------------------------------------------------------------

std::string canonical_name(const std::string& name) {
    static const std::unordered_map<std::string, std::string> alias = {
        {"d", "d"},          {"divisor", "d"},
        {"mu", "mobius"},    {"mobius", "mobius"},
        {"mu-tilde", "mobius-tilde"}, {"mobius-tilde", "mobius-tilde"},
        {"lambda", "liouville"}, {"liouville", "liouville"},
        {"omega", "omega"},  {"Omega", "big-omega"}, {"big-omega", "big-omega"},
        {"theta", "theta"},  {"delta", "delta"},     {"one", "one"},
        {"sigma", "sigma"},  {"jordan", "jordan"},   {"J", "jordan"},
        {"power", "power"},  {"zeta-power", "power"},
    };
    auto it = alias.find(name);
    if (it == alias.end()) throw ParameterError("unknown arithmetic function '" + name + "'");
    return it->second;
}

bool sieve_needs_exponent(const std::string& name) {
    const std::string c = canonical_name(name);
    return c == "sigma" || c == "jordan" || c == "power";
}

ArithmeticTable sieve(const std::string& rawname, std::int64_t n, std::optional<double> s) {
    if (n < 1) throw ParameterError("sieve requires N >= 1");
    const std::string name = canonical_name(rawname);
    if (sieve_needs_exponent(name) && !s.has_value())
        throw ParameterError("function '" + name + "' requires the exponent s");
    if (!sieve_needs_exponent(name) && s.has_value())
        throw ParameterError("function '" + name + "' takes no exponent");

    const std::size_t nn = static_cast<std::size_t>(n);

    // trivial functions need no factor table
    if (name == "one") return ArithmeticTable::from_integer("one", std::vector<std::int64_t>(nn, 1));
    if (name == "delta") {
        std::vector<std::int64_t> v(nn, 0);
        v[0] = 1;
        return ArithmeticTable::from_integer("delta", std::move(v));
    }
    if (name == "power") {
        std::vector<double> v(nn);
        for (std::int64_t k = 1; k <= n; ++k)
            v[k - 1] = std::pow(static_cast<double>(k), *s);
        return ArithmeticTable::from_real("power", std::move(v), s);
    }
    if (name == "mobius-tilde") {
        // mu~(k) = mu(r) if k = r^2, else 0
        std::vector<std::int64_t> v(nn, 0);
        std::int64_t r = isqrt64(n);
        auto mu = sieve("mobius", std::max<std::int64_t>(r, 1));
        for (std::int64_t j = 1; j <= r; ++j) v[j * j - 1] = mu.ivalue(j);
        return ArithmeticTable::from_integer("mobius-tilde", std::move(v));
    }

    const auto spf = build_spf(n);

    if (name == "sigma" || name == "jordan") {
        std::vector<double> v(nn, 1.0);
        for (std::int64_t k = 2; k <= n; ++k) {
            auto f = factorize(k, spf);
            double val = 1.0;
            for (int i = 0; i < f.count; ++i) {
                const double ps = std::pow(static_cast<double>(f.pe[i].first), *s);
                if (name == "sigma") {
                    // sigma_s(p^a) = 1 + p^s + ... + p^{as}
                    double term = 1.0, acc = 1.0;
                    for (int e = 0; e < f.pe[i].second; ++e) {
                        term *= ps;
                        acc += term;
                    }
                    val *= acc;
                } else {
                    // J_s(p^a) = p^{as} - p^{(a-1)s}
                    double pa = 1.0;
                    for (int e = 1; e < f.pe[i].second; ++e) pa *= ps;
                    val *= pa * (ps - 1.0);
                }
            }
            v[k - 1] = val;
        }
        return ArithmeticTable::from_real(name, std::move(v), s);
    }

    std::vector<std::int64_t> v(nn, 0);
    v[0] = (name == "omega" || name == "big-omega") ? 0 : 1;
    for (std::int64_t k = 2; k <= n; ++k) {
        auto f = factorize(k, spf);
        std::int64_t val;
        if (name == "d") {
            val = 1;
            for (int i = 0; i < f.count; ++i) val *= f.pe[i].second + 1;
        } else if (name == "mobius") {
            bool squarefree = true;
            for (int i = 0; i < f.count; ++i)
                if (f.pe[i].second > 1) squarefree = false;
            val = squarefree ? ((f.count % 2 == 0) ? 1 : -1) : 0;
        } else if (name == "liouville") {
            int big = 0;
            for (int i = 0; i < f.count; ++i) big += f.pe[i].second;
            val = (big % 2 == 0) ? 1 : -1;
        } else if (name == "omega") {
            val = f.count;
        } else if (name == "big-omega") {
            val = 0;
            for (int i = 0; i < f.count; ++i) val += f.pe[i].second;
        } else {  // theta = 2^omega, the number of squarefree divisors
            val = ipow(2, f.count);
        }
        v[k - 1] = val;
    }
    return ArithmeticTable::from_integer(name, std::move(v));
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> primes;
    if (n < 2) return primes;
    auto spf = build_spf(n);
    for (std::int64_t k = 2; k <= n; ++k)
        if (spf[k] == static_cast<std::uint32_t>(k)) primes.push_back(k);
    return primes;
}

// ---------------------------------------------------------------------------
// Dirichlet convolution
// ---------------------------------------------------------------------------

ArithmeticTable dirichlet_convolve(const ArithmeticTable& a, const ArithmeticTable& b) {
    if (a.size() != b.size())
        throw ParameterError("dirichlet_convolve: tables have different N (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    const std::int64_t n = a.size();
    const std::string name = a.name() + "*" + b.name();

    if (a.is_integer() && b.is_integer()) {
        const auto& av = a.integer_values();
        const auto& bv = b.integer_values();
        std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
        for (std::int64_t d = 1; d <= n; ++d) {
            const std::int64_t ad = av[d - 1];
            if (ad == 0) continue;
            for (std::int64_t m = d, q = 1; m <= n; m += d, ++q)
                out[m - 1] += ad * bv[q - 1];
        }
        return ArithmeticTable::from_integer(name, std::move(out));
    }

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t d = 1; d <= n; ++d) {
        const double ad = a.value(d);
        if (ad == 0.0) continue;
        for (std::int64_t m = d, q = 1; m <= n; m += d, ++q)
            out[m - 1] += ad * b.value(q);
    }
    return ArithmeticTable::from_real(name, std::move(out));
}

// ---------------------------------------------------------------------------
// Wintner-type limit
// ---------------------------------------------------------------------------

ConvolutionLimitReport convolution_limit(const ArithmeticTable& a, const ArithmeticTable& b,
                                         double alpha) {
    if (a.size() != b.size()) throw ParameterError("convolution_limit: mismatched table sizes");
    const std::int64_t n = a.size();
    for (std::int64_t k = 1; k <= n; ++k)
        if (a.value(k) < 0.0) throw ParameterError("convolution_limit: a must be non-negative");

    auto conv = dirichlet_convolve(a, b);

    ConvolutionLimitReport rep;
    rep.alpha = alpha;

    // checkpoints at powers of two plus the endpoint
    for (std::int64_t m = 2; m <= n; m *= 2) {
        double an = a.summatory(m);
        if (an == 0.0) throw DegenerateInputError("convolution_limit: A(n) = 0 at n = " + std::to_string(m));
        rep.partial_sums.emplace_back(m, conv.summatory(m) / an);
    }
    if (rep.partial_sums.empty() || rep.partial_sums.back().first != n) {
        double an = a.summatory(n);
        if (an == 0.0) throw DegenerateInputError("convolution_limit: A(n) = 0");
        rep.partial_sums.emplace_back(n, conv.summatory(n) / an);
    }

    // Truncation M for the target series sum_m b(m)/m^alpha. The in-table
    // remainder sum_{M<m<=N} |b(m)|/m^alpha is exact; the beyond-table tail is
    // extrapolated by the decay ratio of consecutive dyadic blocks (geometric
    // majorant; 0 when the last block is empty, as for delta). M is the
    // smallest checkpoint keeping the bound under 1e-6 when possible.
    std::vector<double> absdec(static_cast<std::size_t>(n));
    for (std::int64_t m = 1; m <= n; ++m)
        absdec[m - 1] = std::abs(b.value(m)) / std::pow(static_cast<double>(m), alpha);
    std::vector<double> suffix(absdec.size() + 1, 0.0);
    for (std::int64_t m = n; m >= 1; --m) suffix[m - 1] = suffix[m] + absdec[m - 1];

    double beyond = 0.0;
    if (n >= 4) {
        double last = suffix[n / 2] - suffix[n];          // block (n/2, n]
        double prev = suffix[n / 4] - suffix[n / 2];      // block (n/4, n/2]
        if (prev > 0.0 && last > 0.0 && last < prev) {
            double rho = last / prev;
            beyond = last * rho / (1.0 - rho);
        } else if (last > 0.0) {
            beyond = std::numeric_limits<double>::infinity();
        }
    }

    std::int64_t M = n;
    for (std::int64_t m = 1; m <= n; ++m) {
        if (suffix[m] + beyond < 1e-6) {
            M = m;
            break;
        }
    }
    rep.truncation = M;
    rep.tail_bound = suffix[M] + beyond;

    double target = 0.0, c = 0.0;
    for (std::int64_t m = 1; m <= M; ++m) {
        double term = b.value(m) / std::pow(static_cast<double>(m), alpha);
        double y = term - c;
        double t = target + y;
        c = (t - target) - y;
        target = t;
    }
    rep.target = target;
    return rep;
}

// ---------------------------------------------------------------------------
// Mobius-inverted coprime sums
// ---------------------------------------------------------------------------

std::pair<std::complex<double>, std::complex<double>> coprime_sum_inversion(
    const std::function<std::complex<double>(double)>& f, std::int64_t q) {
    if (q < 1) throw ParameterError("coprime_sum_inversion: q >= 1 required");

    std::complex<double> lhs{0.0, 0.0};
    for (std::int64_t a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) lhs += f(static_cast<double>(a) / static_cast<double>(q));

    // mu on divisors of q by direct factorization of q
    auto mu_of = [](std::int64_t m) -> std::int64_t {
        std::int64_t v = 1;
        for (std::int64_t p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                v = -v;
            }
        }
        if (m > 1) v = -v;
        return v;
    };

    std::complex<double> rhs{0.0, 0.0};
    for (std::int64_t d = 1; d <= q; ++d) {
        if (q % d != 0) continue;
        const std::int64_t mu = mu_of(q / d);
        if (mu == 0) continue;
        std::complex<double> inner{0.0, 0.0};
        for (std::int64_t m = 1; m <= d; ++m)
            inner += f(static_cast<double>(m) / static_cast<double>(d));
        rhs += static_cast<double>(mu) * inner;
    }
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// moment / Turan-Kubilius / Delange diagnostics
// ---------------------------------------------------------------------------

double moment_ratio(const ArithmeticTable& table, double m, std::int64_t n) {
    if (m < 1.0) throw ParameterError("moment_ratio: m >= 1 required");
    if (n < 1 || n > table.size()) throw ParameterError("moment_ratio: n out of range");
    double s = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        double v = table.value(k);
        if (v < 0.0) throw ParameterError("moment_ratio: table must be non-negative");
        s += std::pow(v, m);
    }
    const double mean = table.summatory(n) / static_cast<double>(n);
    if (mean == 0.0) throw DegenerateInputError("moment_ratio: zero mean");
    return s / (static_cast<double>(n) * std::pow(mean, m));
}

std::pair<double, double> turan_kubilius_defect(const ArithmeticTable& g, std::int64_t n) {
    if (n < 2 || n > g.size()) throw ParameterError("turan_kubilius_defect: n out of range");

    double center = 0.0;  // sum over prime powers p^a <= n of g(p^a)/(p^a (1-1/p))
    double rhs = 0.0;
    for (std::int64_t p : primes_up_to(n)) {
        double pa = static_cast<double>(p);
        for (std::int64_t q = p; q <= n; ) {
            const double gpa = g.value(q);
            center += gpa / (pa * (1.0 - 1.0 / static_cast<double>(p)));
            rhs += gpa * gpa / pa;
            if (q > n / p) break;
            q *= p;
            pa *= static_cast<double>(p);
        }
    }

    double lhs = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        const double dkk = g.value(k) - center;
        lhs += dkk * dkk;
    }
    lhs /= static_cast<double>(n);

    if (rhs == 0.0) throw DegenerateInputError("turan_kubilius_defect: rhs = 0 (g vanishes on prime powers)");
    return {lhs, rhs};
}

double log_log(double x) { return std::log(std::log(2.0 + x)); }

double delange_ratio(const ArithmeticTable& g, std::int64_t m, std::int64_t x) {
    if (m < 1) throw ParameterError("delange_ratio: m >= 1 required");
    if (x < 1 || x > g.size()) throw ParameterError("delange_ratio: x out of table range");
    double s = 0.0;
    for (std::int64_t k = 1; k <= x; ++k) {
        double v = g.value(k), t = 1.0;
        for (std::int64_t j = 0; j < m; ++j) t *= v;
        s += t;
    }
    const double ll = log_log(static_cast<double>(x));
    return s / (static_cast<double>(x) * std::pow(ll, static_cast<double>(m)));
}

// ---------------------------------------------------------------------------
// Euler's constant via H_n - log n, Richardson-accelerated. The defect
// H_n - log n - gamma = 1/(2n) - 1/(12n^2) + ... is a series in 1/n, so
// step-doubling extrapolation with weights 2^j removes it order by order.
// ---------------------------------------------------------------------------

double euler_gamma() {
    static const double value = [] {
        constexpr int levels = 5;
        const std::int64_t n0 = 1 << 16;
        double t[levels][levels];
        for (int k = 0; k < levels; ++k) {
            const std::int64_t n = n0 << k;
            double h = 0.0, c = 0.0;
            for (std::int64_t m = 1; m <= n; ++m) {
                double y = 1.0 / static_cast<double>(m) - c;
                double s = h + y;
                c = (s - h) - y;
                h = s;
            }
            t[k][0] = h - std::log(static_cast<double>(n));
        }
        for (int j = 1; j < levels; ++j)
            for (int k = levels - 1; k >= j; --k) {
                const double w = std::pow(2.0, j);
                t[k][j] = (w * t[k][j - 1] - t[k - 1][j - 1]) / (w - 1.0);
            }
        const double g = t[levels - 1][levels - 1];
        if (std::abs(g - 0.5772156649) > 1e-9)
            throw Error("euler_gamma self-check failed");
        return g;
    }();
    return value;
}

}  // namespace ergw::arith
