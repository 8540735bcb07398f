#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ergw::arith {

// ---------------------------------------------------------------------------
// ArithmeticTable: values of one arithmetic function on 1..N plus running
// summatory sums. Integer-valued functions (d, mu, ...) are kept exactly in
// int64; sigma_s / J_s / power_s with real exponent s are kept as doubles.
// Tables are immutable after construction and safe to share across threads.
// ---------------------------------------------------------------------------
class ArithmeticTable {
  public:
    static ArithmeticTable from_integer(std::string name, std::vector<std::int64_t> values,
                                        std::optional<double> param = std::nullopt);
    static ArithmeticTable from_real(std::string name, std::vector<double> values,
                                     std::optional<double> param = std::nullopt);

    const std::string& name() const { return name_; }
    std::int64_t size() const { return n_; }
    bool is_integer() const { return !ivals_.empty(); }
    std::optional<double> param() const { return param_; }

    // value at k, 1 <= k <= N
    double value(std::int64_t k) const;
    std::int64_t ivalue(std::int64_t k) const;  // integer tables only

    // summatory(k)     = sum_{j<=k} a(j)
    // abs_summatory(k) = W_k = sum_{j<=k} |a(j)|
    double summatory(std::int64_t k) const;
    double abs_summatory(std::int64_t k) const;

    const std::vector<std::int64_t>& integer_values() const { return ivals_; }
    const std::vector<double>& real_values() const { return rvals_; }

  private:
    ArithmeticTable() = default;
    void build_summatory();

    std::string name_;
    std::int64_t n_ = 0;
    std::optional<double> param_;
    std::vector<std::int64_t> ivals_;  // one of ivals_/rvals_ is populated
    std::vector<double> rvals_;
    std::vector<std::int64_t> isum_, iabs_;  // exact prefix sums (integer tables)
    std::vector<double> rsum_, rabs_;
};

// Canonical function names understood by sieve(): "d" ("divisor"), "mobius"
// ("mu"), "mobius-tilde" ("mu-tilde"), "liouville" ("lambda"), "omega",
// "big-omega" ("Omega"), "theta", "delta", "one", "sigma", "jordan", "power"
// ("zeta-power"). The last three require the exponent s.
bool sieve_needs_exponent(const std::string& name);
std::string canonical_name(const std::string& name);

// Exact sieve of the named function on 1..N via a smallest-prime-factor table.
// O(N) memory, O(N log N) worst case time.
ArithmeticTable sieve(const std::string& name, std::int64_t n,
                      std::optional<double> s = std::nullopt);

// Smallest-prime-factor based prime list up to n (shared helper).
std::vector<std::int64_t> primes_up_to(std::int64_t n);

// Dirichlet convolution (a*b)(n) = sum_{d|n} a(d) b(n/d), exact on 1..N by the
// divisor-lattice double loop, O(N log N).
ArithmeticTable dirichlet_convolve(const ArithmeticTable& a, const ArithmeticTable& b);

// ---------------------------------------------------------------------------
// Wintner-type convolution limit: if A(x) ~ x^alpha L(x) and sum |b(m)|/m^alpha
// converges, then (1/A(n)) sum_{k<=n} (a*b)(k) -> sum_m b(m)/m^alpha.
// ---------------------------------------------------------------------------
struct ConvolutionLimitReport {
    double alpha = 0.0;
    // (n, sum_{k<=n}(a*b)(k) / A(n)) at log-spaced checkpoints
    std::vector<std::pair<std::int64_t, double>> partial_sums;
    double target = 0.0;        // sum_{m<=M} b(m)/m^alpha
    double tail_bound = 0.0;    // bound on sum_{m>M} |b(m)|/m^alpha
    std::int64_t truncation = 0;  // M
};

ConvolutionLimitReport convolution_limit(const ArithmeticTable& a, const ArithmeticTable& b,
                                         double alpha);

// Mobius-inverted coprime sum: returns
//   lhs = sum_{1<=a<=q, gcd(a,q)=1} F(a/q)
//   rhs = sum_{d|q} mu(q/d) sum_{1<=m<=d} F(m/d)
std::pair<std::complex<double>, std::complex<double>> coprime_sum_inversion(
    const std::function<std::complex<double>(double)>& f, std::int64_t q);

// (sum_{k<=n} a_k^m) / (n * (A_n/n)^m); empirical constant of the moment bound.
double moment_ratio(const ArithmeticTable& table, double m, std::int64_t n);

// Turan-Kubilius defect of an additive function g at n:
//   lhs = (1/n) sum_{k<=n} |g(k) - gamma(n)|^2,
//         gamma(n) = sum_{p^a<=n} g(p^a) / (p^a (1 - 1/p))
//   rhs = sum_{p^a<=n} g(p^a)^2 / p^a
std::pair<double, double> turan_kubilius_defect(const ArithmeticTable& g, std::int64_t n);

// sum_{k<=x} g(k)^m / (x (loglog x)^m), loglog x = log(log(2 + x)).
double delange_ratio(const ArithmeticTable& g, std::int64_t m, std::int64_t x);
double log_log(double x);  // the paper's convention log(log(2+x))

// Euler's constant, computed once from H_n - log n with Richardson
// acceleration and validated against 0.5772156649 to 1e-9.
double euler_gamma();

}  // namespace ergw::arith
