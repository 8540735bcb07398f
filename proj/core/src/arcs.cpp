#include "ergw/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ergw/errors.hpp"

namespace ergw::arcs {

namespace {

using i128 = __int128_t;

constexpr std::int64_t kDyadicDen = 1LL << 62;

// |x - a/q| compared exactly over the dyadic grid p/2^62:
// dist(a/q) = |p q - a 2^62| / (q 2^62); cross-multiplied comparison.
struct Candidate {
    std::int64_t a = 0, q = 1;
    i128 num = 0;  // |p q - a 2^62|
};

Candidate make_candidate(std::int64_t p, std::int64_t a, std::int64_t q) {
    i128 n = static_cast<i128>(p) * q - static_cast<i128>(a) * kDyadicDen;
    if (n < 0) n = -n;
    return {a, q, n};
}

// true if lhs is strictly better (smaller distance; ties toward smaller q)
bool better(const Candidate& lhs, const Candidate& rhs) {
    const i128 l = lhs.num * rhs.q;
    const i128 r = rhs.num * lhs.q;
    if (l != r) return l < r;
    return lhs.q < rhs.q;
}

long double log_ld(std::int64_t n) { return logl(static_cast<long double>(n)); }

struct Schedule {
    std::int64_t P = 0, Q = 0;
    bool ok = false;
};

Schedule schedule_at(std::int64_t n, double S, std::int64_t M) {
    Schedule s;
    if (n < 3) return s;
    const long double ln = log_ld(n);
    const long double pld = powl(ln, 3.0L * static_cast<long double>(S));
    const long double qld = static_cast<long double>(n) / powl(ln, 2.0L * static_cast<long double>(S));
    if (pld > 1e18L) return s;  // 16 M P^2 would dwarf any feasible Q
    s.P = static_cast<std::int64_t>(pld);
    s.Q = static_cast<std::int64_t>(qld);
    if (s.P < 1 || s.Q < 1 || s.Q > n) return s;
    const i128 lhs = static_cast<i128>(16) * M * s.P * s.P;
    s.ok = lhs <= s.Q;
    return s;
}

}  // namespace

ArcParameters::ArcParameters(std::int64_t n_, double S_, double tau_, std::int64_t M_,
                             std::int64_t P_, std::int64_t Q_)
    : n(n_), S(S_), tau(tau_), M(M_), P(P_), Q(Q_) {
    if (n < 2) throw ParameterError("ArcParameters: n >= 2 required");
    if (!(S > 1.0)) throw ParameterError("ArcParameters: S > 1 required");
    if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("ArcParameters: tau in (0,1) required");
    if (M <= 2) throw ParameterError("ArcParameters: M > 2 required");
    if (P < 1) throw ParameterError("ArcParameters: P >= 1 required");
    if (Q > n || static_cast<i128>(16) * M * P * P > Q)
        throw ParameterError("ArcParameters: need 16 M P^2 <= Q <= n");
    // 16 M P^2 <= Q with P >= 1 already gives Q >= 16 M P; keep the check explicit
    if (static_cast<i128>(16) * M * P > Q) throw ParameterError("ArcParameters: Q >= 16 M P required");
}

std::int64_t minimal_feasible_n(double S, std::int64_t M) {
    auto ok = [&](std::int64_t n) { return schedule_at(n, S, M).ok; };
    std::int64_t hi = 3;
    while (hi < (std::int64_t{1} << 61) && !ok(hi)) hi *= 2;
    if (!ok(hi)) throw ParameterError("no feasible n for the default schedule at this (S, M)");
    std::int64_t lo = hi / 2;
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (ok(mid)) hi = mid; else lo = mid;
    }
    // the predicate has floor jitter near the threshold; walk back over any
    // plateau of feasible values the bisection may have skipped
    std::int64_t best = hi;
    for (std::int64_t n = hi - 1; n > 2 && hi - n < 4096; --n)
        if (ok(n)) best = n;
    return best;
}

ArcParameters default_parameters(std::int64_t n, double S, double tau, std::int64_t M) {
    const Schedule s = schedule_at(n, S, M);
    if (!s.ok)
        throw ParameterError("default_parameters: constraints fail at n = " + std::to_string(n) +
                             "; minimal feasible n = " + std::to_string(minimal_feasible_n(S, M)));
    return ArcParameters(n, S, tau, M, s.P, s.Q);
}

ArcParameters feasible_parameters(std::int64_t n, double S, double tau, std::int64_t M) {
    if (n < 16 * M) throw ParameterError("feasible_parameters: n >= 16 M required");
    const long double ln = log_ld(n);
    const auto pmax = static_cast<std::int64_t>(
        sqrtl(static_cast<long double>(n) / (16.0L * static_cast<long double>(M))));
    const long double pshape = powl(ln, 3.0L * static_cast<long double>(S));
    std::int64_t P = pmax;
    if (pshape < static_cast<long double>(pmax)) P = std::max<std::int64_t>(1, static_cast<std::int64_t>(pshape));
    P = std::max<std::int64_t>(1, P);
    auto qraw = static_cast<std::int64_t>(static_cast<long double>(n) /
                                          powl(ln, 2.0L * static_cast<long double>(S)));
    const std::int64_t qmin = 16 * M * P * P;
    const std::int64_t Q = std::clamp(qraw, qmin, n);
    return ArcParameters(n, S, tau, M, P, Q);
}

Rational best_rational(double x, std::int64_t qbound) {
    if (qbound < 1) throw ParameterError("best_rational: qbound >= 1 required");
    if (qbound > (1LL << 31)) throw ParameterError("best_rational: qbound too large");
    if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("best_rational: x in [0,1] required");

    const auto p = static_cast<std::int64_t>(llroundl(static_cast<long double>(x) * kDyadicDen));
    if (p <= 0) return {0, 1};
    if (p >= kDyadicDen) return {1, 1};

    // continued fraction of p / 2^62 with convergents h_i/k_i,
    // h_i = a_i h_{i-1} + h_{i-2}; denominators never exceed 2^62.
    std::int64_t u = p, v = kDyadicDen;
    std::int64_t pp = 0, pq = 1;  // h_{-2}/k_{-2}
    std::int64_t cp = 1, cq = 0;  // h_{-1}/k_{-1}

    Candidate best = make_candidate(p, 0, 1);
    while (v != 0) {
        const std::int64_t a = u / v;
        const std::int64_t r = u - a * v;
        const std::int64_t np = a * cp + pp;
        const std::int64_t nq = a * cq + pq;
        if (nq > qbound) {
            // best intermediate fraction (t cp + pp)/(t cq + pq), t maximal;
            // cq >= 1 here since k_0 = 1 <= qbound
            const std::int64_t t = (qbound - pq) / cq;
            if (t >= 1) {
                const Candidate semi = make_candidate(p, t * cp + pp, t * cq + pq);
                if (better(semi, best)) best = semi;
            }
            break;
        }
        pp = cp;
        pq = cq;
        cp = np;
        cq = nq;
        const Candidate conv = make_candidate(p, cp, cq);
        if (better(conv, best)) best = conv;
        u = v;
        v = r;
    }
    return {best.a, best.q};
}

MajorArcLocation classify(double x, const ArcParameters& params) {
    MajorArcLocation loc;
    loc.x = x;
    loc.center = best_rational(x, params.P);
    loc.distance = std::abs(x - loc.center.value());
    loc.is_major = loc.distance <= 1.0 / static_cast<double>(params.Q);
    return loc;
}

std::vector<Rational> farey_band(int s) {
    if (s < 1) throw ParameterError("farey_band: s >= 1 required");
    if (s > 12) throw ResourceError("farey_band: band s = " + std::to_string(s) + " too large");
    const std::int64_t lo = std::int64_t{1} << (s - 1);
    const std::int64_t hi = std::int64_t{1} << s;
    std::vector<Rational> band;
    for (std::int64_t q = lo; q < hi; ++q)
        for (std::int64_t a = 1; a <= q; ++a)
            if (std::gcd(a, q) == 1) band.push_back({a, q});
    return band;
}

DisjointnessAudit disjointness_audit(int s, std::int64_t M) {
    if (M < 1) throw ParameterError("disjointness_audit: M >= 1 required");
    auto band = farey_band(s);
    std::sort(band.begin(), band.end(), [](const Rational& l, const Rational& r) {
        return static_cast<i128>(l.a) * r.q < static_cast<i128>(r.a) * l.q;
    });

    DisjointnessAudit audit;
    const i128 four_s = static_cast<i128>(1) << (2 * s);
    audit.required_gap = 1.0 / (static_cast<double>(four_s) * static_cast<double>(M));
    audit.margin_holds = M >= 3;  // 1/2 - 1/M >= 1/(2M)

    if (band.size() < 2) {
        audit.min_gap = 1.0;
        audit.witness_a = audit.witness_b = band.empty() ? Rational{} : band.front();
        return audit;
    }

    bool have = false;
    i128 best_gn = 0, best_gd = 0;  // min gap as exact fraction gn/gd
    for (std::size_t i = 0; i + 1 < band.size(); ++i) {
        const auto& l = band[i];
        const auto& r = band[i + 1];
        const i128 gn = static_cast<i128>(r.a) * l.q - static_cast<i128>(l.a) * r.q;
        const i128 gd = static_cast<i128>(l.q) * r.q;
        if (!have || gn * best_gd < best_gn * gd) {
            have = true;
            best_gn = gn;
            best_gd = gd;
            audit.witness_a = l;
            audit.witness_b = r;
        }
    }
    audit.min_gap = static_cast<double>(best_gn) / static_cast<double>(best_gd);
    // exact comparison: gap >= 1/(4^s M)  <=>  gn * 4^s * M >= gd
    audit.disjoint = best_gn * four_s * M >= best_gd;
    return audit;
}

}  // namespace ergw::arcs
