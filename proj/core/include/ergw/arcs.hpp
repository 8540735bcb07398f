#pragma once

#include <cstdint>
#include <vector>

namespace ergw::arcs {

// reduced fraction a/q, 0 <= a <= q, gcd(a, q) = 1
struct Rational {
    std::int64_t a = 0;
    std::int64_t q = 1;
    double value() const { return static_cast<double>(a) / static_cast<double>(q); }
    bool operator==(const Rational&) const = default;
};

// Major/minor-arc partition parameters. Construction enforces
//   P >= 1,  16 M P^2 <= Q <= n  (which also gives Q >= 16 M P),
// the inequalities that make the major-arc center unique.
struct ArcParameters {
    std::int64_t n = 2;
    double S = 2.0;
    double tau = 0.9;
    std::int64_t M = 4;
    std::int64_t P = 1;
    std::int64_t Q = 64;

    ArcParameters(std::int64_t n, double S, double tau, std::int64_t M, std::int64_t P,
                  std::int64_t Q);
};

// The schedule P_n = floor((log n)^{3S}), Q_n = floor(n/(log n)^{2S}),
// validated against the constraints; for n below the (very large) feasibility
// threshold this raises ParameterError naming the minimal feasible n.
ArcParameters default_parameters(std::int64_t n, double S, double tau, std::int64_t M);

// Same shapes capped into the feasible region
//   P = min(floor((log n)^{3S}), floor(sqrt(n/(16 M)))),
//   Q = clamp(floor(n/(log n)^{2S}), 16 M P^2, n);
// coincides with default_parameters once n is large enough. This is what the
// kernel-error experiments run with at practical n.
ArcParameters feasible_parameters(std::int64_t n, double S, double tau, std::int64_t M);

// smallest n for which the default schedule satisfies the constraints
std::int64_t minimal_feasible_n(double S, std::int64_t M);

struct MajorArcLocation {
    double x = 0.0;
    Rational center;
    double distance = 0.0;
    bool is_major = false;
};

// Best rational approximation with denominator <= qbound: the reduced a/q
// minimizing |x - a/q|, ties broken toward smaller q. Continued-fraction
// convergents and intermediate fractions over the exact dyadic value
// round(x * 2^62) / 2^62.
Rational best_rational(double x, std::int64_t qbound);

// Locate x in the partition: is_major iff some a/q with q <= P is within 1/Q
// (that center is then unique); x = 0 maps to 0/1. Minor points keep the best
// rational for diagnostics.
MajorArcLocation classify(double x, const ArcParameters& params);

// All reduced a/q with 2^{s-1} <= q < 2^s, 1 <= a <= q.
std::vector<Rational> farey_band(int s);

struct DisjointnessAudit {
    bool disjoint = true;       // min pairwise gap >= 2 * (half support width)
    double min_gap = 0.0;       // min |a/q - a'/q'| over the band
    double required_gap = 0.0;  // 1/(4^s M)
    Rational witness_a, witness_b;  // a violating (or minimizing) pair
    // the sufficient margin chain 1/(2 4^s) - 1/(4^s M) >= 1/(2 4^s M),
    // equivalent to M >= 3; this is what forces M > 2
    bool margin_holds = false;
};

// Check that the eta_s supports (half-width 1/(2 4^s M)) centered at the
// band-s fractions are pairwise disjoint.
DisjointnessAudit disjointness_audit(int s, std::int64_t M);

}  // namespace ergw::arcs
