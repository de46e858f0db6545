#pragma once

// Orbits of the Higgs-de Rham flow on invariants, the descent obstruction
// zeta^(l (1 + p + ... + p^(f-1))) and explicit bounds on the period.
//
// Periods reported for shapes only see (weights, deg V_0); the Hodge
// filtrations chosen along a real flow are invisible here, so these are lower
// bounds for the period of an actual bundle.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parahiggs/arith.hpp"
#include "parahiggs/parabolic.hpp"

namespace parahiggs {

enum class Termination { period_found, cap_reached, never_periodic };

inline std::string to_string(Termination t) {
    switch (t) {
    case Termination::period_found: return "period_found";
    case Termination::cap_reached: return "cap_reached";
    case Termination::never_periodic: return "never_periodic";
    }
    return "unknown";
}

/// states[0] is the start. When a period is found the repeated state is
/// appended, so states[preperiod + period] == states[preperiod].
template <class State>
struct FlowTrajectory {
    std::vector<State> states;
    std::int64_t preperiod = 0;
    std::optional<std::int64_t> period;
    std::int64_t p = 0;
    Termination terminated = Termination::cap_reached;
};

template <class State>
using TraceFn = std::function<void(std::size_t, const State&)>;

namespace detail {

template <class State, class Step>
FlowTrajectory<State> iterate_until_repeat(State start, std::int64_t p, std::int64_t cap, Step step,
                                           const TraceFn<State>& trace) {
    if (cap < 1) throw DomainError("iteration cap must be positive");
    FlowTrajectory<State> t;
    t.p = p;
    std::map<State, std::size_t> seen;
    seen.emplace(start, 0);
    if (trace) trace(0, start);
    t.states.push_back(std::move(start));
    for (std::int64_t i = 1; i <= cap; ++i) {
        State next = step(t.states.back());
        if (trace) trace(static_cast<std::size_t>(i), next);
        auto it = seen.find(next);
        t.states.push_back(next);
        if (it != seen.end()) {
            t.preperiod = static_cast<std::int64_t>(it->second);
            t.period = i - t.preperiod;
            t.terminated = Termination::period_found;
            return t;
        }
        seen.emplace(std::move(next), static_cast<std::size_t>(i));
    }
    t.terminated = Termination::cap_reached;
    return t;
}

} // namespace detail

/// Iterates the inverse Cartier weight map until a weight system recurs.
inline FlowTrajectory<WeightSystem> weight_orbit(const WeightSystem& ws, std::int64_t p, std::int64_t cap,
                                                 const TraceFn<WeightSystem>& trace = {}) {
    detail::require_unit(p, ws.denominator());
    return detail::iterate_until_repeat(
        ws, p, cap, [p](const WeightSystem& w) { return inverse_cartier_weights(w, p); }, trace);
}

/// lcm over nonzero numerators m of ord_{N / gcd(N, m)}(p): the period with
/// every weight tracked individually.
inline std::int64_t labelled_weight_period(const WeightSystem& ws, std::int64_t p) {
    const std::int64_t n = ws.denominator();
    detail::require_unit(p, n);
    std::int64_t period = 1;
    std::set<std::int64_t> numerators;
    for (const auto& [label, entries] : ws.punctures())
        for (const auto& [w, mult] : entries) numerators.insert(ws.numerator_of(w));
    for (std::int64_t m : numerators) {
        if (m == 0) continue;
        period = lcm(period, mult_order(p, n / gcd(n, m)));
    }
    return period;
}

/// Period of the weight system as a state. It divides the labelled period L
/// and is the least f | L with p^f S = S; it is smaller than L exactly when
/// some p^f permutes equal-looking weights (N = 5, p = 2, {2/5, 3/5}: 2, not 4).
inline std::int64_t weight_period_closed_form(const WeightSystem& ws, std::int64_t p) {
    const std::int64_t n = ws.denominator();
    const std::int64_t labelled = labelled_weight_period(ws, p);
    for (std::int64_t f = 1; f < labelled; ++f)
        if (labelled % f == 0 && detail::scale_weights(ws, pow_mod(floor_mod(p, n), f, n)) == ws) return f;
    return labelled;
}

// ---------------------------------------------------------------------------
// Period bounds

/// Data of the explicit bound: q = p mod N in [1, N], d = gcd(N, q - 1),
/// N = d N', q - 1 = d q', k maximal with d^k | q'. k is absent in the two
/// degenerate cases q = 1 (bound N) and d = 1 (bound phi(N)).
struct PeriodBoundParams {
    std::int64_t n = 1;
    std::int64_t p = 1;
    std::int64_t q = 1;
    std::int64_t d = 1;
    std::int64_t n_prime = 1;
    std::int64_t q_prime = 0;
    std::optional<std::int64_t> k;
    Integer f = 1;
};

inline PeriodBoundParams katz_period_params(std::int64_t n, std::int64_t p) {
    if (n < 1) throw DomainError("N must be >= 1");
    detail::require_unit(p, n);
    PeriodBoundParams b;
    b.n = n;
    b.p = p;
    b.q = floor_mod(p, n);
    if (b.q == 0) b.q = n;
    if (b.q == 1) {
        // S_f = f mod N here, so f = N is the least value that always works.
        b.d = n;
        b.n_prime = 1;
        b.q_prime = 0;
        b.f = n;
        return b;
    }
    b.d = gcd(n, b.q - 1);
    b.n_prime = n / b.d;
    b.q_prime = (b.q - 1) / b.d;
    if (b.d == 1) {
        b.f = euler_phi(Integer(n));
        return b;
    }
    std::int64_t k = 0;
    Integer dk = b.d; // d^(k+1)
    while (Integer(b.q_prime) % dk == 0) {
        ++k;
        dk *= b.d;
    }
    b.k = k;
    b.f = euler_phi(Integer(n) * dk);
    return b;
}

/// An f with N | 1 + p + ... + p^(f-1); checked before returning.
inline Integer katz_period_bound(std::int64_t n, std::int64_t p) {
    PeriodBoundParams b = katz_period_params(n, p);
    if (geometric_sum_mod(p, b.f, n) != 0)
        throw ConsistencyError("N = " + std::to_string(n) + " does not divide the geometric sum at f = " + b.f.str());
    return b.f;
}

namespace detail {

/// Least f >= 1 with modulus | S_f(p), searched up to the explicit bound.
inline std::int64_t least_vanishing_sum(std::int64_t modulus, std::int64_t p) {
    if (modulus == 1) return 1;
    const std::int64_t limit = to_int64(katz_period_bound(modulus, p)) + 1;
    const std::int64_t q = floor_mod(p, modulus);
    std::int64_t sum = 0, power = 1;
    for (std::int64_t f = 1; f <= limit; ++f) {
        sum = (sum + power) % modulus;
        power = mul_mod(power, q, modulus);
        if (sum == 0) return f;
    }
    throw ConsistencyError("no f <= " + std::to_string(limit) + " with " + std::to_string(modulus) +
                           " | 1 + p + ... + p^(f-1)");
}

} // namespace detail

/// Least f with N | l (1 + p + ... + p^(f-1)).
inline std::int64_t minimal_geometric_period(std::int64_t n, std::int64_t p, std::int64_t l) {
    if (n < 1) throw DomainError("N must be >= 1");
    detail::require_unit(p, n);
    if (l < 0 || l >= n) throw DomainError("defect l must lie in [0, N)");
    if (l == 0) return 1;
    return detail::least_vanishing_sum(n / gcd(n, l), p);
}

/// Characters l by which the generator scales the flow isomorphism on each
/// isotypic piece.
struct EquivarianceDefects {
    std::int64_t n = 1;
    std::vector<std::int64_t> defects;

    void validate() const {
        if (n < 1) throw DomainError("N must be >= 1");
        for (auto l : defects)
            if (l < 0 || l >= n) throw DomainError("defect " + std::to_string(l) + " outside [0, N)");
    }
};

/// Least f making every composite isomorphism G-equivariant at once.
inline std::int64_t minimal_equivariance_period(const EquivarianceDefects& defects, std::int64_t p) {
    defects.validate();
    detail::require_unit(p, defects.n);
    std::int64_t modulus = 1;
    for (auto l : defects.defects) modulus = lcm(modulus, defects.n / gcd(defects.n, l));
    return detail::least_vanishing_sum(modulus, p);
}

/// phi(N (N-2)!), a period bound independent of p.
inline Integer global_period_bound(std::int64_t n) {
    if (n < 2) throw DomainError("global period bound needs N >= 2");
    return euler_phi(Integer(n) * factorial(n - 2));
}

/// A torsion line bundle of order m flows by L -> L^p.
inline std::int64_t rank_one_period(std::int64_t m, std::int64_t p) {
    if (m < 1) throw DomainError("torsion order m must be >= 1");
    return mult_order(p, m);
}

// ---------------------------------------------------------------------------

/// Iterates flow_step_shape. Shapes with nonzero parabolic degree are never
/// periodic (pardeg is multiplied by p each step) and are reported at once.
inline FlowTrajectory<ParabolicShape> flow_trajectory(const ParabolicShape& shape, std::int64_t p, std::int64_t cap,
                                                      const TraceFn<ParabolicShape>& trace = {}) {
    detail::require_unit(p, shape.curve().denominator());
    if (!is_periodicity_candidate(shape)) {
        FlowTrajectory<ParabolicShape> t;
        t.p = p;
        t.states.push_back(shape);
        t.terminated = Termination::never_periodic;
        return t;
    }
    return detail::iterate_until_repeat(
        shape, p, cap, [p](const ParabolicShape& s) { return flow_step_shape(s, p); }, trace);
}

struct ScanRow {
    std::int64_t p = 0;
    std::int64_t period = 0;
    Integer bound;
    std::int64_t sum_mod_n = 0; // S_bound(p) mod N; zero by the bound's guarantee
};

struct ScanResult {
    std::int64_t n = 1;
    std::optional<Integer> global_bound; // for N >= 2
    std::vector<ScanRow> rows;
};

namespace detail {

template <class PeriodOf>
ScanResult scan_primes(std::int64_t n, std::int64_t p_max, PeriodOf period_of) {
    if (p_max < 2) throw DomainError("p_max must be >= 2");
    ScanResult result;
    result.n = n;
    if (n >= 2) result.global_bound = global_period_bound(n);
    for (std::int64_t p : primes_up_to(p_max)) {
        if (gcd(p, n) != 1) continue;
        ScanRow row;
        row.p = p;
        row.period = period_of(p);
        row.bound = katz_period_bound(n, p);
        row.sum_mod_n = geometric_sum_mod(p, row.bound, n);
        if (result.global_bound && Integer(row.period) > *result.global_bound)
            throw ConsistencyError("period " + std::to_string(row.period) + " at p = " + std::to_string(p) +
                                   " exceeds phi(N (N-2)!)");
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace detail

/// One row per prime p <= p_max coprime to N, ascending in p.
inline ScanResult prime_scan(const WeightSystem& ws, std::int64_t p_max) {
    const std::int64_t n = ws.denominator();
    return detail::scan_primes(n, p_max, [&](std::int64_t p) {
        auto orbit = weight_orbit(ws, p, n + 1);
        if (orbit.terminated != Termination::period_found) throw ConsistencyError("weight orbit did not close");
        if (*orbit.period != weight_period_closed_form(ws, p))
            throw ConsistencyError("orbit period disagrees with the closed form at p = " + std::to_string(p));
        return *orbit.period;
    });
}

inline ScanResult prime_scan(const ParabolicShape& shape, std::int64_t p_max) {
    if (!is_periodicity_candidate(shape))
        throw DomainError("shape has parabolic degree " + to_string(pardeg(shape)) + " and is never periodic");
    const std::int64_t n = shape.curve().denominator();
    return detail::scan_primes(n, p_max, [&](std::int64_t p) {
        auto t = flow_trajectory(shape, p, n + 1);
        if (t.terminated != Termination::period_found) throw ConsistencyError("shape orbit did not close");
        return *t.period;
    });
}

} // namespace parahiggs
