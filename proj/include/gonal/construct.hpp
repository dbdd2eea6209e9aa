#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gonal/curve.hpp"
#include "gonal/errors.hpp"
#include "gonal/field.hpp"
#include "gonal/lattice.hpp"
#include "gonal/rng.hpp"
#include "gonal/unipoly.hpp"

namespace gonal {

// Left-hand gonality profile: 0 = k_0 <= k_1 < k_2 < ... < k_gamma,
// l_j = sum_{i<=j} k_i, L = sum_{j=1}^{gamma-1} l_j.
struct GonalityProfile {
    int gamma = 0;
    std::vector<long long> k;  // k_0..k_gamma
    std::vector<long long> l;  // l_0..l_gamma
    long long L = 0;
};

inline GonalityProfile profile_from_k(std::vector<long long> k) {
    if (k.size() < 3) throw InvalidArgumentError("profile needs gamma >= 2");
    if (k[0] != 0 || k[1] < 0 || k[0] > k[1])
        throw InvalidArgumentError("profile requires 0 = k_0 <= k_1");
    for (std::size_t i = 2; i < k.size(); ++i)
        if (k[i] <= k[i - 1]) throw InvalidArgumentError("profile requires k_1 < k_2 < ...");
    GonalityProfile p;
    p.gamma = static_cast<int>(k.size()) - 1;
    p.k = std::move(k);
    p.l.resize(p.k.size());
    long long acc = 0;
    for (std::size_t i = 0; i < p.k.size(); ++i) {
        acc += p.k[i];
        p.l[i] = acc;
    }
    p.L = 0;
    for (int j = 1; j <= p.gamma - 1; ++j) p.L += p.l[static_cast<std::size_t>(j)];
    return p;
}

// Default choice k_i = i-1 for i > 0.
inline GonalityProfile default_profile(int gamma) {
    if (gamma < 2) throw InvalidArgumentError("gonality must be >= 2");
    std::vector<long long> k(static_cast<std::size_t>(gamma) + 1);
    k[0] = 0;
    for (int i = 1; i <= gamma; ++i) k[static_cast<std::size_t>(i)] = i - 1;
    return profile_from_k(std::move(k));
}

// Right-hand profile: strictly decreasing k'_1 > ... > k'_gamma with
// nonnegative sum, partial sums l', and the tuned width r.
struct RightProfile {
    std::vector<long long> kp;  // k'_1..k'_gamma
    std::vector<long long> lp;  // l'_0..l'_gamma
    long long r = 0;
};

struct RightSeed {
    long long n = 0;  // g mod (gamma-1), representative in [0, gamma-2]
    long long m = 0;  // n + q L
    std::vector<long long> kp;
};

namespace detail {

inline long long mod_nonneg(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

inline std::vector<long long> partial_sums_from_kp(std::span<const long long> kp) {
    std::vector<long long> lp(kp.size() + 1, 0);
    for (std::size_t i = 0; i < kp.size(); ++i) lp[i + 1] = lp[i] + kp[i];
    return lp;
}

}  // namespace detail

// Right-profile congruence: pick the smallest k'_2 > gamma-3 with
// k'_2 = sum_{j=1}^{gamma-3} j^2 - m (mod gamma-1), then k'_1 = k'_2 + 1 and
// k'_i = gamma - i for i >= 3. For gamma = 2 every congruence mod 1 is
// vacuous and n = 0.
inline RightSeed build_right_profile(int gamma, std::uint64_t q, long long genus,
                                     const GonalityProfile& profile) {
    if (gamma < 2) throw InvalidArgumentError("gonality must be >= 2");
    RightSeed seed;
    const long long mod = gamma - 1;
    seed.n = gamma == 2 ? 0 : detail::mod_nonneg(genus, mod);
    seed.m = seed.n + static_cast<long long>(q) * profile.L;
    long long square_sum = 0;
    for (long long j = 1; j <= gamma - 3; ++j) square_sum += j * j;
    long long k2 = gamma - 2;  // smallest candidate above gamma-3
    if (gamma > 2) {
        const long long target = detail::mod_nonneg(square_sum - seed.m, mod);
        while (detail::mod_nonneg(k2, mod) != target) ++k2;
    }
    seed.kp.resize(static_cast<std::size_t>(gamma));
    seed.kp[0] = k2 + 1;
    seed.kp[1] = k2;
    for (int i = 3; i <= gamma; ++i) seed.kp[static_cast<std::size_t>(i - 1)] = gamma - i;
    for (std::size_t i = 1; i < seed.kp.size(); ++i)
        if (seed.kp[i] >= seed.kp[i - 1])
            throw Error("build_right_profile: k' sequence not strictly decreasing");
    return seed;
}

// The unique r with interior(Delta_r) = genus + qL, from the row-sum identity
// interior(Delta_r) = (gamma-1)(r-1) + sum_{i=1}^{gamma-1} l'_i. Cross-checked
// against the direct polygon count.
inline RightProfile solve_r(int gamma, const GonalityProfile& profile,
                            std::span<const long long> kp, long long genus, std::uint64_t q) {
    RightProfile right;
    right.kp.assign(kp.begin(), kp.end());
    if (right.kp.size() != static_cast<std::size_t>(gamma))
        throw InvalidArgumentError("solve_r: need gamma values k'_1..k'_gamma");
    long long kp_sum = 0;
    for (std::size_t i = 0; i < right.kp.size(); ++i) {
        kp_sum += right.kp[i];
        if (i > 0 && right.kp[i] >= right.kp[i - 1])
            throw InvalidArgumentError("solve_r: k' must decrease strictly");
    }
    if (kp_sum < 0) throw InvalidArgumentError("solve_r: k' sums to a negative width");
    right.lp = detail::partial_sums_from_kp(kp);
    const long long target = genus + static_cast<long long>(q) * profile.L;
    long long chain = 0;
    for (int i = 1; i <= gamma - 1; ++i) chain += right.lp[static_cast<std::size_t>(i)];
    const long long num = target - chain;
    if (num % (gamma - 1) != 0)
        throw Error("solve_r: interior target misses the congruence class");
    right.r = num / (gamma - 1) + 1;
    if (right.r < 1)
        throw InfeasibleGenusError(-1, right.r, "genus too small for this construction");
    const LatticePolygon poly = delta_r(gamma, right.lp, right.r);
    if (lattice_counts(poly).interior != target)
        throw Error("solve_r: row-sum identity disagrees with lattice_counts");
    return right;
}

inline bool delta_index(int i, int gamma) { return i < gamma; }
inline bool delta_prime_index(int i, int gamma) { return i == 0 || i == gamma; }

// Exact degrees d_i = r + l'_{gamma-i} - q(l_i + 1) - 2(delta_i + delta'_i).
// Throws naming the first negative index; the construction only works for
// genera large enough that every d_i is nonnegative.
inline std::vector<long long> degree_plan(int gamma, std::uint64_t q,
                                          const GonalityProfile& profile,
                                          const RightProfile& right) {
    std::vector<long long> d(static_cast<std::size_t>(gamma) + 1);
    for (int i = 0; i <= gamma; ++i) {
        const long long di = right.r + right.lp[static_cast<std::size_t>(gamma - i)] -
                             static_cast<long long>(q) * (profile.l[static_cast<std::size_t>(i)] + 1) -
                             2 * (static_cast<long long>(delta_index(i, gamma)) +
                                  static_cast<long long>(delta_prime_index(i, gamma)));
        if (di < 0) {
            std::ostringstream os;
            os << "infeasible genus: d_" << i << " = " << di << " < 0";
            throw InfeasibleGenusError(i, di, os.str());
        }
        d[static_cast<std::size_t>(i)] = di;
    }
    return d;
}

// Fully resolved instance of the construction: everything that is fixed
// before the tuple search begins.
struct ConstructionInstance {
    FieldPtr field;
    int gamma = 0;
    long long genus = 0;
    GonalityProfile profile;
    RightProfile right;
    UniPoly alpha;  // t^q - t
    UniPoly beta;   // first monic irreducible quadratic
    long long n = 0;
    long long m = 0;
    std::vector<long long> d;
    std::uint64_t seed = 0;
    long long budget = 10000;
};

inline constexpr long long kDefaultSearchBudget = 10000;

// alpha(t) = t^q - t, the product of all monic degree-1 primes.
inline UniPoly alpha_poly(const FieldPtr& field) {
    const std::uint64_t q = field->cardinality();
    if (q > (std::uint64_t(1) << 20))
        throw CapExceededError("alpha_poly: field too large for a dense t^q - t");
    std::vector<FqElem> c(static_cast<std::size_t>(q) + 1, FqElem{0});
    c[1] = field->neg(field->one());
    c[static_cast<std::size_t>(q)] = field->one();
    return UniPoly(field, std::move(c));
}

inline ConstructionInstance make_instance(FieldPtr field, int gamma, long long genus,
                                          std::uint64_t seed = 0,
                                          long long budget = kDefaultSearchBudget) {
    if (gamma < 2) throw InvalidArgumentError("gonality must be >= 2");
    if (genus < 2) throw InvalidArgumentError("genus must be >= 2");
    if (budget < 1) throw InvalidArgumentError("search budget must be >= 1");
    ConstructionInstance inst;
    inst.field = std::move(field);
    inst.gamma = gamma;
    inst.genus = genus;
    inst.seed = seed;
    inst.budget = budget;
    inst.profile = default_profile(gamma);
    inst.alpha = alpha_poly(inst.field);
    inst.beta = find_irreducible(inst.field, 2);
    RightSeed rs = build_right_profile(gamma, inst.field->cardinality(), genus, inst.profile);
    inst.n = rs.n;
    inst.m = rs.m;
    inst.right = solve_r(gamma, inst.profile, rs.kp, genus, inst.field->cardinality());
    inst.d = degree_plan(gamma, inst.field->cardinality(), inst.profile, inst.right);
    return inst;
}

// Coefficients f_i = alpha^{l_i} beta^{delta_i} (1 + alpha beta^{delta'_i} g_i)
// for an arbitrary tuple (no degree constraints; the density module feeds
// short residue representatives through here too).
inline CurvePoly assemble_from_tuple(const FieldPtr& field, const GonalityProfile& profile,
                                     const UniPoly& alpha, const UniPoly& beta,
                                     std::span<const UniPoly> g_tuple) {
    const int gamma = profile.gamma;
    if (g_tuple.size() != static_cast<std::size_t>(gamma) + 1)
        throw InvalidArgumentError("tuple must have gamma + 1 entries");
    const UniPoly one = UniPoly::constant(field, field->one());
    std::vector<UniPoly> f;
    f.reserve(static_cast<std::size_t>(gamma) + 1);
    UniPoly alpha_pow = one;  // alpha^{l_i}, advanced incrementally
    long long current_l = 0;
    for (int i = 0; i <= gamma; ++i) {
        const long long li = profile.l[static_cast<std::size_t>(i)];
        while (current_l < li) {
            alpha_pow = alpha_pow * alpha;
            ++current_l;
        }
        UniPoly unit = one + alpha * (delta_prime_index(i, gamma) ? beta * g_tuple[static_cast<std::size_t>(i)]
                                                                  : g_tuple[static_cast<std::size_t>(i)]);
        UniPoly fi = alpha_pow * unit;
        if (delta_index(i, gamma)) fi = fi * beta;
        f.push_back(std::move(fi));
    }
    return CurvePoly(field, std::move(f));
}

// Assembly under the instance's exact-degree contract, with the polygon
// postconditions: deg f_i = r + l'_{gamma-i}, v_t(f_i) = l_i, and
// conv(support(f) + {(0,0),(0,gamma)}) = Delta_r.
inline CurvePoly assemble_f(const ConstructionInstance& inst, std::span<const UniPoly> g_tuple) {
    if (g_tuple.size() != static_cast<std::size_t>(inst.gamma) + 1)
        throw InvalidArgumentError("tuple must have gamma + 1 entries");
    if (inst.d.size() != static_cast<std::size_t>(inst.gamma) + 1)
        throw InvalidArgumentError("instance carries no degree plan");
    for (int i = 0; i <= inst.gamma; ++i)
        if (g_tuple[static_cast<std::size_t>(i)].degree() != inst.d[static_cast<std::size_t>(i)])
            throw InvalidArgumentError("tuple degree mismatch at index " + std::to_string(i));
    CurvePoly f = assemble_from_tuple(inst.field, inst.profile, inst.alpha, inst.beta, g_tuple);
    const UniPoly t = UniPoly::variable(inst.field);
    for (int i = 0; i <= inst.gamma; ++i) {
        const long long want_deg =
            inst.right.r + inst.right.lp[static_cast<std::size_t>(inst.gamma - i)];
        if (f.fi(i).degree() != want_deg)
            throw Error("assemble_f: coefficient degree drifted from the plan");
        if (valuation_at(f.fi(i), t) != inst.profile.l[static_cast<std::size_t>(i)])
            throw Error("assemble_f: t-adic valuation drifted from the profile");
    }
    std::vector<LatticePoint> pts = support(f);
    pts.push_back({0, 0});
    pts.push_back({0, inst.gamma});
    if (LatticePolygon::hull(pts) != delta_r(inst.gamma, inst.right.lp, inst.right.r))
        throw Error("assemble_f: Newton polygon does not complete to Delta_r");
    return f;
}

// The quotient F = disc_y(f) / (alpha^{2L} beta^{gamma-1}); both divisions
// are exact for every tuple. A zero discriminant (f not squarefree in y) is
// reported as InvalidArgumentError so the search can treat it as a failed
// trial.
inline UniPoly capital_F_core(const UniPoly& alpha, const UniPoly& beta, long long L, int gamma,
                              const CurvePoly& f) {
    UniPoly disc = discriminant_y(f);
    if (disc.is_zero()) throw InvalidArgumentError("capital_F: discriminant vanishes");
    UniPoly divisor = poly_pow(alpha, static_cast<std::uint64_t>(2 * L)) *
                      poly_pow(beta, static_cast<std::uint64_t>(gamma - 1));
    return exact_div(disc, divisor);
}

inline UniPoly capital_F(const ConstructionInstance& inst, const CurvePoly& f) {
    return capital_F_core(inst.alpha, inst.beta, inst.profile.L, inst.gamma, f);
}

// One uniform exact-degree tuple: coefficients uniform on F_q, leading
// coefficients uniform on the nonzero elements. Draw order is fixed (index i
// ascending, then constant term upward) so certificates replay bit-for-bit.
inline std::vector<UniPoly> draw_tuple(const FieldPtr& field, std::span<const long long> degrees,
                                       SeededRng& rng) {
    const std::uint64_t q = field->cardinality();
    std::vector<UniPoly> tuple;
    tuple.reserve(degrees.size());
    for (long long d : degrees) {
        std::vector<FqElem> c(static_cast<std::size_t>(d) + 1);
        for (long long j = 0; j < d; ++j)
            c[static_cast<std::size_t>(j)] = FqElem{rng.next_below(q)};
        c[static_cast<std::size_t>(d)] = FqElem{1 + rng.next_below(q - 1)};
        tuple.emplace_back(field, std::move(c));
    }
    return tuple;
}

struct SearchResult {
    std::vector<UniPoly> tuple;
    long long trials = 0;  // 1-based index of the successful trial
};

// F evaluated at a tuple without the exact-degree contract: the zero
// discriminant degenerates to F = 0, which is never squarefree.
inline UniPoly capital_F_at(const FieldPtr& field, const GonalityProfile& profile,
                            const UniPoly& alpha, const UniPoly& beta,
                            std::span<const UniPoly> tuple) {
    CurvePoly f = assemble_from_tuple(field, profile, alpha, beta, tuple);
    UniPoly disc = discriminant_y(f);
    if (disc.is_zero()) return UniPoly::zero(field);
    UniPoly divisor = poly_pow(alpha, static_cast<std::uint64_t>(2 * profile.L)) *
                      poly_pow(beta, static_cast<std::uint64_t>(profile.gamma - 1));
    return exact_div(disc, divisor);
}

namespace detail {

inline bool tuple_accepted(const ConstructionInstance& inst, std::span<const UniPoly> tuple) {
    UniPoly F = capital_F_at(inst.field, inst.profile, inst.alpha, inst.beta, tuple);
    return !F.is_zero() && is_squarefree(F);
}

inline std::string even_char_advisory() {
    return "even characteristic: the generic y-discriminant degenerates to a square, "
           "so the squarefree search cannot succeed; even q is supported best-effort only";
}

}  // namespace detail

// Randomized search over S(d_0,...,d_gamma)': trial i draws from an
// independent stream of (seed, i), and the reported tuple is the one from the
// lowest successful trial index, so serial and parallel runs agree.
inline SearchResult search_tuple(const ConstructionInstance& inst, int jobs = 1) {
    if (jobs < 1) throw InvalidArgumentError("jobs must be >= 1");
    const long long budget = inst.budget;
    auto run_trial = [&](long long idx) {
        SeededRng rng = trial_rng(inst.seed, static_cast<std::uint64_t>(idx));
        std::vector<UniPoly> tuple = draw_tuple(inst.field, inst.d, rng);
        return std::pair(detail::tuple_accepted(inst, tuple), std::move(tuple));
    };

    long long winner = -1;
    if (jobs == 1) {
        for (long long i = 0; i < budget; ++i) {
            auto [ok, tuple] = run_trial(i);
            if (ok) {
                return SearchResult{std::move(tuple), i + 1};
            }
        }
    } else {
        std::atomic<long long> next{0};
        std::atomic<long long> best{budget};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    const long long i = next.fetch_add(1);
                    if (i >= budget || i >= best.load()) break;
                    auto [ok, tuple] = run_trial(i);
                    if (ok) {
                        long long cur = best.load();
                        while (i < cur && !best.compare_exchange_weak(cur, i)) {
                        }
                    }
                }
            });
        }
        for (auto& w : workers) w.join();
        if (best.load() < budget) winner = best.load();
        if (winner >= 0) {
            auto [ok, tuple] = run_trial(winner);  // deterministic replay of the winner
            if (!ok) throw Error("search_tuple: winning trial failed to replay");
            return SearchResult{std::move(tuple), winner + 1};
        }
    }

    std::string advisory;
    if (inst.field->characteristic() == 2) advisory = detail::even_char_advisory();
    std::ostringstream os;
    os << "search budget exhausted after " << budget << " trials (last failure: F not squarefree)";
    if (!advisory.empty()) os << "; advisory: " << advisory;
    throw BudgetExhaustedError(budget, advisory, os.str());
}

}  // namespace gonal
