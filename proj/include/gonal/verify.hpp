#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gonal/construct.hpp"
#include "gonal/curve.hpp"
#include "gonal/errors.hpp"
#include "gonal/lattice.hpp"
#include "gonal/unipoly.hpp"
#include "gonal/version.hpp"

namespace gonal {

// ---------------------------------------------------------------------------
// Certificate data
// ---------------------------------------------------------------------------

struct DiscChecks {
    std::vector<int> alpha_valuations;  // v_{t-a}(disc_y f) for a in F_q, by element code
    int beta_valuation = 0;
    bool squarefree = false;
    bool passed = false;
    std::string note;  // first failed sub-check, empty when passed
};

// Witness that the fibre above one place of P^1(F_q) splits into gamma
// distinct rational points: the t-adic valuations (resp. degrees at infinity)
// of the f_i sit exactly on the profile, and the gamma implied Newton-polygon
// slopes are pairwise distinct, so each edge carries exactly two lattice
// points and each branch is rational.
struct FibreCertificate {
    std::optional<std::uint64_t> place;  // element code, or nullopt for infinity
    std::vector<long long> expected;     // l_i at finite places, r + l'_{gamma-i} at infinity
    std::vector<long long> observed;
    std::vector<long long> slopes;  // k_i, or k'_i at infinity
    bool passed = false;
};

struct Certificate {
    ConstructionInstance instance;
    std::vector<UniPoly> g_tuple;
    CurvePoly f;
    DiscChecks disc_checks;
    std::vector<FibreCertificate> fibres;  // q finite places then infinity
    long long polygon_interior = 0;
    long long n1 = 0;
    long long genus_claim = 0;
    int gonality_claim = 0;
    long long trials = 0;
    std::string tool_version;
    bool all_passed = false;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed = true;
    std::string first_failure;

    void add(std::string name, bool passed, std::string detail = {}) {
        if (!passed && all_passed) {
            all_passed = false;
            first_failure = name;
        }
        checks.push_back({std::move(name), passed, std::move(detail)});
    }
};

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

inline UniPoly linear_prime(const FieldPtr& field, FqElem a) {
    return UniPoly(field, {field->neg(a), field->one()});
}

// Discriminant valuations: v_{t-a}(disc) = 2L at every a in F_q exactly, and
// v_beta(disc) - (gamma-1) in {0,1} with 0 forced unless the characteristic
// divides gamma; plus squarefreeness of the quotient F.
inline DiscChecks check_discriminant(const ConstructionInstance& inst, const CurvePoly& f) {
    DiscChecks out;
    const FieldPtr& field = inst.field;
    const std::uint64_t q = field->cardinality();
    UniPoly disc = discriminant_y(f);
    if (disc.is_zero()) {
        out.note = "discriminant vanishes";
        return out;
    }
    out.passed = true;
    const long long want_alpha = 2 * inst.profile.L;
    for (std::uint64_t code = 0; code < q; ++code) {
        int v = valuation_at(disc, linear_prime(field, FqElem{code}));
        out.alpha_valuations.push_back(v);
        if (v != want_alpha && out.passed) {
            out.passed = false;
            std::ostringstream os;
            os << "v_{t-a}(disc) = " << v << " at a = " << code << ", expected " << want_alpha;
            out.note = os.str();
        }
    }
    out.beta_valuation = valuation_at(disc, inst.beta);
    const long long excess = out.beta_valuation - (inst.gamma - 1);
    const bool char_divides_gamma =
        (static_cast<std::uint64_t>(inst.gamma) % field->characteristic()) == 0;
    const bool beta_ok = char_divides_gamma ? (excess == 1) : (excess == 0);
    if (!beta_ok && out.passed) {
        out.passed = false;
        std::ostringstream os;
        os << "v_beta(disc) = " << out.beta_valuation << ", expected "
           << (inst.gamma - 1) + (char_divides_gamma ? 1 : 0);
        out.note = os.str();
    }
    UniPoly divisor = poly_pow(inst.alpha, static_cast<std::uint64_t>(2 * inst.profile.L)) *
                      poly_pow(inst.beta, static_cast<std::uint64_t>(inst.gamma - 1));
    auto [F, rem] = divrem(disc, divisor);
    if (!rem.is_zero()) {
        out.passed = false;
        if (out.note.empty()) out.note = "alpha^{2L} beta^{gamma-1} does not divide disc";
        return out;
    }
    out.squarefree = is_squarefree(F);
    if (!out.squarefree && out.passed) {
        out.passed = false;
        out.note = "F not squarefree";
    }
    return out;
}

inline FibreCertificate fibre_certificate(const ConstructionInstance& inst, const CurvePoly& f,
                                          std::optional<std::uint64_t> place) {
    FibreCertificate cert;
    cert.place = place;
    const int gamma = inst.gamma;
    if (place.has_value()) {
        const UniPoly p = linear_prime(inst.field, FqElem{*place});
        for (int i = 0; i <= gamma; ++i) {
            cert.expected.push_back(inst.profile.l[static_cast<std::size_t>(i)]);
            cert.observed.push_back(valuation_at(f.fi(i), p));
        }
        cert.slopes.assign(inst.profile.k.begin() + 1, inst.profile.k.end());
    } else {
        for (int i = 0; i <= gamma; ++i) {
            cert.expected.push_back(inst.right.r +
                                    inst.right.lp[static_cast<std::size_t>(gamma - i)]);
            cert.observed.push_back(f.fi(i).degree());
        }
        cert.slopes = inst.right.kp;
    }
    bool distinct = true;
    for (std::size_t i = 0; i + 1 < cert.slopes.size() && distinct; ++i)
        for (std::size_t j = i + 1; j < cert.slopes.size(); ++j)
            if (cert.slopes[i] == cert.slopes[j]) {
                distinct = false;
                break;
            }
    cert.passed = distinct && cert.expected == cert.observed;
    return cert;
}

// With all q+1 fibre certificates green the curve has gamma points over each
// rational place; this attains the gonality bound gamma(q+1) exactly.
inline long long rational_point_count(const ConstructionInstance& inst,
                                      const std::vector<FibreCertificate>& fibres) {
    const std::uint64_t q = inst.field->cardinality();
    if (fibres.size() != q + 1)
        throw PreconditionError("rational_point_count: need all q+1 fibre certificates");
    for (const auto& c : fibres)
        if (!c.passed) throw PreconditionError("rational_point_count: unverified fibre");
    const long long n1 = static_cast<long long>(inst.gamma) * static_cast<long long>(q + 1);
    return n1;
}

// Genus accounting: interior(Delta_r) - qL, recomputed from the polygon,
// must equal the requested genus, and Baker's bound from the actual Newton
// polygon must dominate it.
inline long long genus_check(const ConstructionInstance& inst, const CurvePoly& f) {
    const LatticePolygon poly = delta_r(inst.gamma, inst.right.lp, inst.right.r);
    const long long interior = lattice_counts(poly).interior;
    const long long genus =
        interior - static_cast<long long>(inst.field->cardinality()) * inst.profile.L;
    if (genus != inst.genus) {
        std::ostringstream os;
        os << "genus accounting: interior - qL = " << genus << ", requested " << inst.genus;
        throw VerificationError("genus", os.str());
    }
    if (baker_bound(f) < genus)
        throw VerificationError("genus", "Baker bound below the claimed genus");
    return genus;
}

// Exact-integer Weil window |N_k - q^k - 1|^2 <= 4 g^2 q^k.
inline bool weil_window(long long nk, int k, long long genus, std::uint64_t q) {
    unsigned __int128 qk = 1;
    for (int i = 0; i < k; ++i) qk *= q;
    __int128 diff = static_cast<__int128>(nk) - static_cast<__int128>(qk) - 1;
    if (diff < 0) diff = -diff;
    return static_cast<unsigned __int128>(diff) * static_cast<unsigned __int128>(diff) <=
           4 * static_cast<unsigned __int128>(genus * genus) * qk;
}

// Gonality is exactly gamma: the t-projection has degree gamma (the Newton
// polygon spans the full strip, f_gamma != 0 and f_0 != 0), and any map of
// degree < gamma would cap the point count below the certified N1.
inline int gonality_certificate(const ConstructionInstance& inst, const CurvePoly& f,
                                long long n1) {
    const std::uint64_t q = inst.field->cardinality();
    if (f.fi(inst.gamma).is_zero() || f.fi(0).is_zero())
        throw VerificationError("gonality", "Newton polygon does not span the full strip");
    if (n1 != static_cast<long long>(inst.gamma) * static_cast<long long>(q + 1))
        throw PreconditionError("gonality_certificate: N1 check missing");
    if (n1 <= static_cast<long long>(inst.gamma - 1) * static_cast<long long>(q + 1))
        throw VerificationError("gonality", "point count does not exclude smaller gonality");
    return inst.gamma;
}

// ---------------------------------------------------------------------------
// Point counting over extensions
// ---------------------------------------------------------------------------

inline std::uint64_t pow_u64_checked(std::uint64_t base, int exp, std::uint64_t cap) {
    unsigned __int128 v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= base;
        if (v > cap) throw CapExceededError("extension cardinality exceeds the enumeration cap");
    }
    return static_cast<std::uint64_t>(v);
}

// N_k = gamma (q+1) + sum over t in F_{q^k} \ F_q of the projective fibre
// count. Legitimate because the verified curve is non-singular away from the
// rational places, where the smooth model keeps exactly gamma rational points
// in every extension.
inline long long count_points_ext(const Certificate& cert, int k,
                                  std::uint64_t cap = kDefaultEnumerationCap, int jobs = 1) {
    if (!cert.all_passed)
        throw PreconditionError("count_points_ext: certificate not fully verified");
    if (k < 1) throw InvalidArgumentError("extension degree must be >= 1");
    const FieldPtr& base = cert.instance.field;
    const std::uint64_t q = base->cardinality();
    const std::uint64_t qk = pow_u64_checked(q, k, cap);
    long long total =
        static_cast<long long>(cert.instance.gamma) * static_cast<long long>(q + 1);
    if (k == 1) return total;
    const FieldPtr K = extension_spec(base, k);
    const int sentinel = fibre_zero_sentinel(cert.f);
    auto sum_range = [&](std::uint64_t lo, std::uint64_t hi) {
        long long s = 0;
        for (std::uint64_t code = lo; code < hi; ++code) {
            int c = projective_fibre_count(cert.f, K, FqElem{code});
            if (c == sentinel)
                throw VerificationError("count_points_ext", "identically-zero fibre encountered");
            s += c;
        }
        return s;
    };
    if (jobs <= 1) return total + sum_range(q, qk);
    const std::uint64_t span = qk - q;
    const std::uint64_t chunk = (span + static_cast<std::uint64_t>(jobs) - 1) /
                                static_cast<std::uint64_t>(jobs);
    std::vector<long long> partial(static_cast<std::size_t>(jobs), 0);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        const std::uint64_t lo = q + chunk * static_cast<std::uint64_t>(w);
        const std::uint64_t hi = std::min(qk, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back(
            [&, w, lo, hi] { partial[static_cast<std::size_t>(w)] = sum_range(lo, hi); });
    }
    for (auto& t : workers) t.join();
    for (long long s : partial) total += s;  // fixed order: deterministic
    return total;
}

// ---------------------------------------------------------------------------
// Zeta-function genus oracle
// ---------------------------------------------------------------------------

struct ZetaData {
    std::uint64_t q = 0;
    long long genus = 0;
    std::vector<long long> counts;  // N_1..N_{g+2}
    std::vector<long long> a;       // numerator coefficients a_0..a_{2g}
};

struct ZetaResult {
    bool consistent = false;
    std::string detail;
    ZetaData data;
};

// Rebuild the zeta numerator P(T) = sum a_i T^i from N_1..N_g via Newton's
// identities on the power sums S_k = q^k + 1 - N_k, extend by the functional
// equation a_{2g-i} = q^{g-i} a_i, then predict N_{g+1}, N_{g+2} and compare
// with the supplied counts. Two extra points guard against coincidental fits;
// Weil windows on every count are checked as well.
inline ZetaResult zeta_from_counts(std::uint64_t q, long long genus,
                                   std::span<const long long> counts) {
    if (genus < 1) throw InvalidArgumentError("zeta oracle needs genus >= 1");
    if (counts.size() != static_cast<std::size_t>(genus) + 2)
        throw InvalidArgumentError("zeta oracle needs counts N_1..N_{g+2}");
    ZetaResult res;
    res.data.q = q;
    res.data.genus = genus;
    res.data.counts.assign(counts.begin(), counts.end());

    for (std::size_t i = 0; i < counts.size(); ++i)
        if (!weil_window(counts[i], static_cast<int>(i) + 1, genus, q)) {
            std::ostringstream os;
            os << "N_" << (i + 1) << " violates the Weil window for genus " << genus;
            res.detail = os.str();
            return res;
        }

    std::vector<long long> S(static_cast<std::size_t>(genus) + 3, 0);  // S[1..g+2]
    for (long long kk = 1; kk <= genus + 2; ++kk) {
        long long qk = 1;
        for (long long i = 0; i < kk; ++i) qk *= static_cast<long long>(q);
        S[static_cast<std::size_t>(kk)] = qk + 1 - counts[static_cast<std::size_t>(kk - 1)];
    }

    // a_k = e_k(alpha_1..alpha_{2g}), so that N_1 = q + 1 - a_1. Newton's
    // identity: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} S_i.
    std::vector<long long>& a = res.data.a;
    a.assign(static_cast<std::size_t>(2 * genus) + 1, 0);
    a[0] = 1;
    for (long long kk = 1; kk <= genus; ++kk) {
        long long acc = 0;
        for (long long i = 1; i <= kk; ++i) {
            const long long term =
                a[static_cast<std::size_t>(kk - i)] * S[static_cast<std::size_t>(i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        if (acc % kk != 0) {
            std::ostringstream os;
            os << "Newton identity for a_" << kk << " is not integral";
            res.detail = os.str();
            return res;
        }
        a[static_cast<std::size_t>(kk)] = acc / kk;
    }
    long long qpow = 1;
    for (long long i = genus - 1; i >= 0; --i) {
        qpow *= static_cast<long long>(q);  // q^{g-i}
        a[static_cast<std::size_t>(2 * genus - i)] = qpow * a[static_cast<std::size_t>(i)];
    }
    {
        long long qg = 1;
        for (long long i = 0; i < genus; ++i) qg *= static_cast<long long>(q);
        if (a.back() != qg) {
            res.detail = "functional equation does not close: a_{2g} != q^g";
            return res;
        }
    }

    // predict S_{g+1}, S_{g+2} from P(T) alone:
    // S_k = sum_{i=1}^{k-1} (-1)^{i-1} a_i S_{k-i} + (-1)^{k-1} k a_k (k <= 2g)
    // S_k = sum_{i=1}^{2g} (-1)^{i-1} a_i S_{k-i}                  (k > 2g)
    for (long long kk = genus + 1; kk <= genus + 2; ++kk) {
        long long pred = 0;
        const long long top = std::min(kk - 1, 2 * genus);
        for (long long i = 1; i <= top; ++i) {
            const long long term =
                a[static_cast<std::size_t>(i)] * S[static_cast<std::size_t>(kk - i)];
            pred += (i % 2 == 1) ? term : -term;
        }
        if (kk <= 2 * genus)
            pred += (kk % 2 == 1) ? kk * a[static_cast<std::size_t>(kk)]
                                  : -kk * a[static_cast<std::size_t>(kk)];
        long long qk = 1;
        for (long long i = 0; i < kk; ++i) qk *= static_cast<long long>(q);
        const long long n_pred = qk + 1 - pred;
        const long long n_actual = counts[static_cast<std::size_t>(kk - 1)];
        if (n_pred != n_actual) {
            std::ostringstream os;
            os << "predicted N_" << kk << " = " << n_pred << ", counted " << n_actual;
            res.detail = os.str();
            return res;
        }
        S[static_cast<std::size_t>(kk)] = pred;
    }
    res.consistent = true;
    return res;
}

// Verify a claimed genus against exact point counts of the certified curve.
inline ZetaResult zeta_genus(const Certificate& cert, long long genus_claim,
                             std::uint64_t cap = kDefaultEnumerationCap, int jobs = 1) {
    if (!cert.all_passed) throw PreconditionError("zeta_genus: certificate not fully verified");
    std::vector<long long> counts;
    counts.reserve(static_cast<std::size_t>(genus_claim) + 2);
    for (long long k = 1; k <= genus_claim + 2; ++k)
        counts.push_back(count_points_ext(cert, static_cast<int>(k), cap, jobs));
    return zeta_from_counts(cert.instance.field->cardinality(), genus_claim, counts);
}

// ---------------------------------------------------------------------------
// Full verification and the end-to-end pipeline
// ---------------------------------------------------------------------------

namespace detail {

template <typename F>
inline void run_check(VerifyReport& report, const std::string& name, F&& body) {
    try {
        std::string detail = body();
        report.add(name, true, std::move(detail));
    } catch (const Error& e) {
        report.add(name, false, e.what());
    }
}

}  // namespace detail

// Re-derive everything from (field, gamma, genus) and the raw tuple, and
// compare against what the certificate stores. Any single stored value that
// drifts from its recomputation fails a named check.
inline VerifyReport verify_certificate(const Certificate& cert) {
    VerifyReport report;
    const ConstructionInstance& inst = cert.instance;
    const FieldPtr& field = inst.field;
    const std::uint64_t q = field->cardinality();

    detail::run_check(report, "instance", [&] {
        if (inst.gamma < 2) throw VerificationError("instance", "gamma < 2");
        if (inst.genus < 2) throw VerificationError("instance", "genus < 2");
        return std::string{};
    });
    if (!report.all_passed) return report;

    detail::run_check(report, "profile", [&] {
        GonalityProfile p = default_profile(inst.gamma);
        if (p.k != inst.profile.k || p.l != inst.profile.l || p.L != inst.profile.L)
            throw VerificationError("profile", "stored profile differs from the canonical one");
        return std::string{};
    });

    detail::run_check(report, "right_profile", [&] {
        RightSeed rs = build_right_profile(inst.gamma, q, inst.genus, inst.profile);
        if (rs.n != inst.n || rs.m != inst.m)
            throw VerificationError("right_profile", "stored n/m differ from recomputation");
        RightProfile right = solve_r(inst.gamma, inst.profile, rs.kp, inst.genus, q);
        if (right.kp != inst.right.kp || right.lp != inst.right.lp || right.r != inst.right.r)
            throw VerificationError("right_profile", "stored right profile differs");
        return std::string{};
    });

    detail::run_check(report, "alpha_beta", [&] {
        if (inst.alpha != alpha_poly(field))
            throw VerificationError("alpha_beta", "alpha != t^q - t");
        if (inst.beta != find_irreducible(field, 2))
            throw VerificationError("alpha_beta", "beta is not the canonical irreducible quadratic");
        return std::string{};
    });
    if (!report.all_passed) return report;

    detail::run_check(report, "degree_plan", [&] {
        std::vector<long long> d = degree_plan(inst.gamma, q, inst.profile, inst.right);
        // deserialized instances re-derive d; in-memory ones must agree
        if (!inst.d.empty() && d != inst.d)
            throw VerificationError("degree_plan", "stored degrees differ");
        if (cert.g_tuple.size() != static_cast<std::size_t>(inst.gamma) + 1)
            throw VerificationError("degree_plan", "tuple length mismatch");
        for (int i = 0; i <= inst.gamma; ++i)
            if (cert.g_tuple[static_cast<std::size_t>(i)].degree() != d[static_cast<std::size_t>(i)]) {
                std::ostringstream os;
                os << "deg g_" << i << " != d_" << i;
                throw VerificationError("degree_plan", os.str());
            }
        return std::string{};
    });
    if (!report.all_passed) return report;

    detail::run_check(report, "f_consistency", [&] {
        ConstructionInstance work = inst;
        work.d = degree_plan(inst.gamma, q, inst.profile, inst.right);
        CurvePoly rebuilt = assemble_f(work, cert.g_tuple);
        if (!(rebuilt == cert.f))
            throw VerificationError("f_consistency", "stored f differs from assembly of g tuple");
        return std::string{};
    });
    if (!report.all_passed) return report;

    detail::run_check(report, "discriminant", [&] {
        DiscChecks dc = check_discriminant(inst, cert.f);
        if (!dc.passed) throw VerificationError("discriminant", dc.note);
        if (dc.alpha_valuations != cert.disc_checks.alpha_valuations ||
            dc.beta_valuation != cert.disc_checks.beta_valuation ||
            dc.squarefree != cert.disc_checks.squarefree || !cert.disc_checks.passed)
            throw VerificationError("discriminant", "stored discriminant data differs");
        return std::string{};
    });

    detail::run_check(report, "fibres", [&] {
        if (cert.fibres.size() != q + 1)
            throw VerificationError("fibres", "expected q+1 fibre certificates");
        for (std::uint64_t code = 0; code <= q; ++code) {
            std::optional<std::uint64_t> place;
            if (code < q) place = code;
            FibreCertificate fc = fibre_certificate(inst, cert.f, place);
            const FibreCertificate& stored = cert.fibres[static_cast<std::size_t>(code)];
            if (!fc.passed) {
                std::ostringstream os;
                os << "fibre above " << (place ? std::to_string(*place) : std::string("infinity"))
                   << " fails";
                throw VerificationError("fibres", os.str());
            }
            if (stored.place != fc.place || stored.expected != fc.expected ||
                stored.observed != fc.observed || stored.slopes != fc.slopes || !stored.passed)
                throw VerificationError("fibres", "stored fibre certificate differs");
        }
        return std::string{};
    });

    detail::run_check(report, "polygon_interior", [&] {
        const LatticePolygon poly = delta_r(inst.gamma, inst.right.lp, inst.right.r);
        const long long interior = lattice_counts(poly).interior;
        if (interior != cert.polygon_interior)
            throw VerificationError("polygon_interior", "stored interior count differs");
        const long long target = inst.genus + static_cast<long long>(q) * inst.profile.L;
        if (interior != target)
            throw VerificationError("polygon_interior", "interior count misses g + qL");
        return std::string{};
    });
    if (!report.all_passed) return report;

    detail::run_check(report, "genus", [&] {
        long long genus = genus_check(inst, cert.f);
        if (genus != cert.genus_claim)
            throw VerificationError("genus", "stored genus claim differs");
        return std::string{};
    });

    detail::run_check(report, "N1", [&] {
        std::vector<FibreCertificate> fibres;
        for (std::uint64_t code = 0; code <= q; ++code) {
            std::optional<std::uint64_t> place;
            if (code < q) place = code;
            fibres.push_back(fibre_certificate(inst, cert.f, place));
        }
        const long long n1 = rational_point_count(inst, fibres);
        if (n1 != cert.n1) throw VerificationError("N1", "stored N1 differs");
        if (n1 != static_cast<long long>(inst.gamma) * static_cast<long long>(q + 1))
            throw VerificationError("N1", "N1 != gamma (q+1)");
        if (!weil_window(n1, 1, inst.genus, q))
            throw VerificationError("N1", "N1 violates the Weil window");
        return std::string{};
    });
    if (!report.all_passed) return report;

    detail::run_check(report, "gonality", [&] {
        int gon = gonality_certificate(inst, cert.f, cert.n1);
        if (gon != cert.gonality_claim || gon != inst.gamma)
            throw VerificationError("gonality", "stored gonality claim differs");
        return std::string{};
    });

    return report;
}

// The full pipeline: resolve the instance, search for a tuple, assemble f,
// and populate the certificate with every check already green. Verification
// failures here indicate an implementation bug, not a bad input.
inline Certificate construct_curve(FieldPtr field, int gamma, long long genus,
                                   std::uint64_t seed = 0,
                                   long long budget = kDefaultSearchBudget, int jobs = 1) {
    ConstructionInstance inst = make_instance(std::move(field), gamma, genus, seed, budget);
    SearchResult search = search_tuple(inst, jobs);
    CurvePoly f = assemble_f(inst, search.tuple);

    DiscChecks dc = check_discriminant(inst, f);
    if (!dc.passed) throw VerificationError("discriminant", dc.note);

    const std::uint64_t q = inst.field->cardinality();
    std::vector<FibreCertificate> fibres;
    for (std::uint64_t code = 0; code <= q; ++code) {
        std::optional<std::uint64_t> place;
        if (code < q) place = code;
        FibreCertificate fc = fibre_certificate(inst, f, place);
        if (!fc.passed) {
            std::ostringstream os;
            os << "fibre above " << (place ? std::to_string(*place) : std::string("infinity"))
               << " fails";
            throw VerificationError("fibres", os.str());
        }
        fibres.push_back(std::move(fc));
    }

    const LatticePolygon poly = delta_r(inst.gamma, inst.right.lp, inst.right.r);
    const long long interior = lattice_counts(poly).interior;
    const long long n1 = rational_point_count(inst, fibres);
    const long long genus_claim = genus_check(inst, f);
    const int gonality_claim = gonality_certificate(inst, f, n1);

    Certificate cert{std::move(inst),
                     std::move(search.tuple),
                     std::move(f),
                     std::move(dc),
                     std::move(fibres),
                     interior,
                     n1,
                     genus_claim,
                     gonality_claim,
                     search.trials,
                     kToolVersion,
                     true};
    return cert;
}

}  // namespace gonal
