#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gonal/errors.hpp"
#include "gonal/verify.hpp"

namespace gonal {

using ordered_json = nlohmann::ordered_json;

// Certificate schema "v1". Canonical key order, so a certificate file is a
// deterministic function of (field, gamma, genus, seed). Derived quantities
// (alpha, n, m, the degree plan) are not stored; the verifier recomputes them.

inline ordered_json field_to_json(const Field& field) {
    ordered_json j;
    if (field.is_prime_field()) {
        j["p"] = field.characteristic();
        j["e"] = 1;
    } else {
        if (!field.base()->is_prime_field())
            throw InvalidArgumentError("certificates only carry fields over the prime field");
        j["p"] = field.characteristic();
        j["e"] = field.degree_over_base();
        j["modulus"] = field.modulus_codes();
    }
    return j;
}

inline ordered_json certificate_to_json(const Certificate& cert) {
    const ConstructionInstance& inst = cert.instance;
    ordered_json j;
    j["v"] = "v1";
    j["field"] = field_to_json(*inst.field);
    j["gamma"] = inst.gamma;
    j["genus"] = inst.genus;
    j["profile"] = ordered_json{{"k", inst.profile.k}, {"l", inst.profile.l}, {"L", inst.profile.L}};
    j["right"] = ordered_json{{"kp", inst.right.kp}, {"lp", inst.right.lp}, {"r", inst.right.r}};
    j["beta"] = inst.beta.codes();
    ordered_json tuple = ordered_json::array();
    for (const UniPoly& g : cert.g_tuple) tuple.push_back(g.codes());
    j["gTuple"] = std::move(tuple);
    ordered_json fc = ordered_json::array();
    for (const UniPoly& fi : cert.f.coefficients()) fc.push_back(fi.codes());
    j["f"] = ordered_json{{"gamma", cert.f.gamma()}, {"f", std::move(fc)}};

    ordered_json disc;
    disc["alphaValuations"] = cert.disc_checks.alpha_valuations;
    disc["betaValuation"] = cert.disc_checks.beta_valuation;
    disc["squarefree"] = cert.disc_checks.squarefree;
    disc["passed"] = cert.disc_checks.passed;
    ordered_json fibres = ordered_json::array();
    for (const FibreCertificate& f : cert.fibres) {
        ordered_json fj;
        if (f.place.has_value())
            fj["place"] = *f.place;
        else
            fj["place"] = "inf";
        fj["expected"] = f.expected;
        fj["observed"] = f.observed;
        fj["slopes"] = f.slopes;
        fj["passed"] = f.passed;
        fibres.push_back(std::move(fj));
    }
    j["checks"] = ordered_json{{"discriminant", std::move(disc)},
                               {"fibres", std::move(fibres)},
                               {"polygonInterior", cert.polygon_interior},
                               {"N1", cert.n1},
                               {"gonality", cert.gonality_claim}};
    j["meta"] = ordered_json{
        {"seed", inst.seed}, {"trials", cert.trials}, {"toolVersion", cert.tool_version}};
    return j;
}

inline std::string certificate_to_string(const Certificate& cert) {
    return certificate_to_json(cert).dump(2) + "\n";
}

inline void write_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open certificate output file: " + path);
    out << certificate_to_string(cert);
}

namespace detail {

template <typename T>
inline T get_field(const ordered_json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("certificate missing key: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string("certificate key has wrong type: ") + key);
    }
}

inline UniPoly poly_from_codes_checked(const FieldPtr& field, const std::vector<std::uint64_t>& codes,
                                       const char* what) {
    for (std::uint64_t c : codes)
        if (c >= field->cardinality())
            throw SchemaError(std::string("coefficient out of range in ") + what);
    return UniPoly::from_codes(field, codes);
}

}  // namespace detail

inline Certificate certificate_from_json(const ordered_json& j) {
    using detail::get_field;
    if (get_field<std::string>(j, "v") != "v1") throw SchemaError("unsupported schema version");

    const ordered_json jf = get_field<ordered_json>(j, "field");
    const std::uint64_t p = get_field<std::uint64_t>(jf, "p");
    const int e = get_field<int>(jf, "e");
    FieldPtr field;
    try {
        if (e == 1)
            field = field_from_spec(p, 1);
        else
            field = field_from_spec(p, e, get_field<std::vector<std::uint64_t>>(jf, "modulus"));
    } catch (const Error& err) {
        throw SchemaError(std::string("bad field spec: ") + err.what());
    }

    ConstructionInstance inst;
    inst.field = field;
    inst.gamma = get_field<int>(j, "gamma");
    inst.genus = get_field<long long>(j, "genus");
    if (inst.gamma < 2 || inst.gamma > 64) throw SchemaError("gamma out of range");
    if (inst.genus < 2) throw SchemaError("genus out of range");

    const ordered_json jp = get_field<ordered_json>(j, "profile");
    inst.profile.gamma = inst.gamma;
    inst.profile.k = get_field<std::vector<long long>>(jp, "k");
    inst.profile.l = get_field<std::vector<long long>>(jp, "l");
    inst.profile.L = get_field<long long>(jp, "L");
    if (inst.profile.k.size() != static_cast<std::size_t>(inst.gamma) + 1 ||
        inst.profile.l.size() != static_cast<std::size_t>(inst.gamma) + 1)
        throw SchemaError("profile length mismatch");

    const ordered_json jr = get_field<ordered_json>(j, "right");
    inst.right.kp = get_field<std::vector<long long>>(jr, "kp");
    inst.right.lp = get_field<std::vector<long long>>(jr, "lp");
    inst.right.r = get_field<long long>(jr, "r");
    if (inst.right.kp.size() != static_cast<std::size_t>(inst.gamma) ||
        inst.right.lp.size() != static_cast<std::size_t>(inst.gamma) + 1)
        throw SchemaError("right profile length mismatch");

    inst.alpha = alpha_poly(field);
    inst.beta =
        detail::poly_from_codes_checked(field, get_field<std::vector<std::uint64_t>>(j, "beta"), "beta");
    RightSeed rs = build_right_profile(inst.gamma, field->cardinality(), inst.genus, inst.profile);
    inst.n = rs.n;
    inst.m = rs.m;
    // the degree plan is re-derived by the verifier; leave inst.d empty here

    std::vector<UniPoly> g_tuple;
    for (const auto& codes : get_field<std::vector<std::vector<std::uint64_t>>>(j, "gTuple"))
        g_tuple.push_back(detail::poly_from_codes_checked(field, codes, "gTuple"));
    if (g_tuple.size() != static_cast<std::size_t>(inst.gamma) + 1)
        throw SchemaError("gTuple length mismatch");

    const ordered_json jcurve = get_field<ordered_json>(j, "f");
    if (get_field<int>(jcurve, "gamma") != inst.gamma) throw SchemaError("curve gamma mismatch");
    std::vector<UniPoly> fcoeffs;
    for (const auto& codes : get_field<std::vector<std::vector<std::uint64_t>>>(jcurve, "f"))
        fcoeffs.push_back(detail::poly_from_codes_checked(field, codes, "f"));
    if (fcoeffs.size() != static_cast<std::size_t>(inst.gamma) + 1)
        throw SchemaError("curve coefficient count mismatch");
    if (fcoeffs.back().is_zero()) throw SchemaError("curve top coefficient vanishes");
    CurvePoly f(field, std::move(fcoeffs));

    const ordered_json jc = get_field<ordered_json>(j, "checks");
    const ordered_json jd = get_field<ordered_json>(jc, "discriminant");
    DiscChecks dc;
    dc.alpha_valuations = get_field<std::vector<int>>(jd, "alphaValuations");
    dc.beta_valuation = get_field<int>(jd, "betaValuation");
    dc.squarefree = get_field<bool>(jd, "squarefree");
    dc.passed = get_field<bool>(jd, "passed");
    if (dc.alpha_valuations.size() != field->cardinality())
        throw SchemaError("alphaValuations length mismatch");

    std::vector<FibreCertificate> fibres;
    for (const auto& fj : get_field<std::vector<ordered_json>>(jc, "fibres")) {
        FibreCertificate fc;
        if (!fj.contains("place")) throw SchemaError("fibre missing place");
        if (fj.at("place").is_string()) {
            if (fj.at("place").get<std::string>() != "inf") throw SchemaError("bad fibre place");
        } else if (fj.at("place").is_number_unsigned()) {
            fc.place = fj.at("place").get<std::uint64_t>();
            if (*fc.place >= field->cardinality()) throw SchemaError("fibre place out of range");
        } else {
            throw SchemaError("bad fibre place");
        }
        fc.expected = get_field<std::vector<long long>>(fj, "expected");
        fc.observed = get_field<std::vector<long long>>(fj, "observed");
        fc.slopes = get_field<std::vector<long long>>(fj, "slopes");
        fc.passed = get_field<bool>(fj, "passed");
        fibres.push_back(std::move(fc));
    }
    if (fibres.size() != field->cardinality() + 1)
        throw SchemaError("expected q+1 fibre certificates");

    const ordered_json jm = get_field<ordered_json>(j, "meta");
    inst.seed = get_field<std::uint64_t>(jm, "seed");

    Certificate cert{std::move(inst),
                     std::move(g_tuple),
                     std::move(f),
                     std::move(dc),
                     std::move(fibres),
                     get_field<long long>(jc, "polygonInterior"),
                     get_field<long long>(jc, "N1"),
                     get_field<long long>(j, "genus"),
                     get_field<int>(jc, "gonality"),
                     get_field<long long>(jm, "trials"),
                     get_field<std::string>(jm, "toolVersion"),
                     false};
    return cert;
}

inline Certificate read_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open certificate file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("certificate is not valid JSON: ") + e.what());
    }
    return certificate_from_json(j);
}

}  // namespace gonal
