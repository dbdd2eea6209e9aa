// Command-line front end: construct certified curves, verify certificates,
// count points over extensions, run the zeta genus oracle, and tabulate
// squarefree densities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gonal/certificate_io.hpp"
#include "gonal/construct.hpp"
#include "gonal/density.hpp"
#include "gonal/errors.hpp"
#include "gonal/verify.hpp"
#include "gonal/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCap = 4;
constexpr int kExitConfig = 64;
constexpr int kExitSchema = 65;

struct CommonField {
    std::uint64_t p = 3;
    int e = 1;
};

std::string format_vector(const std::vector<long long>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ']';
    return os.str();
}

int cmd_construct(const CommonField& fs, int gamma, long long genus, std::uint64_t seed,
                  long long budget, int jobs, const std::string& out_path, bool verbose) {
    gonal::FieldPtr field;
    try {
        field = gonal::field_from_spec(fs.p, fs.e);
        if (gamma < 2 || genus < 2) throw gonal::InvalidArgumentError("need gamma >= 2, genus >= 2");
        if (budget < 1) throw gonal::InvalidArgumentError("budget must be >= 1");
    } catch (const gonal::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        gonal::Certificate cert = gonal::construct_curve(field, gamma, genus, seed, budget, jobs);
        gonal::write_certificate(cert, out_path);
        std::cout << "N1=" << cert.n1 << " genus=" << cert.genus_claim
                  << " r=" << cert.instance.right.r << " d=" << format_vector(cert.instance.d)
                  << " trials=" << cert.trials << "\n";
        if (verbose) {
            std::cout << "profile k=" << format_vector(cert.instance.profile.k)
                      << " l=" << format_vector(cert.instance.profile.l)
                      << " L=" << cert.instance.profile.L << "\n";
            std::cout << "right  kp=" << format_vector(cert.instance.right.kp)
                      << " lp=" << format_vector(cert.instance.right.lp)
                      << " interior=" << cert.polygon_interior << "\n";
            std::cout << "beta=" << cert.instance.beta.str()
                      << " v_beta(disc)=" << cert.disc_checks.beta_valuation << "\n";
        }
        std::cout << "certificate written to " << out_path << "\n";
        return kExitOk;
    } catch (const gonal::InfeasibleGenusError& e) {
        std::cerr << "infeasible genus: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const gonal::BudgetExhaustedError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        if (!e.advisory.empty()) std::cerr << "advisory: " << e.advisory << "\n";
        return kExitBudget;
    } catch (const gonal::CapExceededError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const gonal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

struct LoadResult {
    int rc = kExitFailure;
    std::optional<gonal::Certificate> cert;
};

// Loads and fully re-verifies a certificate; on success marks it verified.
LoadResult load_and_verify(const std::string& path, bool print_checks) {
    LoadResult out;
    try {
        gonal::Certificate cert = gonal::read_certificate(path);
        gonal::VerifyReport report = gonal::verify_certificate(cert);
        if (print_checks)
            for (const auto& c : report.checks)
                std::cout << (c.passed ? "  ok   " : "  FAIL ") << c.name
                          << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        if (!report.all_passed) {
            const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                                         [](const auto& c) { return !c.passed; });
            std::cerr << "verification failed: " << report.first_failure;
            if (it != report.checks.end() && !it->detail.empty()) std::cerr << ": " << it->detail;
            std::cerr << "\n";
            out.rc = kExitFailure;
            return out;
        }
        cert.all_passed = true;
        out.cert = std::move(cert);
        out.rc = kExitOk;
        return out;
    } catch (const gonal::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        out.rc = kExitSchema;
        return out;
    } catch (const gonal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        out.rc = kExitFailure;
        return out;
    }
}

int cmd_verify(const std::string& path) {
    LoadResult res = load_and_verify(path, /*print_checks=*/true);
    if (res.rc == kExitOk) std::cout << "OK: all checks passed\n";
    return res.rc;
}

int cmd_count(const std::string& path, int ext, std::uint64_t cap, int jobs) {
    LoadResult res = load_and_verify(path, /*print_checks=*/false);
    if (res.rc != kExitOk) return res.rc;
    try {
        long long nk = gonal::count_points_ext(*res.cert, ext, cap, jobs);
        std::cout << "N_" << ext << " = " << nk << "\n";
        return kExitOk;
    } catch (const gonal::CapExceededError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const gonal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int cmd_zeta(const std::string& path, std::uint64_t cap, int jobs) {
    LoadResult loaded = load_and_verify(path, /*print_checks=*/false);
    if (loaded.rc != kExitOk) return loaded.rc;
    const gonal::Certificate& cert = *loaded.cert;
    try {
        gonal::ZetaResult res = gonal::zeta_genus(cert, cert.genus_claim, cap, jobs);
        if (res.consistent) {
            std::cout << "consistent, genus " << cert.genus_claim << "\n";
            return kExitOk;
        }
        std::cout << "inconsistent, genus " << cert.genus_claim << ": " << res.detail << "\n";
        return kExitFailure;
    } catch (const gonal::CapExceededError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const gonal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int cmd_density(const CommonField& fs, int gamma, const std::string& degrees_csv, long long trials,
                std::uint64_t seed, int max_prime_degree, std::uint64_t cap) {
    gonal::FieldPtr field;
    std::vector<long long> degrees;
    try {
        field = gonal::field_from_spec(fs.p, fs.e);
        if (gamma < 2) throw gonal::InvalidArgumentError("need gamma >= 2");
        std::stringstream ss(degrees_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) degrees.push_back(std::stoll(tok));
        if (degrees.size() != static_cast<std::size_t>(gamma) + 1)
            throw gonal::InvalidArgumentError("--d must list gamma+1 degrees");
    } catch (const gonal::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        gonal::DensityContext ctx = gonal::density_context(field, gamma);
        gonal::DensityReport trunc = gonal::truncated_density(ctx, max_prime_degree, cap);
        std::cout << "prime            c_p      local factor\n";
        for (const auto& pf : trunc.per_prime) {
            std::ostringstream row;
            row << pf.prime.str();
            std::cout << std::left << std::setw(17) << row.str() << std::setw(9) << pf.cp
                      << pf.factor_num << "/" << pf.factor_den << "\n";
        }
        std::cout << "truncated product (deg <= " << max_prime_degree
                  << "): " << trunc.truncated.str() << " = " << std::setprecision(6)
                  << trunc.truncated.to_double() << "\n";
        gonal::DensityReport emp = gonal::empirical_density(ctx, degrees, trials, seed);
        std::cout << "empirical: " << emp.successes << "/" << emp.trials << " = "
                  << emp.frequency << "\n";
        std::cout << "|empirical - truncated| = "
                  << std::abs(emp.frequency - trunc.truncated.to_double()) << "\n";
        return kExitOk;
    } catch (const gonal::CapExceededError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const gonal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gonal: curves over F_q with gonality gamma and gamma(q+1) rational points"};
    app.set_version_flag("--version", gonal::kToolVersion);
    app.require_subcommand(1);

    CommonField fs;
    int gamma = 2;
    long long genus = 2;
    std::uint64_t seed = 0;
    long long budget = gonal::kDefaultSearchBudget;
    int jobs = 1;
    std::uint64_t cap = gonal::kDefaultEnumerationCap;
    std::string out_path = "certificate.json";
    std::string cert_path;
    int ext = 2;
    std::string degrees_csv;
    long long trials = 2000;
    int max_prime_degree = 2;

    CLI::App* c = app.add_subcommand("construct", "construct a curve and write its certificate");
    c->add_option("--p", fs.p, "field characteristic (prime)")->required();
    c->add_option("--e", fs.e, "extension degree of F_q over F_p");
    c->add_option("--gamma", gamma, "gonality (>= 2)")->required();
    c->add_option("--genus", genus, "genus (>= 2)")->required();
    c->add_option("--seed", seed, "search seed");
    c->add_option("--budget", budget, "trial budget for the tuple search");
    c->add_option("--jobs", jobs, "parallel workers for the search");
    c->add_option("--out", out_path, "certificate output path");
    bool verbose = false;
    c->add_flag("--verbose", verbose, "print the resolved profile and polygon data");

    CLI::App* v = app.add_subcommand("verify", "re-verify a certificate from the raw tuple");
    v->add_option("--cert", cert_path, "certificate path")->required();

    CLI::App* n = app.add_subcommand("count", "count points over an extension field");
    n->add_option("--cert", cert_path, "certificate path")->required();
    n->add_option("--ext", ext, "extension degree k for N_k")->required();
    n->add_option("--cap", cap, "enumeration cap");
    n->add_option("--jobs", jobs, "parallel workers");

    CLI::App* z = app.add_subcommand("zeta", "check the genus claim against the zeta function");
    z->add_option("--cert", cert_path, "certificate path")->required();
    z->add_option("--cap", cap, "enumeration cap");
    z->add_option("--jobs", jobs, "parallel workers");

    CLI::App* d = app.add_subcommand("density", "squarefree density: Euler product vs sampling");
    d->add_option("--p", fs.p, "field characteristic (prime)")->required();
    d->add_option("--e", fs.e, "extension degree of F_q over F_p");
    d->add_option("--gamma", gamma, "gonality (>= 2)")->required();
    d->add_option("--d", degrees_csv, "comma-separated exact degrees d_0..d_gamma")->required();
    d->add_option("--trials", trials, "Monte-Carlo trials");
    d->add_option("--seed", seed, "sampling seed");
    d->add_option("--max-prime-degree", max_prime_degree, "Euler product truncation degree");
    d->add_option("--cap", cap, "enumeration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (app.got_subcommand(c))
        return cmd_construct(fs, gamma, genus, seed, budget, jobs, out_path, verbose);
    if (app.got_subcommand(v)) return cmd_verify(cert_path);
    if (app.got_subcommand(n)) return cmd_count(cert_path, ext, cap, jobs);
    if (app.got_subcommand(z)) return cmd_zeta(cert_path, cap, jobs);
    if (app.got_subcommand(d))
        return cmd_density(fs, gamma, degrees_csv, trials, seed, max_prime_degree, cap);
    return kExitConfig;
}
