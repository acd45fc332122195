// onorm: extremize entrywise p-norms over O(N), certify local maximizers,
// evaluate exact spherical/Haar integrals, and estimate 1-norm moments.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "onorm/ascent.hpp"
#include "onorm/bounds.hpp"
#include "onorm/certify.hpp"
#include "onorm/hadamard.hpp"
#include "onorm/moments.hpp"
#include "onorm/reproduce.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "onorm 1.0.0";

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

json make_manifest(const std::string& command, const json& params, std::uint64_t seed,
                   double duration, const std::vector<std::string>& outputs) {
    return json{{"command", command}, {"parameters", params},       {"seed", seed},
                {"tool_version", kVersion}, {"duration_s", duration}, {"outputs", outputs}};
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << "\n";
}

onorm::SquareMatrix load_matrix(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    return onorm::read_matrix(is);
}

int env_threads() {
    if (const char* t = std::getenv("ONORM_THREADS")) return std::atoi(t);
    return 0;
}

std::uint64_t pick_seed(const CLI::Option* seed_opt, std::uint64_t seed) {
    if (seed_opt->count() > 0) return seed;
    // No --seed: random, but still recorded in the manifest.
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extremizers and moments of entrywise norms on the orthogonal group"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    int threads = env_threads();
    app.add_option("--threads", threads, "worker threads (0 = hardware)")->capture_default_str();

    // ---- optimize ----
    auto* opt = app.add_subcommand("optimize", "local p-norm extremization over O(N)");
    int opt_n = 3, opt_restarts = 100;
    double opt_p = 1.0;
    std::uint64_t opt_seed = 0;
    std::string opt_start, opt_out;
    opt->add_option("--n", opt_n, "dimension")->capture_default_str();
    opt->add_option("--p", opt_p, "norm exponent (p != 2)")->capture_default_str();
    opt->add_option("--restarts", opt_restarts, "Haar restarts")->capture_default_str();
    auto* opt_seed_opt = opt->add_option("--seed", opt_seed, "sampler seed");
    opt->add_option("--start", opt_start, "start matrix file (single run, no restarts)");
    opt->add_option("--out", opt_out, "JSON output file");

    // ---- certify ----
    auto* cert = app.add_subcommand("certify", "local-maximizer certificate (sign pattern test)");
    std::string cert_in, cert_out;
    cert->add_option("--in", cert_in, "matrix file")->required();
    cert->add_option("--out", cert_out, "JSON output file");

    // ---- bounds ----
    auto* bnd = app.add_subcommand("bounds", "K_N estimate table");
    int bnd_n = 3, bnd_restarts = 100;
    bool bnd_empirical = false;
    std::uint64_t bnd_seed = 0;
    std::string bnd_format = "text", bnd_out;
    bnd->add_option("--n", bnd_n, "dimension")->capture_default_str();
    bnd->add_flag("--empirical", bnd_empirical, "include multi-restart empirical value");
    bnd->add_option("--restarts", bnd_restarts, "restarts for the empirical value")->capture_default_str();
    auto* bnd_seed_opt = bnd->add_option("--seed", bnd_seed, "sampler seed");
    bnd->add_option("--format", bnd_format, "text|json|csv")->capture_default_str();
    bnd->add_option("--out", bnd_out, "output file");

    // ---- moment ----
    auto* mom = app.add_subcommand("moment", "Monte Carlo moment of the 1-norm");
    int mom_n = 3, mom_k = 1;
    long long mom_samples = 1000000;
    std::uint64_t mom_seed = 0;
    std::string mom_out;
    mom->add_option("--n", mom_n, "dimension")->capture_default_str();
    mom->add_option("--k", mom_k, "moment order")->capture_default_str();
    mom->add_option("--samples", mom_samples, "Haar samples")->capture_default_str();
    auto* mom_seed_opt = mom->add_option("--seed", mom_seed, "sampler seed");
    mom->add_option("--out", mom_out, "JSON output file");

    // ---- spherical ----
    auto* sph = app.add_subcommand("spherical", "exact spherical integral of |x1^k1 ... xp^kp|");
    int sph_n = 3;
    std::string sph_ks = "1";
    sph->add_option("--n", sph_n, "sphere ambient dimension")->capture_default_str();
    sph->add_option("--ks", sph_ks, "comma-separated exponents, e.g. 1,1,2")->capture_default_str();

    // ---- hadamard ----
    auto* had = app.add_subcommand("hadamard", "emit a Sylvester-type Hadamard matrix");
    int had_order = 4;
    had->add_option("--order", had_order, "order (power of 2)")->capture_default_str();

    // ---- detect ----
    auto* det = app.add_subcommand("detect", "rescaled-Hadamard detection with per-row defects");
    std::string det_in;
    det->add_option("--in", det_in, "matrix file")->required();

    // ---- reproduce ----
    auto* rep = app.add_subcommand("reproduce", "re-derive the headline numbers and check them");
    std::uint64_t rep_seed = 20260826;
    rep->add_option("--seed", rep_seed, "sampler seed")->capture_default_str();
    std::string rep_out;
    rep->add_option("--out", rep_out, "JSON output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Timer timer;
    try {
        if (opt->parsed()) {
            const std::uint64_t seed = pick_seed(opt_seed_opt, opt_seed);
            onorm::AscentOptions o;
            o.p = opt_p;
            o.restarts = opt_restarts;
            o.sampler = onorm::SamplerConfig{seed, 0};
            onorm::AscentResult res =
                opt_start.empty()
                    ? onorm::search_kn(opt_n, o, threads)
                    : onorm::optimize(onorm::OrthogonalMatrix(load_matrix(opt_start)), o);
            std::string verdict = "HasZeroEntry";
            try {
                verdict = onorm::verdict_name(onorm::local_max_certificate(res.matrix).verdict);
            } catch (const std::exception&) {
            }
            json j{{"objective", res.objective},
                   {"sweeps", res.sweeps_used},
                   {"restart_index", res.restart_index},
                   {"converged", res.converged},
                   {"seed", seed},
                   {"matrix", onorm::matrix_to_text(res.matrix.matrix())},
                   {"certificate_verdict", verdict}};
            j["manifest"] = make_manifest(
                "optimize",
                json{{"n", opt_n}, {"p", opt_p}, {"restarts", opt_restarts}, {"start", opt_start}},
                seed, timer.seconds(), opt_out.empty() ? std::vector<std::string>{} : std::vector{opt_out});
            if (!opt_out.empty()) write_json_file(opt_out, j);
            std::cout << "objective " << std::setprecision(12) << res.objective << "  sweeps "
                      << res.sweeps_used << "  converged " << (res.converged ? "yes" : "no")
                      << "  certificate " << verdict << "\n";
        } else if (cert->parsed()) {
            const onorm::OrthogonalMatrix u{load_matrix(cert_in)};
            const onorm::Certificate c = onorm::local_max_certificate(u);
            json j{{"verdict", onorm::verdict_name(c.verdict)},
                   {"symmetry_residual", c.symmetry_residual},
                   {"min_eigenvalue", c.min_eigenvalue},
                   {"eigenvalues", c.eigenvalues}};
            j["manifest"] = make_manifest("certify", json{{"in", cert_in}}, 0, timer.seconds(),
                                          cert_out.empty() ? std::vector<std::string>{}
                                                           : std::vector{cert_out});
            if (!cert_out.empty()) write_json_file(cert_out, j);
            std::cout << onorm::verdict_name(c.verdict) << "  symmetry_residual "
                      << c.symmetry_residual << "  min_eigenvalue " << c.min_eigenvalue << "\n";
        } else if (bnd->parsed()) {
            const std::uint64_t seed = pick_seed(bnd_seed_opt, bnd_seed);
            onorm::AscentOptions o;
            o.restarts = bnd_restarts;
            o.sampler = onorm::SamplerConfig{seed, 0};
            const onorm::BoundsReport r = onorm::bounds_report(bnd_n, bnd_empirical, o, threads);
            json j{{"n", r.n},
                   {"cauchy_schwarz", r.cauchy_schwarz},
                   {"improved_threshold", r.improved_threshold},
                   {"elementary", r.elementary},
                   {"spherical_exact", r.spherical_exact},
                   {"spherical_asymptotic", r.spherical_asymptotic},
                   {"hc_note", r.hc_note}};
            if (r.elementary_refined) j["elementary_refined"] = *r.elementary_refined;
            if (r.empirical_best) j["empirical_best"] = *r.empirical_best;
            j["manifest"] = make_manifest(
                "bounds", json{{"n", bnd_n}, {"empirical", bnd_empirical}, {"restarts", bnd_restarts}},
                seed, timer.seconds(), bnd_out.empty() ? std::vector<std::string>{} : std::vector{bnd_out});
            std::ostringstream body;
            if (bnd_format == "json") {
                body << j.dump(2) << "\n";
            } else if (bnd_format == "csv") {
                body << "n,cauchy_schwarz,improved_threshold,elementary,elementary_refined,"
                        "spherical_exact,spherical_asymptotic,empirical_best\n";
                body << r.n << "," << std::setprecision(12) << r.cauchy_schwarz << ","
                     << r.improved_threshold << "," << r.elementary << ",";
                if (r.elementary_refined) body << *r.elementary_refined;
                body << "," << r.spherical_exact << "," << r.spherical_asymptotic << ",";
                if (r.empirical_best) body << *r.empirical_best;
                body << "\n";
            } else {
                body << std::setprecision(10) << "n = " << r.n << "\n"
                     << "cauchy_schwarz        " << r.cauchy_schwarz << "   (= HC at N)\n"
                     << "improved_threshold    " << r.improved_threshold << "   (>= implies HC, N even)\n"
                     << "elementary            " << r.elementary << "   (implied by HC)\n";
                if (r.elementary_refined)
                    body << "elementary_refined    " << *r.elementary_refined << "   (implied by HC)\n";
                body << "spherical_exact       " << r.spherical_exact << "   (true lower bound)\n"
                     << "spherical_asymptotic  " << r.spherical_asymptotic << "   (true, N large)\n";
                if (r.empirical_best)
                    body << "empirical_best        " << *r.empirical_best << "   (lower bound)\n";
            }
            if (!bnd_out.empty()) {
                std::ofstream os(bnd_out);
                os << body.str();
            }
            std::cout << body.str();
        } else if (mom->parsed()) {
            const std::uint64_t seed = pick_seed(mom_seed_opt, mom_seed);
            const onorm::MomentEstimate e =
                onorm::monte_carlo_moment(mom_n, mom_k, mom_samples, {seed, 0}, threads);
            json j{{"n", e.n},
                   {"k", e.k},
                   {"mean", e.mean},
                   {"std_error", e.std_error},
                   {"samples", e.samples},
                   {"seed", e.seed},
                   {"kn_lower_bound", e.kn_lower_bound}};
            j["manifest"] = make_manifest(
                "moment", json{{"n", mom_n}, {"k", mom_k}, {"samples", mom_samples}}, seed,
                timer.seconds(), mom_out.empty() ? std::vector<std::string>{} : std::vector{mom_out});
            if (!mom_out.empty()) write_json_file(mom_out, j);
            std::cout << std::setprecision(10) << "I_" << e.k << " ~ " << e.mean << " +- "
                      << e.std_error << "  (K_N >= " << e.kn_lower_bound << ")\n";
        } else if (sph->parsed()) {
            std::vector<int> ks;
            std::stringstream ss(sph_ks);
            for (std::string item; std::getline(ss, item, ',');) ks.push_back(std::stoi(item));
            const onorm::ExactValue v = onorm::spherical_integral(onorm::ExponentVector(sph_n, ks));
            std::cout << v.to_string() << "  ~= " << std::setprecision(12) << v.to_double() << "\n";
        } else if (had->parsed()) {
            int k = 0, order = had_order;
            while (order > 1 && order % 2 == 0) {
                order /= 2;
                ++k;
            }
            if (order != 1) throw std::runtime_error("order must be a power of 2 (Sylvester)");
            onorm::write_matrix(std::cout, onorm::sylvester(k).as_matrix());
        } else if (det->parsed()) {
            const onorm::OrthogonalMatrix u{load_matrix(det_in)};
            const bool hit = onorm::detect_rescaled(u);
            std::cout << (hit ? "true" : "false") << "\n";
            for (int i = 0; i < u.n(); ++i) {
                std::vector<double> row(u.n());
                for (int j = 0; j < u.n(); ++j) row[j] = u(i, j);
                std::cout << "row " << i << " defect " << std::setprecision(10)
                          << onorm::row_defect(row).defect << "\n";
            }
        } else if (rep->parsed()) {
            const onorm::ReproduceResult r = onorm::run_reproduce(rep_seed, threads);
            json j = r.report;
            j["manifest"] = make_manifest("reproduce", json{{"seed", rep_seed}}, rep_seed,
                                          timer.seconds(),
                                          rep_out.empty() ? std::vector<std::string>{}
                                                          : std::vector{rep_out});
            if (!rep_out.empty()) write_json_file(rep_out, j);
            std::cout << std::setprecision(10);
            std::cout << "K3 = " << std::fixed << std::setprecision(6)
                      << r.report["k3"]["objective"].get<double>() << std::defaultfloat << "\n";
            std::cout << "certificate(A) eigenvalues:";
            for (double e : r.report["certificate_A"]["eigenvalues"].get<std::vector<double>>())
                std::cout << " " << std::setprecision(10) << e;
            std::cout << "\nspherical constant sqrt(2/pi) = " << std::setprecision(3)
                      << r.report["spherical"]["sqrt_2_over_pi"].get<double>() << "\n";
            std::cout << "n  cauchy_schwarz  threshold  spherical  empirical\n";
            for (const auto& b : r.report["bounds"]) {
                std::cout << b["n"].get<int>() << "  " << std::setprecision(8)
                          << b["cauchy_schwarz"].get<double>() << "  "
                          << b["improved_threshold"].get<double>() << "  "
                          << b["spherical_exact"].get<double>() << "  "
                          << b["empirical_best"].get<double>() << "\n";
            }
            if (!r.pass) {
                std::cerr << "FAILED: " << r.failures.front() << "\n";
                return 1;
            }
            std::cout << "all checks passed\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
