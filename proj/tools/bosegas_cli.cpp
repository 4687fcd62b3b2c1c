#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "bosegas/bogoliubov/bound.hpp"
#include "bosegas/cli/config.hpp"
#include "bosegas/cli/table.hpp"
#include "bosegas/cli/verify.hpp"
#include "bosegas/energy/assembly.hpp"
#include "bosegas/localization/multiplier.hpp"
#include "bosegas/numerics/grid.hpp"
#include "bosegas/scattering/scattering.hpp"

namespace {

using bosegas::RunConfig;

// "lo:hi:n" -> n equally spaced points
std::vector<double> parse_grid_spec(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &tail) != 3 || n < 2 ||
        !(hi > lo))
        throw bosegas::ConfigError("pgrid must be lo:hi:n with hi > lo and n >= 2, got '" +
                                   spec + "'");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    return out;
}

void run_scatter(const RunConfig& cfg) {
    const auto v = bosegas::load_potential(cfg.potential_path);
    const auto sol =
        bosegas::scattering_solution(v, bosegas::RadialGrid::uniform(0.0, v.range(), 801));
    const double a_ode = bosegas::scattering_length_ode(v);
    const double rtilde =
        cfg.rtilde > 0.0 ? cfg.rtilde : 4.0 * std::max(v.range(), v.core_radius());
    const double a_var = bosegas::scattering_length_variational(v, rtilde);

    bosegas::Table t;
    t.columns = {"r", "omega", "g"};
    for (std::size_t i = 0; i < sol.grid.nodes.size(); ++i)
        t.rows.push_back({sol.grid.nodes[i], sol.omega[i], sol.g[i]});
    const std::string extra = "a_ode " + bosegas::format_full(a_ode) + " a_variational " +
                              bosegas::format_full(a_var) + " R " + bosegas::format_full(sol.R);
    bosegas::emit_table(t, cfg.out_path, cfg.canonical(), cfg.seed, extra);
}

void run_localize(const RunConfig& cfg) {
    const bosegas::LocalizationKernel kernel(cfg.ell, cfg.s);
    const bosegas::FMultiplier fm(kernel);
    const auto ps = parse_grid_spec(cfg.pgrid);
    std::vector<std::array<double, 3>> grid;
    grid.reserve(ps.size());
    for (double p : ps)
        grid.push_back({p, 0.0, 0.0});
    const auto bound = bosegas::fs_bound_check(fm, grid);

    const double cut = (5.0 / 6.0) / cfg.s;
    bosegas::Table t;
    t.columns = {"p", "F", "F_s", "quav"};
    for (const auto& p : grid) {
        const double q = cfg.ell * p[0];
        const double fs = q >= cut ? q * q - 0.5 / (cfg.s * cfg.s)
                                   : bound.fitted_c * cfg.s * q * q;
        t.rows.push_back({p[0], fm(p), fs, bosegas::quav_multiplier(p, cfg.ell)});
    }
    const std::string extra = std::string("passes ") + (bound.passes ? "1" : "0") +
                              " fitted_c " + bosegas::format_full(bound.fitted_c);
    bosegas::emit_table(t, cfg.out_path, cfg.canonical(), cfg.seed, extra);
}

void run_bog(const RunConfig& cfg) {
    bosegas::FockOracleSpec spec;
    spec.A = cfg.A;
    spec.B = cfg.B;
    spec.kappa = std::complex<double>(cfg.kappa, 0.0);
    spec.n_max = static_cast<std::size_t>(cfg.nmax);
    const double bound = bosegas::bog_bound(cfg.A, cfg.B, spec.kappa);
    const double oracle = bosegas::fock_oracle(spec);
    std::printf("# config %s seed %lu\n", bosegas::config_hash(cfg.canonical()).c_str(),
                cfg.seed);
    std::printf("bound %.17g\n", bound);
    std::printf("oracle %.17g\n", oracle);
    std::printf("gap %.17g\n", oracle - bound);
}

void run_lhy(const RunConfig& cfg) {
    const auto v = bosegas::load_potential(cfg.potential_path);
    if (cfg.rho_a3.empty())
        throw bosegas::ConfigError("lhy: --rho-a3 needs at least one value");
    const double a = bosegas::scattering_length_ode(v);
    bosegas::Table t;
    t.columns = {"rho_a3", "e_leading", "e_lhy_term"};
    for (double x : cfg.rho_a3) {
        if (!(x > 0.0))
            throw bosegas::ConfigError("lhy: rho-a3 values must be positive");
        const auto rep = bosegas::grand_canonical_assembly(v, x / (a * a * a), cfg.C);
        t.rows.push_back({x, rep.leading, rep.lhy_term});
    }
    bosegas::emit_table(t, cfg.out_path, cfg.canonical(), cfg.seed);
}

void run_energy(const RunConfig& cfg) {
    const auto v = bosegas::load_potential(cfg.potential_path);
    const auto rep = bosegas::grand_canonical_assembly(v, cfg.rho, cfg.C);

    nlohmann::json j;
    j["config"] = bosegas::config_hash(cfg.canonical());
    j["seed"] = cfg.seed;
    j["leading"] = rep.leading;
    j["quadratic_gap"] = rep.quadratic_gap;
    j["lhy_term"] = rep.lhy_term;
    j["budget"] = nlohmann::json::array();
    for (const auto& e : rep.budget)
        j["budget"].push_back({{"label", e.label}, {"value", e.value}, {"law", e.law}});
    j["constants_used"] = rep.constants_used;
    j["total"] = rep.total;

    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f)
        throw bosegas::IoError("energy: cannot open " + cfg.out_path);
    f << j.dump(2) << "\n";
    f.close();
    if (!f)
        throw bosegas::IoError("energy: write to " + cfg.out_path + " failed");
}

int run_verify_cmd(const RunConfig& cfg) {
    bosegas::VerifyOptions opt;
    opt.filter = cfg.filter;
    opt.seed = cfg.seed;
    opt.c_kin = cfg.c_kin;
    const auto results = bosegas::run_verify(opt);
    std::printf("# config %s seed %lu\n", bosegas::config_hash(cfg.canonical()).c_str(),
                cfg.seed);
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        passed += r.passed ? 1 : 0;
    }
    std::printf("passed %zu/%zu\n", passed, results.size());
    return bosegas::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilute Bose gas lower-bound toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    int rc = 0;

    auto* scatter = app.add_subcommand("scatter", "solve the zero-energy scattering problem");
    scatter->add_option("--potential", cfg.potential_path, "potential JSON file")->required();
    scatter->add_option("--rtilde", cfg.rtilde, "variational comparison radius");
    scatter->add_option("--out", cfg.out_path, "output CSV")->required();
    scatter->add_option("--seed", cfg.seed, "seed recorded in the header");
    scatter->callback([&] {
        cfg.subcommand = "scatter";
        run_scatter(cfg);
    });

    auto* localize = app.add_subcommand("localize", "tabulate the kinetic localization symbol");
    localize->add_option("--s", cfg.s, "bump width");
    localize->add_option("--ell", cfg.ell, "box scale");
    localize->add_option("--pgrid", cfg.pgrid, "momentum grid lo:hi:n");
    localize->add_option("--out", cfg.out_path, "output CSV")->required();
    localize->add_option("--seed", cfg.seed, "seed recorded in the header");
    localize->callback([&] {
        cfg.subcommand = "localize";
        run_localize(cfg);
    });

    auto* bog = app.add_subcommand("bog", "two-mode pairing bound against the Fock oracle");
    bog->add_option("--A", cfg.A, "diagonal coefficient");
    bog->add_option("--B", cfg.B, "pairing coefficient");
    bog->add_option("--kappa", cfg.kappa, "linear forcing");
    bog->add_option("--nmax", cfg.nmax, "occupation truncation");
    bog->add_option("--seed", cfg.seed, "seed recorded in the header");
    bog->callback([&] {
        cfg.subcommand = "bog";
        run_bog(cfg);
    });

    auto* lhy = app.add_subcommand("lhy", "second-order correction along a dilution curve");
    lhy->add_option("--potential", cfg.potential_path, "potential JSON file")->required();
    lhy->add_option("--rho-a3", cfg.rho_a3, "dilution parameters rho a^3")
        ->required()
        ->delimiter(',');
    lhy->add_option("--C", cfg.C, "allowance constant");
    lhy->add_option("--out", cfg.out_path, "output CSV")->required();
    lhy->add_option("--seed", cfg.seed, "seed recorded in the header");
    lhy->callback([&] {
        cfg.subcommand = "lhy";
        run_lhy(cfg);
    });

    auto* energy = app.add_subcommand("energy", "assembled lower bound with itemized budget");
    energy->add_option("--potential", cfg.potential_path, "potential JSON file")->required();
    energy->add_option("--rho", cfg.rho, "density")->required();
    energy->add_option("--C", cfg.C, "allowance constant");
    energy->add_option("--out", cfg.out_path, "output JSON")->required();
    energy->add_option("--seed", cfg.seed, "seed recorded in the header");
    energy->callback([&] {
        cfg.subcommand = "energy";
        run_energy(cfg);
    });

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--filter", cfg.filter, "only checks whose name contains this");
    verify->add_option("--seed", cfg.seed, "seed for randomized draws");
    verify->add_option("--c-kin", cfg.c_kin, "kinetic cutoff override (0 disables the cutoff)");
    verify->callback([&] {
        cfg.subcommand = "verify";
        rc = run_verify_cmd(cfg);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help is fine, bad flags are a config error
    } catch (const bosegas::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return rc;
}
