#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperfrac/checks.hpp"
#include "hyperfrac/errors.hpp"
#include "hyperfrac/kernels.hpp"
#include "hyperfrac/parallel.hpp"
#include "hyperfrac/solver.hpp"
#include "hyperfrac/spectral.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    int n = 3;
    double s = 0.5;
    double p = 2.0;
    double rho_min = 1e-3;
    double rho_max = 15.0;
    int nodes = 200;
    std::string spacing = "mixed";
    double lambda = 1.0;
    double lambda_max = 20.0;
    double tol = 1e-3;
    int max_iter = 400;
    std::string format = "csv";
    std::string out;
    bool allow_critical = false;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

hyperfrac::GridSpacing parse_spacing(const std::string& s) {
    if (s == "log") return hyperfrac::GridSpacing::Log;
    if (s == "uniform") return hyperfrac::GridSpacing::Uniform;
    if (s == "mixed") return hyperfrac::GridSpacing::Mixed;
    throw hyperfrac::DomainError("unknown spacing: " + s);
}

void write_table(const RunConfig& cfg, const std::string& kind,
                 const std::string& xname, const std::vector<double>& xs,
                 const std::vector<double>& ys) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path " + cfg.out);
    if (cfg.format == "csv") {
        f << xname << ",value\n";
        for (size_t i = 0; i < xs.size(); ++i)
            f << fmt17(xs[i]) << "," << fmt17(ys[i]) << "\n";
    } else {
        json j;
        j["kind"] = kind;
        j["params"] = {{"n", cfg.n}, {"s", cfg.s}, {"p", cfg.p}};
        json rows = json::array();
        for (size_t i = 0; i < xs.size(); ++i) rows.push_back({xs[i], ys[i]});
        j["columns"] = {xname, "value"};
        j["rows"] = rows;
        f << j.dump(2) << "\n";
    }
}

int cmd_tabulate(const RunConfig& cfg, const std::string& kind) {
    using namespace hyperfrac;
    std::vector<double> xs, ys;
    if (kind == "density") {
        if (cfg.nodes < 2) throw DomainError("empty grid request");
        for (int i = 0; i < cfg.nodes; ++i) {
            double lam = cfg.lambda_max * i / (cfg.nodes - 1.0);
            xs.push_back(lam);
            ys.push_back(spectral::plancherel_density(cfg.n, lam));
        }
        write_table(cfg, kind, "lambda", xs, ys);
        return kExitOk;
    }
    xs = make_grid(cfg.rho_min, cfg.rho_max, cfg.nodes, parse_spacing(cfg.spacing));
    ProblemParams params(cfg.n, cfg.s, cfg.p);
    if (kind == "green") {
        auto g = kernels::shared_green(params);
        for (double r : xs) ys.push_back(r > 0.0 ? (*g)(r) : 0.0);
    } else if (kind == "kernel") {
        auto k = kernels::shared_kernel(params);
        for (double r : xs) ys.push_back(r > 0.0 ? (*k)(r) : 0.0);
    } else if (kind == "spherical") {
        for (double r : xs) ys.push_back(spectral::spherical_function(cfg.n, cfg.lambda, r));
    } else {
        throw DomainError("unknown tabulation kind: " + kind);
    }
    write_table(cfg, kind, "rho", xs, ys);
    return kExitOk;
}

int cmd_check(const RunConfig& cfg, const std::string& suite) {
    using namespace hyperfrac;
    ProblemParams params(cfg.n, cfg.s, cfg.p);
    std::vector<checks::Claim> claims;
    if (suite == "asymptotics") {
        claims = checks::asymptotics(params);
        auto agree = checks::spectral_agreement(params);
        claims.push_back(agree);
    } else if (suite == "inversion") {
        claims.push_back(checks::inversion(params, cfg.tol));
    } else if (suite == "plancherel") {
        claims = checks::transform_roundtrip(cfg.n, std::min(cfg.tol, 1e-4));
    } else if (suite == "maxprinciple") {
        claims = checks::maxprinciple(params, 20, 777);
    } else if (suite == "hls") {
        if (!(cfg.lambda > 0.0 && cfg.lambda < cfg.n))
            throw DomainError("hls exponent must lie in (0, n)");
        claims = checks::hls(cfg.n, cfg.lambda);
    } else {
        throw DomainError("unknown check suite: " + suite);
    }
    json j;
    j["suite"] = suite;
    j["params"] = {{"n", cfg.n}, {"s", cfg.s}, {"p", cfg.p}};
    json arr = json::array();
    for (const auto& c : claims)
        arr.push_back({{"name", c.name},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    j["claims"] = arr;
    bool ok = checks::all_pass(claims);
    j["all_pass"] = ok;
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        f << j.dump(2) << "\n";
    }
    std::cout << j.dump(2) << "\n";
    return ok ? kExitOk : kExitNumerical;
}

int cmd_solve(const RunConfig& cfg) {
    using namespace hyperfrac;
    ProblemParams params(cfg.n, cfg.s, cfg.p);
    if (params.p > params.p_star() + 1e-12)
        throw DomainError("supercritical p: the admissible window is 1 < p <= " +
                          std::to_string(params.p_star()));
    auto grid = make_grid(cfg.rho_min, cfg.rho_max, cfg.nodes,
                          parse_spacing(cfg.spacing));
    solver::SolveReport rep =
        solver::picard_solve(params, grid, cfg.tol, cfg.max_iter);

    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        if (cfg.format == "csv") {
            f << "rho,u\n";
            for (size_t i = 0; i < grid.size(); ++i)
                f << fmt17(grid[i]) << "," << fmt17(rep.profile.values()[i]) << "\n";
        } else {
            json j;
            json rows = json::array();
            for (size_t i = 0; i < grid.size(); ++i)
                rows.push_back({grid[i], rep.profile.values()[i]});
            j["columns"] = {"rho", "u"};
            j["rows"] = rows;
            f << j.dump(2) << "\n";
        }
    }
    json rj;
    rj["amplitude"] = rep.amplitude;
    rj["iterations"] = rep.iterations;
    rj["residual"] = rep.residual;
    rj["monotone"] = rep.monotone_flag;
    rj["converged"] = rep.converged;
    if (rep.critical_flagged && !cfg.allow_critical)
        rj["warning"] = "critical exponent: convergence not guaranteed";
    std::ofstream rf(cfg.out.empty() ? "solve_report.json" : cfg.out + ".report.json",
                     std::ios::binary);
    rf << rj.dump(2) << "\n";
    std::cout << rj.dump(2) << "\n";
    return rep.converged ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    hyperfrac::apply_thread_cap();
    CLI::App app{"fractional Laplacian toolkit on hyperbolic space"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* c) {
        c->add_option("--n", cfg.n, "dimension (>= 2)");
        c->add_option("--s", cfg.s, "fractional order in (0,1)");
        c->add_option("--p", cfg.p, "nonlinearity exponent");
        c->add_option("--rho-min", cfg.rho_min, "grid inner radius");
        c->add_option("--rho-max", cfg.rho_max, "grid outer radius");
        c->add_option("--nodes", cfg.nodes, "grid size");
        c->add_option("--spacing", cfg.spacing, "log | uniform | mixed");
        c->add_option("--lambda", cfg.lambda, "spectral parameter / HLS exponent");
        c->add_option("--lambda-max", cfg.lambda_max, "spectral truncation");
        c->add_option("--tol", cfg.tol, "tolerance");
        c->add_option("--max-iter", cfg.max_iter, "iteration cap");
        c->add_option("--format", cfg.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--out", cfg.out, "output path");
    };

    std::string kind = "green", suite = "asymptotics";
    CLI::App* tab = app.add_subcommand("tabulate", "write kernel/function tables");
    add_common(tab);
    tab->add_option("--kind", kind, "green | kernel | spherical | density");
    CLI::App* chk = app.add_subcommand("check", "run verification suites");
    add_common(chk);
    chk->add_option("--suite", suite,
                    "asymptotics | inversion | plancherel | maxprinciple | hls");
    CLI::App* slv = app.add_subcommand("solve", "fixed-point solve of u = G * u^p");
    add_common(slv);
    slv->add_flag("--allow-critical", cfg.allow_critical,
                  "run at the critical exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (tab->parsed()) {
            if (cfg.out.empty()) {
                std::cerr << "tabulate needs --out PATH\n";
                return kExitUsage;
            }
            return cmd_tabulate(cfg, kind);
        }
        if (chk->parsed()) return cmd_check(cfg, suite);
        return cmd_solve(cfg);
    } catch (const hyperfrac::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hyperfrac::ShapeError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
