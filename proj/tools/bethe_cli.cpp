// Copyright 2026 The bethe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end: verification runs, scalar products, Bethe roots,
// norms, and report conversion.

#include "bethe/bethe.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using bethe::cplx;
using nlohmann::json;

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Flags {
    std::string config;
    std::string variant;
    int sites = 0;
    int magnons = 0;
    std::string eta;
    std::string xi;
    std::uint64_t seed = 0;
    int draws = 0;
    std::string tol;
    std::string checks;
    std::string out;
    std::string format = "json";
    bool unsafe_caps = false;
    std::string input;

    CLI::Option *o_variant = nullptr;
    CLI::Option *o_sites = nullptr;
    CLI::Option *o_magnons = nullptr;
    CLI::Option *o_eta = nullptr;
    CLI::Option *o_xi = nullptr;
    CLI::Option *o_seed = nullptr;
    CLI::Option *o_draws = nullptr;
    CLI::Option *o_tol = nullptr;
    CLI::Option *o_checks = nullptr;
    CLI::Option *o_out = nullptr;
    CLI::Option *o_format = nullptr;
};

void add_model_flags(CLI::App *app, Flags &f) {
    app->add_option("--config", f.config, "JSON file mirroring these flags")
        ->check(CLI::ExistingFile);
    f.o_variant = app->add_option("--variant", f.variant,
                                  "rational (xxx) or trigonometric (xxz)");
    f.o_sites = app->add_option("--sites", f.sites, "chain length N");
    f.o_magnons = app->add_option("--magnons", f.magnons, "flipped spins M");
    f.o_eta = app->add_option("--eta", f.eta, "crossing parameter as re,im");
    f.o_xi = app->add_option(
        "--xi", f.xi, "random | homogeneous | re,im;re,im;... (one per site)");
    f.o_seed = app->add_option("--seed", f.seed, "64-bit RNG seed");
    f.o_draws = app->add_option("--draws", f.draws, "random draws per check");
    f.o_out = app->add_option("--out", f.out, "output file ('-' for stdout)");
    f.o_format = app->add_option("--format", f.format, "json or tsv")
                     ->check(CLI::IsMember({"json", "tsv"}));
    app->add_flag("--unsafe-caps", f.unsafe_caps,
                  "allow N > 12 for oracle checks and M > 5 for subset sums");
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

/// File values first, then every flag given on the command line.
bethe::RunConfig build_config(const Flags &f) {
    bethe::RunConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception &e) {
            throw bethe::Error("config file: " + std::string(e.what()));
        }
        bethe::apply_json(j, c);
    }
    if (f.o_variant->count() > 0) {
        c.variant = bethe::parse_variant(f.variant);
    }
    if (f.o_sites->count() > 0) {
        c.n_sites = f.sites;
    }
    if (f.o_magnons->count() > 0) {
        c.n_magnons = f.magnons;
    }
    if (f.o_eta->count() > 0) {
        c.eta = bethe::parse_complex(f.eta);
    }
    if (f.o_xi->count() > 0) {
        bethe::apply_json(json{{"xi", f.xi}}, c);
    }
    if (f.o_seed->count() > 0) {
        c.seed = f.seed;
    }
    if (f.o_draws->count() > 0) {
        c.draws = f.draws;
    }
    if (f.o_tol && f.o_tol->count() > 0) {
        // "1e-9" sets every check; "name=1e-9,other=1e-6" sets named ones
        for (const auto &item : split(f.tol, ',')) {
            const auto eq = item.find('=');
            try {
                if (eq == std::string::npos) {
                    for (const auto &name : bethe::all_check_names()) {
                        c.tolerances[name] = std::stod(item);
                    }
                } else {
                    c.tolerances[item.substr(0, eq)] =
                        std::stod(item.substr(eq + 1));
                }
            } catch (const std::invalid_argument &) {
                throw bethe::Error("cannot parse tolerance '" + item + "'");
            }
        }
    }
    if (f.o_checks && f.o_checks->count() > 0) {
        c.checks = f.checks == "all" ? bethe::all_check_names()
                                     : split(f.checks, ',');
        if (f.checks == "none") {
            c.checks.clear();
        }
    }
    if (f.o_out->count() > 0) {
        c.out = f.out;
    }
    if (f.unsafe_caps) {
        c.unsafe_caps = true;
    }
    c.validate();
    return c;
}

bethe::ModelParams model_from(const bethe::RunConfig &c, bethe::Rng &rng) {
    bethe::ModelParams p{c.variant, c.eta, {}};
    switch (c.xi_mode) {
    case bethe::XiMode::random:
        p.xi = bethe::sample_separated(rng, c.n_sites, c.eta);
        break;
    case bethe::XiMode::homogeneous:
        p.xi.assign(c.n_sites, 0.0);
        break;
    case bethe::XiMode::explicit_values:
        p.xi = c.xi;
        break;
    }
    p.validate();
    return p;
}

void require_oracle_cap(const bethe::RunConfig &c) {
    if (!c.unsafe_caps && c.n_sites > bethe::kOracleSiteCap) {
        throw bethe::Error("N > " + std::to_string(bethe::kOracleSiteCap) +
                           " needs --unsafe-caps");
    }
}

void require_rational(const bethe::RunConfig &c) {
    if (c.variant != bethe::Variant::rational) {
        throw bethe::Error("closed forms are implemented for the rational chain");
    }
}

json set_to_json(std::span<const cplx> v) {
    json out = json::array();
    for (const cplx z : v) {
        out.push_back(bethe::complex_to_json(z));
    }
    return out;
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!(out << text)) {
        throw bethe::Error("cannot write '" + path + "'");
    }
}

json model_json(const bethe::ModelParams &p) {
    return {{"variant", bethe::to_string(p.variant)},
            {"eta", bethe::complex_to_json(p.eta)},
            {"xi", set_to_json(p.xi)}};
}

int cmd_verify(const Flags &f) {
    const auto config = build_config(f);
    const auto report = bethe::run_suite(config);
    bethe::emit_report(report, bethe::parse_format(f.format), config.out);
    return report.all_passed() ? 0 : kExitFailed;
}

int cmd_bae(const Flags &f) {
    const auto config = build_config(f);
    bethe::Rng rng(config.seed);
    const auto p = model_from(config, rng);
    bethe::BaeOptions opt;
    opt.seed = rng();
    const auto roots = bethe::solve_bae(p, config.n_magnons, opt);
    json j{{"model", model_json(p)},
           {"roots", set_to_json(roots.roots)},
           {"residual", roots.residual}};
    if (config.n_sites <= bethe::kOracleSiteCap || config.unsafe_caps) {
        const cplx probe = bethe::sample_separated(rng, 1, p.eta, roots.roots)[0];
        j["eigen_defect"] = bethe::check_eigenstate(roots, probe);
        j["eigenvalue"] =
            bethe::complex_to_json(bethe::transfer_eigenvalue(p, probe, roots.roots));
        j["probe"] = bethe::complex_to_json(probe);
    }
    write_output(config.out, j.dump(2) + "\n");
    return 0;
}

int brute_cap(const bethe::RunConfig &c) {
    return c.unsafe_caps ? 30 : bethe::kBruteForceSiteCap;
}

int cmd_norm(const Flags &f) {
    const auto config = build_config(f);
    require_rational(config);
    require_oracle_cap(config);
    bethe::Rng rng(config.seed);
    const auto p = model_from(config, rng);
    bethe::BaeOptions opt;
    opt.seed = rng();
    const auto roots = bethe::solve_bae(p, config.n_magnons, opt);
    const auto norm = bethe::gaudin_norm(roots);
    const cplx brute = bethe::brute_force_scalar_product(
        p, roots.roots, roots.roots, brute_cap(config));
    const json j{{"model", model_json(p)},
                 {"roots", set_to_json(roots.roots)},
                 {"norm", bethe::complex_to_json(norm.value)},
                 {"condition_hint", norm.condition_hint},
                 {"brute_force", bethe::complex_to_json(brute)}};
    write_output(config.out, j.dump(2) + "\n");
    return 0;
}

int cmd_scalar_product(const Flags &f, bool on_shell) {
    const auto config = build_config(f);
    require_rational(config);
    require_oracle_cap(config);
    bethe::Rng rng(config.seed);
    const auto p = model_from(config, rng);
    const int m = config.n_magnons;
    json j{{"model", model_json(p)}};
    bethe::ScalarProductSpec spec;
    spec.a_function = bethe::model_a_function(p);
    if (on_shell) {
        bethe::BaeOptions opt;
        opt.seed = rng();
        const auto roots = bethe::solve_bae(p, m, opt);
        spec.ts = roots.roots;
    } else {
        spec.ts = bethe::sample_separated(rng, m, p.eta, p.xi);
    }
    bethe::SpectralSet avoid = spec.ts;
    avoid.insert(avoid.end(), p.xi.begin(), p.xi.end());
    spec.lambdas = bethe::sample_separated(rng, m, p.eta, avoid);
    j["lambdas"] = set_to_json(spec.lambdas);
    j["ts"] = set_to_json(spec.ts);
    spec.validate();
    j["brute_force"] =
        bethe::complex_to_json(bethe::brute_force_scalar_product(
            p, spec.lambdas, spec.ts, brute_cap(config)));
    const int cap = config.unsafe_caps ? 30 : bethe::kSubsetMagnonCap;
    if (m <= cap) {
        j["subset_sum"] =
            bethe::complex_to_json(bethe::scalar_product_sum(spec, p.eta, cap));
    }
    if (on_shell) {
        const auto det = bethe::slavnov_determinant(spec.lambdas, spec.ts, p.eta,
                                                    spec.a_function);
        j["determinant"] = bethe::complex_to_json(det.value);
        j["condition_hint"] = det.condition_hint;
        if (m <= cap) {
            j["bethe_sum"] = bethe::complex_to_json(bethe::scalar_product_bethe_sum(
                spec.lambdas, spec.ts, p.eta, spec.a_function, cap));
        }
    }
    write_output(config.out, j.dump(2) + "\n");
    return 0;
}

int cmd_report(const Flags &f) {
    std::ifstream in(f.input);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw bethe::Error("report: " + std::string(e.what()));
    }
    const auto report = bethe::report_from_json(j);
    bethe::emit_report(report, bethe::parse_format(f.format), f.out);
    return report.all_passed() ? 0 : kExitFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Inhomogeneous six-vertex chain: scalar products and checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", bethe::kToolVersion);

    Flags verify_flags;
    auto *verify = app.add_subcommand("verify", "run the verification suite");
    add_model_flags(verify, verify_flags);
    verify_flags.o_tol = verify->add_option(
        "--tol", verify_flags.tol, "tolerance for all checks, or name=tol,...");
    verify_flags.o_checks = verify->add_option(
        "--checks", verify_flags.checks, "comma-separated names, all, or none");

    Flags sp_flags;
    bool on_shell = false;
    auto *sp = app.add_subcommand("scalar-product",
                                  "<0|C(lambda)...B(t)...|0> by every available path");
    add_model_flags(sp, sp_flags);
    sp->add_flag("--bethe", on_shell, "take {t} as solved Bethe roots");

    Flags bae_flags;
    auto *bae = app.add_subcommand("bae", "solve the Bethe equations");
    add_model_flags(bae, bae_flags);

    Flags norm_flags;
    auto *norm = app.add_subcommand("norm", "norm of a Bethe state");
    add_model_flags(norm, norm_flags);

    Flags report_flags;
    auto *report = app.add_subcommand("report", "re-emit a saved JSON report");
    report->add_option("--in", report_flags.input, "report JSON")
        ->required()
        ->check(CLI::ExistingFile);
    report->add_option("--out", report_flags.out, "output file ('-' for stdout)");
    report->add_option("--format", report_flags.format, "json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            return cmd_verify(verify_flags);
        }
        if (sp->parsed()) {
            return cmd_scalar_product(sp_flags, on_shell);
        }
        if (bae->parsed()) {
            return cmd_bae(bae_flags);
        }
        if (norm->parsed()) {
            return cmd_norm(norm_flags);
        }
        if (report->parsed()) {
            return cmd_report(report_flags);
        }
    } catch (const bethe::ConvergenceError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
