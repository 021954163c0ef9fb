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
/**
 * @file
 * Batch verification runs: configuration, seeded parameter generation, the
 * named checks, and JSON/TSV reports.
 *
 * Every check draws from its own generator seeded by (config seed, check
 * name), so a check's result does not depend on which other checks run.
 */
#pragma once

#include "determinants.hpp"
#include "factorizing.hpp"
#include "sampling.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bethe {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kReportSchema = "bethe.verification/1";

inline constexpr int kOracleSiteCap = 12;
inline constexpr int kSubsetMagnonCap = 5;

enum class XiMode { random, explicit_values, homogeneous };

inline std::string to_string(XiMode m) {
    switch (m) {
    case XiMode::random:
        return "random";
    case XiMode::explicit_values:
        return "explicit";
    case XiMode::homogeneous:
        return "homogeneous";
    }
    return "?";
}

inline XiMode parse_xi_mode(const std::string &s) {
    if (s == "random") {
        return XiMode::random;
    }
    if (s == "explicit") {
        return XiMode::explicit_values;
    }
    if (s == "homogeneous") {
        return XiMode::homogeneous;
    }
    throw Error("unknown xi mode '" + s + "'");
}

inline Variant parse_variant(const std::string &s) {
    if (s == "rational" || s == "xxx") {
        return Variant::rational;
    }
    if (s == "trigonometric" || s == "xxz") {
        return Variant::trigonometric;
    }
    throw Error("unknown variant '" + s + "'");
}

/// Parses "re,im" or "re".
inline cplx parse_complex(const std::string &s) {
    const auto comma = s.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used != s.size()) {
                throw Error("");
            }
            return {re, 0.0};
        }
        const std::string a = s.substr(0, comma);
        const std::string b = s.substr(comma + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) {
            throw Error("");
        }
        const double im = std::stod(b, &used);
        if (used != b.size()) {
            throw Error("");
        }
        return {re, im};
    } catch (const std::exception &) {
        throw Error("cannot parse complex number '" + s + "' (expected re,im)");
    }
}

/// Parses "re,im;re,im;...".
inline SpectralSet parse_complex_list(const std::string &s) {
    SpectralSet out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (!item.empty()) {
            out.push_back(parse_complex(item));
        }
    }
    return out;
}

/// All check names, in report order.
inline const std::vector<std::string> &all_check_names() {
    static const std::vector<std::string> names{
        "column-reduction", "commutation", "f-basis",   "factorizing",
        "gaudin",           "orthogonality", "phi-m",   "residue",
        "rtt",              "scalar-sum",  "slavnov",   "yang-baxter"};
    return names;
}

inline double default_tolerance(const std::string &check) {
    static const std::map<std::string, double> tol{
        {"column-reduction", 1e-10}, {"commutation", 1e-11},
        {"f-basis", 1e-10},          {"factorizing", 1e-10},
        {"gaudin", 1e-7},            {"orthogonality", 1e-8},
        {"phi-m", 1e-9},             {"residue", 1e-6},
        {"rtt", 1e-11},              {"scalar-sum", 1e-9},
        {"slavnov", 1e-7},           {"yang-baxter", 1e-12}};
    return tol.at(check);
}

struct RunConfig {
    Variant variant = Variant::rational;
    int n_sites = 4;
    int n_magnons = 2;
    cplx eta = 1.0;
    XiMode xi_mode = XiMode::random;
    SpectralSet xi;
    std::uint64_t seed = 0;
    /// Random draws per check.
    int draws = 5;
    std::map<std::string, double> tolerances;
    std::vector<std::string> checks = all_check_names();
    std::string out;
    bool unsafe_caps = false;

    [[nodiscard]] double tolerance(const std::string &check) const {
        const auto it = tolerances.find(check);
        return it == tolerances.end() ? default_tolerance(check) : it->second;
    }

    void validate() const {
        if (n_sites < 1 || n_sites > 30) {
            throw Error("config: sites must be in [1, 30]");
        }
        if (n_magnons < 0 || n_magnons > n_sites) {
            throw Error("config: magnons must be in [0, sites]");
        }
        if (draws < 1) {
            throw Error("config: draws must be positive");
        }
        if (xi_mode == XiMode::explicit_values &&
            static_cast<int>(xi.size()) != n_sites) {
            throw Error("config: explicit xi needs exactly `sites` values");
        }
        const auto &known = all_check_names();
        for (const auto &c : checks) {
            if (std::find(known.begin(), known.end(), c) == known.end()) {
                throw Error("config: unknown check '" + c + "'");
            }
        }
        for (const auto &[name, tol] : tolerances) {
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                throw Error("config: tolerance for unknown check '" + name + "'");
            }
            if (!(tol > 0.0) || !std::isfinite(tol)) {
                throw Error("config: tolerances must be positive");
            }
        }
        ModelParams{variant, eta, SpectralSet(n_sites, 0.0)}.validate();
    }
};

inline nlohmann::json complex_to_json(cplx z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

inline cplx complex_from_json(const nlohmann::json &j) {
    if (j.is_string()) {
        return parse_complex(j.get<std::string>());
    }
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw Error("expected a complex number as [re, im] or \"re,im\"");
}

inline nlohmann::json to_json(const RunConfig &c) {
    nlohmann::json xi = nlohmann::json::array();
    for (const cplx z : c.xi) {
        xi.push_back(complex_to_json(z));
    }
    nlohmann::json tol = nlohmann::json::object();
    for (const auto &[k, v] : c.tolerances) {
        tol[k] = v;
    }
    return {{"variant", to_string(c.variant)},
            {"sites", c.n_sites},
            {"magnons", c.n_magnons},
            {"eta", complex_to_json(c.eta)},
            {"xi_mode", to_string(c.xi_mode)},
            {"xi", xi},
            {"seed", c.seed},
            {"draws", c.draws},
            {"tolerances", tol},
            {"checks", c.checks},
            {"out", c.out},
            {"unsafe_caps", c.unsafe_caps}};
}

/// Reads the keys present in `j` into `c`; absent keys keep their value.
inline void apply_json(const nlohmann::json &j, RunConfig &c) {
    try {
        if (j.contains("variant")) {
            c.variant = parse_variant(j["variant"].get<std::string>());
        }
        if (j.contains("sites")) {
            c.n_sites = j["sites"].get<int>();
        }
        if (j.contains("magnons")) {
            c.n_magnons = j["magnons"].get<int>();
        }
        if (j.contains("eta")) {
            c.eta = complex_from_json(j["eta"]);
        }
        if (j.contains("xi_mode")) {
            c.xi_mode = parse_xi_mode(j["xi_mode"].get<std::string>());
        }
        if (j.contains("xi")) {
            const auto &x = j["xi"];
            if (x.is_string()) {
                const auto s = x.get<std::string>();
                if (s == "random" || s == "homogeneous") {
                    c.xi_mode = parse_xi_mode(s);
                } else {
                    c.xi = parse_complex_list(s);
                    c.xi_mode = XiMode::explicit_values;
                }
            } else {
                c.xi.clear();
                for (const auto &z : x) {
                    c.xi.push_back(complex_from_json(z));
                }
                if (!c.xi.empty()) {
                    c.xi_mode = XiMode::explicit_values;
                }
            }
        }
        if (j.contains("seed")) {
            c.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("draws")) {
            c.draws = j["draws"].get<int>();
        }
        if (j.contains("tolerances")) {
            for (const auto &[k, v] : j["tolerances"].items()) {
                c.tolerances[k] = v.get<double>();
            }
        }
        if (j.contains("checks")) {
            c.checks = j["checks"].get<std::vector<std::string>>();
        }
        if (j.contains("out")) {
            c.out = j["out"].get<std::string>();
        }
        if (j.contains("unsafe_caps")) {
            c.unsafe_caps = j["unsafe_caps"].get<bool>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(std::string("config: ") + e.what());
    }
}

enum class CheckStatus {
    pass,
    fail,
    skipped_cap,
    skipped_variant,
    skipped_xi,
    skipped_magnons
};

inline std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::skipped_cap:
        return "skipped: cap";
    case CheckStatus::skipped_variant:
        return "skipped: variant";
    case CheckStatus::skipped_xi:
        return "skipped: distinct xi";
    case CheckStatus::skipped_magnons:
        return "skipped: bethe states";
    }
    return "?";
}

inline CheckStatus parse_status(const std::string &s) {
    for (auto st : {CheckStatus::pass, CheckStatus::fail, CheckStatus::skipped_cap,
                    CheckStatus::skipped_variant, CheckStatus::skipped_xi,
                    CheckStatus::skipped_magnons}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    throw Error("unknown check status '" + s + "'");
}

struct CheckRecord {
    std::string name;
    CheckStatus status = CheckStatus::skipped_cap;
    std::string inputs_digest;
    std::map<std::string, cplx> values;
    double defect = 0.0;
    double tolerance = 0.0;
    double wall_time_ms = 0.0;
    std::string note;

    [[nodiscard]] bool executed() const {
        return status == CheckStatus::pass || status == CheckStatus::fail;
    }
};

struct VerificationReport {
    std::string schema = kReportSchema;
    std::string tool_version = kToolVersion;
    RunConfig config;
    std::vector<CheckRecord> checks;

    [[nodiscard]] int count(CheckStatus s) const {
        return static_cast<int>(std::count_if(
            checks.begin(), checks.end(),
            [s](const CheckRecord &r) { return r.status == s; }));
    }
    [[nodiscard]] int skipped() const {
        return static_cast<int>(checks.size()) - count(CheckStatus::pass) -
               count(CheckStatus::fail);
    }
    [[nodiscard]] bool all_passed() const {
        return count(CheckStatus::fail) == 0;
    }
};

namespace detail {

/// 64-bit FNV-1a; stable across platforms, used for seeds and digests.
class Fnv1a {
  public:
    void bytes(const void *data, std::size_t n) {
        const auto *p = static_cast<const unsigned char *>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ = (h_ ^ p[i]) * 0x100000001b3ULL;
        }
    }
    void add(double x) { bytes(&x, sizeof x); }
    void add(cplx z) {
        add(z.real());
        add(z.imag());
    }
    void add(std::string_view s) { bytes(s.data(), s.size()); }
    void add(std::uint64_t x) { bytes(&x, sizeof x); }
    [[nodiscard]] std::uint64_t value() const { return h_; }
    [[nodiscard]] std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(h_));
        return buf;
    }

  private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline double rel_err(cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Per-check working context: rng, digest of every input drawn, outputs.
struct CheckContext {
    const RunConfig &config;
    Rng rng;
    Fnv1a digest;
    std::map<std::string, cplx> values;
    double defect = 0.0;
    std::string note;

    void record(std::span<const cplx> inputs) {
        for (const cplx z : inputs) {
            digest.add(z);
        }
    }
    void record(const StateVector &v) { record(v.amplitudes()); }
    void worst(double d) { defect = std::max(defect, d); }
    [[nodiscard]] int brute_cap() const {
        return config.unsafe_caps ? 30 : kBruteForceSiteCap;
    }
    void value(const std::string &k, cplx v) { values[k] = v; }

    ModelParams model() {
        const int n = config.n_sites;
        ModelParams p{config.variant, config.eta, {}};
        switch (config.xi_mode) {
        case XiMode::random:
            p.xi = sample_separated(rng, n, config.eta);
            break;
        case XiMode::homogeneous:
            p.xi.assign(n, 0.0);
            break;
        case XiMode::explicit_values:
            p.xi = config.xi;
            break;
        }
        p.validate();
        record(p.xi);
        return p;
    }

    /// `count` parameters away from `avoid` and from each other.
    SpectralSet params(std::size_t count, std::span<const cplx> avoid = {}) {
        auto out = sample_separated(rng, count, config.eta, avoid);
        record(out);
        return out;
    }

    BetheRoots roots(const ModelParams &p, int m, std::uint64_t salt = 0) {
        BaeOptions opt;
        opt.seed = rng() ^ salt;
        auto r = solve_bae(p, m, opt);
        record(r.roots);
        for (std::size_t k = 0; k < r.roots.size(); ++k) {
            value("root_" + std::to_string(k + 1), r.roots[k]);
        }
        return r;
    }
};

inline AFunction test_a_function() {
    return [](cplx x) { return (x * x + 2.0) / (x * x + 3.0); };
}

inline void check_yang_baxter(CheckContext &ctx) {
    const ModelParams p{ctx.config.variant, ctx.config.eta, {0.0, 0.0, 0.0}};
    for (int d = 0; d < ctx.config.draws; ++d) {
        const auto t = ctx.params(3);
        const StateVector v = random_state(ctx.rng, 3);
        ctx.record(v);
        StateVector lhs = v;
        apply_two_site_S_inplace(lhs, 2, 3, t[1], t[2], p);
        apply_two_site_S_inplace(lhs, 1, 3, t[0], t[2], p);
        apply_two_site_S_inplace(lhs, 1, 2, t[0], t[1], p);
        StateVector rhs = v;
        apply_two_site_S_inplace(rhs, 1, 2, t[0], t[1], p);
        apply_two_site_S_inplace(rhs, 1, 3, t[0], t[2], p);
        apply_two_site_S_inplace(rhs, 2, 3, t[1], t[2], p);
        ctx.worst((lhs - rhs).norm() / v.norm());
        StateVector back = apply_two_site_S(v, 1, 2, t[0], t[1], p);
        apply_two_site_S_inplace(back, 2, 1, t[1], t[0], p);
        ctx.worst((back - v).norm() / v.norm());
    }
}

inline void check_rtt(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    for (int d = 0; d < ctx.config.draws; ++d) {
        const auto tq = ctx.params(2, p.xi);
        const StateVector v = random_state(ctx.rng, p.n_sites() + 2);
        ctx.record(v);
        ctx.worst(rtt_defect(p, tq[0], tq[1], v));
    }
}

inline void check_commutation(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    for (int d = 0; d < ctx.config.draws; ++d) {
        const auto tq = ctx.params(2, p.xi);
        const StateVector v = random_state(ctx.rng, p.n_sites());
        ctx.record(v);
        ctx.worst(ab_commutation_defect(p, tq[0], tq[1], v));
        ctx.worst(same_entry_commutator_defect(p, EntryLabel::B, tq[0], tq[1], v));
        ctx.worst(same_entry_commutator_defect(p, EntryLabel::C, tq[0], tq[1], v));
    }
    // C(xi_n) B(xi_n)|0> = prod_{a != n} c(xi_a - xi_n) |0>
    const StateVector vac = StateVector::vacuum(p.n_sites());
    for (int n = 1; n <= p.n_sites(); ++n) {
        const cplx x = p.site_xi(n);
        const StateVector got = apply_C(p, x, apply_B(p, x, vac));
        cplx expect = 1.0;
        for (int a = 1; a <= p.n_sites(); ++a) {
            if (a != n) {
                expect *= weight(p, WeightKind::c, p.site_xi(a) - x);
            }
        }
        ctx.worst((got - expect * vac).norm() / std::max(1.0, std::abs(expect)));
    }
}

/// Up to `limit` occupation patterns of the M sector, chosen by the rng.
inline std::vector<SpinBasisIndex> sector_sample(CheckContext &ctx, int n, int m,
                                                 int limit) {
    std::vector<SpinBasisIndex> all;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        if (SpinBasisIndex{s}.particle_count() == m) {
            all.push_back(SpinBasisIndex{s});
        }
    }
    std::shuffle(all.begin(), all.end(), ctx.rng);
    if (static_cast<int>(all.size()) > limit) {
        all.resize(limit);
    }
    std::sort(all.begin(), all.end(),
              [](SpinBasisIndex a, SpinBasisIndex b) { return a.bits < b.bits; });
    return all;
}

inline void check_factorizing(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    const int n = p.n_sites();
    const int m = ctx.config.n_magnons;
    const FactorizingOperator o(p);
    const auto probe = ctx.params(1, p.xi)[0];
    for (const SpinBasisIndex s : sector_sample(ctx, n, m, ctx.config.draws)) {
        const StateVector basis = StateVector::basis(n, s);
        const StateVector ob = o.apply(basis);
        // O|n> = B(xi_{n_1}) ... B(xi_{n_M}) |0>
        SpectralSet xs;
        for (int site : s.positions()) {
            xs.push_back(p.site_xi(site));
        }
        const StateVector bstring = bethe_vector(p, xs);
        ctx.worst((ob - bstring).norm() / std::max(1.0, bstring.norm()));
        // triangularity
        for (std::uint64_t k = 0; k < ob.size(); ++k) {
            if (ob[k] != cplx{} && !dominates(SpinBasisIndex{k}, s)) {
                ctx.worst(1.0);
                ctx.note = "triangularity violated";
            }
        }
        // O~ O |n> = f_n |n>
        const cplx f = o.diagonal(s);
        const StateVector oo = o.apply_tilde(ob);
        ctx.worst((oo - f * basis).norm() / std::max(1.0, std::abs(f)));
        // O^{-1} A(t) O |n> = prod_{a unoccupied} c(xi_a - t) |n>
        cplx eig = 1.0;
        for (int a = 1; a <= n; ++a) {
            if (!s.occupied(a)) {
                eig *= weight(p, WeightKind::c, p.site_xi(a) - probe);
            }
        }
        const StateVector af = o.apply_inverse(apply_A(p, probe, ob));
        ctx.worst((af - eig * basis).norm() / std::max(1.0, std::abs(eig)));
    }
    for (int i = 1; i < n; ++i) {
        ctx.worst(check_factorization(p, i, 2, ctx.rng()));
    }
}

inline void check_f_basis(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    const int n = p.n_sites();
    const int m = ctx.config.n_magnons;
    const FactorizingOperator o(p);
    for (int d = 0; d < ctx.config.draws; ++d) {
        const cplx t = ctx.params(1, p.xi)[0];
        const StateVector v = random_sector_state(ctx.rng, n, m);
        ctx.record(v);
        const StateVector ov = o.apply(v);
        if (m < n) {
            const StateVector b = o.apply_inverse(apply_B(p, t, ov));
            const StateVector bf = f_basis_operator(p, EntryLabel::B, t).apply(v);
            ctx.worst((b - bf).norm() / std::max(1.0, bf.norm()));
        }
        if (m > 0) {
            const StateVector c = o.apply_inverse(apply_C(p, t, ov));
            const StateVector cf = f_basis_operator(p, EntryLabel::C, t).apply(v);
            ctx.worst((c - cf).norm() / std::max(1.0, cf.norm()));
        }
    }
    // prod B^F(xi_n) |0> = |{n}>
    for (const SpinBasisIndex s : sector_sample(ctx, n, m, ctx.config.draws)) {
        StateVector v = StateVector::vacuum(n);
        for (int site : s.positions()) {
            v = f_basis_operator(p, EntryLabel::B, p.site_xi(site)).apply(v);
        }
        ctx.worst((v - StateVector::basis(n, s)).norm());
    }
}

inline void check_phi_m(CheckContext &ctx) {
    const int m = std::max(ctx.config.n_magnons, 1);
    const cplx eta = ctx.config.eta;
    for (int d = 0; d < ctx.config.draws; ++d) {
        const auto xi = ctx.params(m);
        const auto t = ctx.params(m, xi);
        // matrix element of the reversed-argument monodromy: eta -> -eta
        const ModelParams chain{Variant::rational, -eta, xi};
        const cplx oracle =
            bethe_vector(chain, t)[SpinBasisIndex::packed_right(m, m)];
        const cplx closed = phi_m(xi, t, eta);
        ctx.worst(rel_err(closed, oracle));
        if (d == 0) {
            ctx.value("phi", closed);
            ctx.value("oracle", oracle);
        }
    }
}

inline void check_scalar_sum(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    const int m = ctx.config.n_magnons;
    for (int d = 0; d < ctx.config.draws; ++d) {
        ScalarProductSpec spec;
        spec.lambdas = ctx.params(m, p.xi);
        SpectralSet avoid = p.xi;
        avoid.insert(avoid.end(), spec.lambdas.begin(), spec.lambdas.end());
        spec.ts = ctx.params(m, avoid);
        spec.a_function = model_a_function(p);
        const cplx brute = brute_force_scalar_product(p, spec.lambdas, spec.ts,
                                                      ctx.brute_cap());
        const cplx sum = scalar_product_sum(spec, p.eta, kDefaultMaxSubsetM);
        ctx.worst(rel_err(sum, brute));
        if (d == 0) {
            ctx.value("brute_force", brute);
            ctx.value("subset_sum", sum);
        }
    }
}

inline void check_slavnov(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    const int m = ctx.config.n_magnons;
    const BetheRoots roots = ctx.roots(p, m);
    const AFunction a = model_a_function(p);
    for (int d = 0; d < ctx.config.draws; ++d) {
        SpectralSet avoid = roots.roots;
        avoid.insert(avoid.end(), p.xi.begin(), p.xi.end());
        const auto lambdas = ctx.params(m, avoid);
        const cplx brute =
            brute_force_scalar_product(p, lambdas, roots.roots, ctx.brute_cap());
        const cplx det = slavnov_determinant(lambdas, roots).value;
        const cplx dd = scalar_product_bethe_sum(lambdas, roots.roots, p.eta, a);
        ctx.worst(rel_err(det, brute));
        ctx.worst(rel_err(dd, brute));
        if (d == 0) {
            ctx.value("brute_force", brute);
            ctx.value("determinant", det);
            ctx.value("bethe_sum", dd);
        }
    }
}

inline void check_gaudin(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    const BetheRoots roots = ctx.roots(p, ctx.config.n_magnons);
    const cplx norm = gaudin_norm(roots).value;
    const cplx brute = brute_force_scalar_product(p, roots.roots, roots.roots,
                                                  ctx.brute_cap());
    ctx.worst(rel_err(norm, brute));
    // The first-order limit carries an O(1e-5) error; its 1e-3 budget is
    // rescaled onto this check's tolerance.
    SpectralSet lambdas = roots.roots;
    for (auto &l : lambdas) {
        l += 1e-5 * sample_disk(ctx.rng, 1.0);
    }
    const cplx limit = slavnov_determinant(lambdas, roots).value;
    const double limit_err = rel_err(limit, norm);
    ctx.worst(limit_err * ctx.config.tolerance("gaudin") / 1e-3);
    ctx.value("norm", norm);
    ctx.value("brute_force", brute);
    ctx.value("near_limit", limit);
}

inline bool same_root_set(std::span<const cplx> a, std::span<const cplx> b,
                          double tol) {
    std::vector<bool> used(b.size(), false);
    for (const cplx x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j) {
            if (!used[j] && std::abs(x - b[j]) < tol) {
                used[j] = found = true;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

inline void check_orthogonality(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    const int m = ctx.config.n_magnons;
    const BetheRoots first = ctx.roots(p, m);
    std::optional<BetheRoots> second;
    for (int attempt = 0; attempt < 40 && !second; ++attempt) {
        BaeOptions opt;
        opt.seed = ctx.rng();
        opt.starts = 20;
        opt.seeds = sample_separated(ctx.rng, m, p.eta);
        try {
            auto r = solve_bae(p, m, opt);
            if (!same_root_set(r.roots, first.roots, 1e-6)) {
                second = std::move(r);
            }
        } catch (const ConvergenceError &) {
        }
    }
    if (!second) {
        throw ConvergenceError("orthogonality: no second root set found");
    }
    ctx.record(second->roots);
    const double scale = slavnov_entry_scale(second->roots, first.roots, p.eta,
                                             model_a_function(p));
    const cplx brute =
        brute_force_scalar_product(p, second->roots, first.roots,
                                   ctx.brute_cap());
    const cplx det = slavnov_determinant(second->roots, first).value;
    ctx.worst(std::abs(brute) / scale);
    ctx.worst(std::abs(det) / scale);
    ctx.value("brute_force", brute);
    ctx.value("determinant", det);
    ctx.value("entry_scale", scale);
}

inline void check_residue(CheckContext &ctx) {
    const ModelParams p = ctx.model();
    const int m = ctx.config.n_magnons;
    const BetheRoots roots = ctx.roots(p, m);
    ScalarProductSpec spec;
    SpectralSet avoid = roots.roots;
    avoid.insert(avoid.end(), p.xi.begin(), p.xi.end());
    spec.lambdas = ctx.params(m, avoid);
    spec.ts = roots.roots;
    spec.a_function = test_a_function();
    auto at = [&](double delta) {
        ScalarProductSpec s = spec;
        s.lambdas[0] = roots.roots[0] + delta;
        return s;
    };
    const auto det = fit_simple_pole([&](double delta) {
        const auto s = at(delta);
        return slavnov_determinant(s.lambdas, roots.roots, p.eta, s.a_function)
            .value;
    });
    const auto rec = fit_simple_pole([&](double delta) {
        return residue_recursion_rhs(at(delta), roots.roots, p.eta, 1e-2);
    });
    ctx.worst(rel_err(det.residue, rec.residue));
    ctx.value("determinant_residue", det.residue);
    ctx.value("recursion_residue", rec.residue);
}

inline void check_column_reduction(CheckContext &ctx) {
    const int m = std::max(ctx.config.n_magnons, 1);
    const cplx eta = ctx.config.eta;
    for (int d = 0; d < ctx.config.draws; ++d) {
        const auto lambdas = ctx.params(m);
        const auto ts = ctx.params(m, lambdas);
        const Matrix orig = column_reduction_matrix(lambdas, ts, eta);
        Matrix reduced = orig;
        double entry_scale = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const cplx closed = column_reduction_entry(i, lambdas, ts, eta);
            const cplx direct = column_reduction_direct(i, lambdas, ts, eta);
            ctx.worst(rel_err(closed, direct));
            reduced(i, 0) = closed;
            entry_scale = std::max(entry_scale, std::abs(orig(i, 0)));
            ctx.worst(std::abs(column_reduction_residue_sum(i, lambdas, ts, eta)) /
                      std::max(1.0, entry_scale));
        }
        ctx.worst(rel_err(determinant(reduced), determinant(orig)));
    }
}

struct CheckSpec {
    void (*run)(CheckContext &);
    bool rational_only;
    bool oracle;      ///< builds 2^N vectors
    bool subset_sum;  ///< enumerates C(2M, M) partitions
    bool distinct_xi;
    /// Number of distinct Bethe states the check needs in the M sector.
    int bethe_states = 0;
    int min_magnons = 0;
};

inline const std::map<std::string, CheckSpec> &check_table() {
    static const std::map<std::string, CheckSpec> table{
        {"column-reduction", {check_column_reduction, true, false, false, false}},
        {"commutation", {check_commutation, false, true, false, false}},
        {"f-basis", {check_f_basis, false, true, false, true}},
        {"factorizing", {check_factorizing, false, true, false, true}},
        {"gaudin", {check_gaudin, true, true, false, false, 1}},
        {"orthogonality", {check_orthogonality, true, true, false, false, 2}},
        {"phi-m", {check_phi_m, true, false, false, false}},
        {"residue", {check_residue, true, false, true, false, 1, 1}},
        {"rtt", {check_rtt, false, true, false, false}},
        {"scalar-sum", {check_scalar_sum, true, true, true, false}},
        {"slavnov", {check_slavnov, true, true, true, false, 1}},
        {"yang-baxter", {check_yang_baxter, false, false, false, false}},
    };
    return table;
}

inline std::uint64_t check_seed(std::uint64_t seed, const std::string &name) {
    Fnv1a h;
    h.add(seed);
    h.add(name);
    return h.value();
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double b = 1.0;
    for (int i = 1; i <= k; ++i) {
        b = b * (n - k + i) / i;
    }
    return b;
}

/// Highest-weight states with M flipped spins: C(N, M) - C(N, M - 1).
inline double bethe_state_count(int n, int m) {
    return binomial(n, m) - binomial(n, m - 1);
}

inline bool xi_coincide(const RunConfig &c) {
    if (c.xi_mode == XiMode::homogeneous) {
        return c.n_sites > 1;
    }
    if (c.xi_mode == XiMode::explicit_values) {
        return !ModelParams{c.variant, c.eta, c.xi}.xi_distinct();
    }
    return false;
}

} // namespace detail

inline CheckRecord run_check(const RunConfig &config, const std::string &name) {
    const auto &spec = detail::check_table().at(name);
    CheckRecord rec;
    rec.name = name;
    rec.tolerance = config.tolerance(name);
    if (spec.rational_only && config.variant != Variant::rational) {
        rec.status = CheckStatus::skipped_variant;
        return rec;
    }
    if (!config.unsafe_caps &&
        ((spec.oracle && config.n_sites > kOracleSiteCap) ||
         (spec.subset_sum && config.n_magnons > kSubsetMagnonCap))) {
        rec.status = CheckStatus::skipped_cap;
        return rec;
    }
    const double states =
        detail::bethe_state_count(config.n_sites, config.n_magnons);
    if ((spec.bethe_states > 0 && states < spec.bethe_states) ||
        config.n_magnons < spec.min_magnons) {
        rec.status = CheckStatus::skipped_magnons;
        return rec;
    }
    if (spec.distinct_xi && detail::xi_coincide(config)) {
        rec.status = CheckStatus::skipped_xi;
        return rec;
    }
    detail::CheckContext ctx{config, Rng(detail::check_seed(config.seed, name)),
                             {}, {}, 0.0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
        spec.run(ctx);
        rec.defect = ctx.defect;
        rec.note = ctx.note;
    } catch (const std::exception &e) {
        rec.defect = std::numeric_limits<double>::max();
        rec.note = e.what();
    }
    if (!std::isfinite(rec.defect)) {
        rec.defect = std::numeric_limits<double>::max();
        rec.note = "non-finite defect";
    }
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    rec.status = rec.defect <= rec.tolerance ? CheckStatus::pass : CheckStatus::fail;
    rec.inputs_digest = ctx.digest.hex();
    rec.values = std::move(ctx.values);
    return rec;
}

/// Runs the configured checks (each name once), ordered by name.
inline VerificationReport run_suite(const RunConfig &config) {
    config.validate();
    VerificationReport report;
    report.config = config;
    std::vector<std::string> names = config.checks;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    for (const auto &name : names) {
        report.checks.push_back(run_check(config, name));
    }
    return report;
}

inline nlohmann::json to_json(const VerificationReport &r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : r.checks) {
        nlohmann::json values = nlohmann::json::object();
        for (const auto &[k, v] : c.values) {
            values[k] = complex_to_json(v);
        }
        checks.push_back({{"name", c.name},
                          {"status", to_string(c.status)},
                          {"passed", c.status == CheckStatus::pass},
                          {"inputs_digest", c.inputs_digest},
                          {"values", values},
                          {"defect", c.defect},
                          {"tolerance", c.tolerance},
                          {"wall_time_ms", c.wall_time_ms},
                          {"note", c.note}});
    }
    return {{"schema", r.schema},
            {"tool_version", r.tool_version},
            {"config", to_json(r.config)},
            {"checks", checks},
            {"summary",
             {{"total", r.checks.size()},
              {"passed", r.count(CheckStatus::pass)},
              {"failed", r.count(CheckStatus::fail)},
              {"skipped", r.skipped()}}}};
}

inline VerificationReport report_from_json(const nlohmann::json &j) {
    VerificationReport r;
    try {
        r.schema = j.at("schema").get<std::string>();
        if (r.schema != kReportSchema) {
            throw Error("unsupported report schema '" + r.schema + "'");
        }
        r.tool_version = j.at("tool_version").get<std::string>();
        apply_json(j.at("config"), r.config);
        for (const auto &c : j.at("checks")) {
            CheckRecord rec;
            rec.name = c.at("name").get<std::string>();
            rec.status = parse_status(c.at("status").get<std::string>());
            rec.inputs_digest = c.at("inputs_digest").get<std::string>();
            for (const auto &[k, v] : c.at("values").items()) {
                rec.values[k] = complex_from_json(v);
            }
            rec.defect = c.at("defect").get<double>();
            rec.tolerance = c.at("tolerance").get<double>();
            rec.wall_time_ms = c.at("wall_time_ms").get<double>();
            rec.note = c.at("note").get<std::string>();
            r.checks.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(std::string("report: ") + e.what());
    }
    return r;
}

enum class ReportFormat { json, tsv };

inline ReportFormat parse_format(const std::string &s) {
    if (s == "json") {
        return ReportFormat::json;
    }
    if (s == "tsv") {
        return ReportFormat::tsv;
    }
    throw Error("unknown report format '" + s + "'");
}

inline std::string render_report(const VerificationReport &r, ReportFormat f) {
    if (f == ReportFormat::json) {
        return to_json(r).dump(2) + "\n";
    }
    std::ostringstream os;
    os << "name\tstatus\tdefect\ttolerance\tinputs_digest\twall_time_ms\tnote\n";
    char num[64];
    for (const auto &c : r.checks) {
        std::string note = c.note;
        std::replace_if(
            note.begin(), note.end(),
            [](char ch) { return ch == '\t' || ch == '\n'; }, ' ');
        os << c.name << '\t' << to_string(c.status) << '\t';
        std::snprintf(num, sizeof num, "%.6e", c.defect);
        os << num << '\t';
        std::snprintf(num, sizeof num, "%.6e", c.tolerance);
        os << num << '\t' << c.inputs_digest << '\t';
        std::snprintf(num, sizeof num, "%.3f", c.wall_time_ms);
        os << num << '\t' << note << '\n';
    }
    return os.str();
}

/// Writes the report to `path`; "-" or empty means stdout.
inline void emit_report(const VerificationReport &r, ReportFormat f,
                        const std::string &path) {
    const std::string text = render_report(r, f);
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out.flush()) {
        throw Error("write to '" + path + "' failed");
    }
}

} // namespace bethe
