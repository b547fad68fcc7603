#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "uplab/growth.hpp"
#include "uplab/matrix_json.hpp"
#include "uplab/poisson.hpp"
#include "uplab/random.hpp"

namespace uplab {

enum class OutputFormat { json, csv, pretty };

struct RunConfig {
    std::vector<std::size_t> dims{2, 4, 8, 16};
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::map<std::string, double> tolerances;  // overrides keyed by identity name
    OutputFormat output = OutputFormat::pretty;
    unsigned threads = 1;
    WitnessFamily witness = WitnessFamily::projector_difference;
};

namespace verify_detail {

inline QuotientClass random_class(std::size_t dim, std::uint64_t seed) {
    return class_of(random_trace_class(dim, seed, true));
}

inline ResidualRecord run_cocycle(std::size_t dim, std::uint64_t seed, double) {
    Rng sub(seed);
    const auto g = random_unitary(dim, sub.next_u64());
    const auto u = random_unitary(dim, sub.next_u64());
    const auto c1 = random_class(dim, sub.next_u64());
    const auto c2 = random_class(dim, sub.next_u64());
    ResidualRecord r = cocycle_residual(g, u, c1, c2);
    r.seed = seed;
    return r;
}

inline ResidualRecord run_jacobi(std::size_t dim, std::uint64_t seed, double) {
    Rng sub(seed);
    const auto g = random_unitary(dim, sub.next_u64());
    const auto chk = jacobi_cyclic_sum(g, random_class(dim, sub.next_u64()),
                                       random_class(dim, sub.next_u64()),
                                       random_class(dim, sub.next_u64()));
    return {"jacobi", dim, seed, std::abs(chk.cyclic_sum), chk.scale};
}

inline ResidualRecord run_jacobi_closed(std::size_t dim, std::uint64_t seed, double) {
    Rng sub(seed);
    const auto g = random_unitary(dim, sub.next_u64());
    const auto chk = jacobi_cyclic_sum(g, random_class(dim, sub.next_u64()),
                                       random_class(dim, sub.next_u64()),
                                       random_class(dim, sub.next_u64()));
    const double worst =
        std::max({chk.closed_mismatch, chk.collapse_mismatch, chk.isotropy_term});
    return {"jacobi-closed", dim, seed, worst, chk.scale};
}

inline ResidualRecord run_conj(std::size_t dim, std::uint64_t seed, bool b_side) {
    Rng sub(seed);
    const auto g = random_unitary(dim, sub.next_u64());
    const auto x = random_trace_class(dim, sub.next_u64(), true);
    auto rr = conj_identities_residual(g, x);
    ResidualRecord r = b_side ? rr.b : rr.u;
    r.seed = seed;
    return r;
}

inline ResidualRecord run_conj_b(std::size_t dim, std::uint64_t seed, double) {
    return run_conj(dim, seed, true);
}
inline ResidualRecord run_conj_u(std::size_t dim, std::uint64_t seed, double) {
    return run_conj(dim, seed, false);
}

inline ResidualRecord run_derivative(std::size_t dim, std::uint64_t seed, double tol) {
    Rng sub(seed);
    const auto y = random_skew_hermitian(dim, sub.next_u64());
    const auto c1 = random_class(dim, sub.next_u64());
    const auto c2 = random_class(dim, sub.next_u64());
    const double direct = d_pi_e(y, c1, c2);
    auto fd_at = [&](double h) {
        const auto gp = exp_skew(SkewHermitian(y.matrix() * cplx(h, 0.0), unchecked));
        const auto gm = exp_skew(SkewHermitian(y.matrix() * cplx(-h, 0.0), unchecked));
        return (pi_r(gp, c1, c2) - pi_r(gm, c1, c2)) / (2.0 * h);
    };
    const double h = 1e-5;
    double fd = fd_at(h);
    double scale = std::max(std::abs(direct), std::abs(fd));
    double resid = std::abs(fd - direct);
    if (resid > tol * std::max(scale, 1e-30)) {
        // Richardson refinement with step h/2 before reporting a failure
        const double fd2 = fd_at(h / 2.0);
        const double rich = (4.0 * fd2 - fd) / 3.0;
        const double resid2 = std::abs(rich - direct);
        if (resid2 < resid) {
            resid = resid2;
            scale = std::max(std::abs(direct), std::abs(rich));
        }
    }
    return {"derivative-b2", dim, seed, resid, scale};
}

inline ResidualRecord run_sharp(std::size_t dim, std::uint64_t seed, double) {
    Rng sub(seed);
    const auto g = random_unitary(dim, sub.next_u64());
    const auto c1 = random_class(dim, sub.next_u64());
    const auto c2 = random_class(dim, sub.next_u64());
    const double via_sharp = eval_class(c2, sharp(g, c1));
    const double via_tensor = pi_r(g, c1, c2);
    return {"sharp-contract", dim, seed, std::abs(via_sharp - via_tensor),
            std::max(std::abs(via_sharp), std::abs(via_tensor))};
}

inline ResidualRecord run_coadjoint_duality(std::size_t dim, std::uint64_t seed, double) {
    Rng sub(seed);
    const auto a = random_skew_hermitian(dim, sub.next_u64());
    const auto b = project_triangular(random_trace_class(dim, sub.next_u64(), true));
    const auto c = random_skew_hermitian(dim, sub.next_u64());
    const double lhs = im_trace_prod(commutator(a.matrix(), c.matrix()), b);
    const double rhs = im_trace_prod(c.matrix(), coadjoint_algebra_bplus(a, b));
    return {"coadjoint-duality", dim, seed, std::abs(lhs - rhs),
            std::max(std::abs(lhs), std::abs(rhs))};
}

inline ResidualRecord run_bracket(std::size_t dim, std::uint64_t seed, double) {
    Rng sub(seed);
    const auto c1 = random_class(dim, sub.next_u64());
    const auto c2 = random_class(dim, sub.next_u64());
    const auto c3 = random_class(dim, sub.next_u64());
    const auto b12 = quotient_bracket(c1, c2);
    const double anti = frobenius_norm(b12.rep() + quotient_bracket(c2, c1).rep());
    const auto j1 = quotient_bracket(c1, quotient_bracket(c2, c3));
    const auto j2 = quotient_bracket(c2, quotient_bracket(c3, c1));
    const auto j3 = quotient_bracket(c3, quotient_bracket(c1, c2));
    const double jac = frobenius_norm(j1.rep() + j2.rep() + j3.rep());
    const double scale = std::max({frobenius_norm(b12.rep()), frobenius_norm(j1.rep()), 1e-30});
    return {"bracket", dim, seed, std::max(anti, jac), scale};
}

inline ResidualRecord run_bracket_coset(std::size_t dim, std::uint64_t seed, double) {
    Rng sub(seed);
    const auto x1 = random_trace_class(dim, sub.next_u64(), true);
    const auto x2 = random_trace_class(dim, sub.next_u64(), true);
    const auto s1 = random_skew_hermitian(dim, sub.next_u64());
    const auto s2 = random_skew_hermitian(dim, sub.next_u64());
    const auto base = quotient_bracket(class_of(x1), class_of(x2));
    const auto moved = quotient_bracket(class_of(x1 + s1.matrix()), class_of(x2 + s2.matrix()));
    const double coset = frobenius_norm(base.rep() - moved.rep());
    // restriction to b+ members must reproduce the plain commutator class
    const auto b1 = project_triangular(x1);
    const auto b2 = project_triangular(x2);
    const double restrict_resid = frobenius_norm(
        quotient_bracket(class_of(b1), class_of(b2)).rep() - class_of(commutator(b1, b2)).rep());
    const double scale = std::max(frobenius_norm(base.rep()), 1e-30);
    return {"bracket-coset", dim, seed, std::max(coset, restrict_resid), scale};
}

struct IdentitySpec {
    const char* name;
    double default_tol;
    ResidualRecord (*runner)(std::size_t, std::uint64_t, double);
};

inline const std::vector<IdentitySpec>& identity_specs() {
    static const std::vector<IdentitySpec> specs = {
        {"cocycle", 1e-10, run_cocycle},
        {"jacobi", 1e-9, run_jacobi},
        {"jacobi-closed", 1e-10, run_jacobi_closed},
        {"conj-identity-b", 1e-11, run_conj_b},
        {"conj-identity-u", 1e-11, run_conj_u},
        {"derivative-b2", 1e-6, run_derivative},
        {"sharp-contract", 1e-12, run_sharp},
        {"coadjoint-duality", 1e-12, run_coadjoint_duality},
        {"bracket", 1e-10, run_bracket},
        {"bracket-coset", 1e-12, run_bracket_coset},
    };
    return specs;
}

}  // namespace verify_detail

struct DimAggregate {
    std::size_t dim = 0;
    std::size_t count = 0;
    double max_relative = 0.0;
    double mean_relative = 0.0;
};

struct IdentityAggregate {
    std::string identity;
    double tolerance = 0.0;
    std::size_t count = 0;
    double max_relative = 0.0;
    double mean_relative = 0.0;
    bool pass = false;
    std::vector<DimAggregate> per_dim;
};

struct VerificationReport {
    std::vector<std::size_t> dims;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::vector<IdentityAggregate> identities;
    std::vector<ResidualRecord> records;  // canonical order: identity, dim, trial
    bool pass = false;
};

/// Seed for one (identity, dim, trial) cell: base seed xor a hash of the
/// coordinates, so trials are independent and order-free.
inline std::uint64_t derive_trial_seed(std::uint64_t base, const std::string& identity,
                                       std::size_t dim, std::size_t trial) {
    std::uint64_t h = hash64(identity.data(), identity.size());
    h = hash64_u64(h, dim);
    h = hash64_u64(h, trial);
    return base ^ h;
}

inline void validate_verify_config(const RunConfig& cfg) {
    if (cfg.trials == 0) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.dims.empty()) throw std::invalid_argument("config: at least one dim required");
    for (std::size_t d : cfg.dims) {
        if (d < 2 || d % 2 != 0)
            throw std::invalid_argument("config: dims must be positive even integers");
    }
    if (cfg.threads == 0) throw std::invalid_argument("config: threads must be >= 1");
    for (const auto& [name, tol] : cfg.tolerances) {
        bool known = false;
        for (const auto& spec : verify_detail::identity_specs())
            if (name == spec.name) known = true;
        if (!known && name != "pairing")
            throw std::invalid_argument("config: unknown identity in tolerance override: " + name);
        if (tol < 0.0) throw std::invalid_argument("config: tolerance must be non-negative");
    }
}

inline double identity_tolerance(const RunConfig& cfg, const std::string& name,
                                 double default_tol) {
    auto it = cfg.tolerances.find(name);
    return it == cfg.tolerances.end() ? default_tol : it->second;
}

/// Runs every identity over trials x dims with derived per-trial seeds.
/// Records land in slots indexed by (identity, dim, trial), so the report is
/// a pure function of the config regardless of thread scheduling.
inline VerificationReport run_verify(const RunConfig& cfg) {
    validate_verify_config(cfg);
    const auto& specs = verify_detail::identity_specs();
    const std::size_t cells_per_identity = cfg.dims.size() * cfg.trials;
    const std::size_t total = specs.size() * cells_per_identity;

    VerificationReport report;
    report.dims = cfg.dims;
    report.trials = cfg.trials;
    report.seed = cfg.seed;
    report.threads = cfg.threads;
    report.records.resize(total);

    auto run_cell = [&](std::size_t flat) {
        const std::size_t is = flat / cells_per_identity;
        const std::size_t rem = flat % cells_per_identity;
        const std::size_t id = rem / cfg.trials;
        const std::size_t trial = rem % cfg.trials;
        const auto& spec = specs[is];
        const std::size_t dim = cfg.dims[id];
        const std::uint64_t seed = derive_trial_seed(cfg.seed, spec.name, dim, trial);
        const double tol = identity_tolerance(cfg, spec.name, spec.default_tol);
        report.records[flat] = spec.runner(dim, seed, tol);
    };

    if (cfg.threads <= 1) {
        for (std::size_t flat = 0; flat < total; ++flat) run_cell(flat);
    } else {
        std::vector<std::thread> pool;
        const unsigned k = cfg.threads;
        for (unsigned t = 0; t < k; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t flat = t; flat < total; flat += k) run_cell(flat);
            });
        for (auto& th : pool) th.join();
    }

    report.pass = true;
    for (std::size_t is = 0; is < specs.size(); ++is) {
        IdentityAggregate agg;
        agg.identity = specs[is].name;
        agg.tolerance = identity_tolerance(cfg, agg.identity, specs[is].default_tol);
        for (std::size_t id = 0; id < cfg.dims.size(); ++id) {
            DimAggregate da;
            da.dim = cfg.dims[id];
            double sum = 0.0;
            for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
                const auto& rec =
                    report.records[is * cells_per_identity + id * cfg.trials + trial];
                const double rel = rec.relative();
                da.max_relative = std::max(da.max_relative, rel);
                sum += rel;
                ++da.count;
            }
            da.mean_relative = sum / static_cast<double>(da.count);
            agg.max_relative = std::max(agg.max_relative, da.max_relative);
            agg.mean_relative += sum;
            agg.count += da.count;
            agg.per_dim.push_back(da);
        }
        agg.mean_relative /= static_cast<double>(agg.count);
        agg.pass = agg.max_relative <= agg.tolerance;
        report.pass = report.pass && agg.pass;
        report.identities.push_back(std::move(agg));
    }
    return report;
}

// -------------------------------------------------------------------------
// serialization

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json record_to_json(const ResidualRecord& r) {
    return {{"identity", r.identity}, {"dim", r.dim},     {"seed", r.seed},
            {"residual", r.residual}, {"scale", r.scale}, {"relative", r.relative()}};
}

inline nlohmann::json report_to_json(const VerificationReport& rep, bool with_records = true) {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& agg : rep.identities) {
        nlohmann::json per_dim = nlohmann::json::array();
        for (const auto& da : agg.per_dim)
            per_dim.push_back({{"dim", da.dim},
                               {"count", da.count},
                               {"max_relative", da.max_relative},
                               {"mean_relative", da.mean_relative}});
        ids.push_back({{"identity", agg.identity},
                       {"tolerance", agg.tolerance},
                       {"count", agg.count},
                       {"max_relative", agg.max_relative},
                       {"mean_relative", agg.mean_relative},
                       {"pass", agg.pass},
                       {"per_dim", std::move(per_dim)}});
    }
    nlohmann::json j = {{"command", "verify"}, {"dims", rep.dims},
                        {"trials", rep.trials}, {"seed", rep.seed},
                        {"threads", rep.threads}, {"identities", std::move(ids)},
                        {"pass", rep.pass}};
    if (with_records) {
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : rep.records) recs.push_back(record_to_json(r));
        j["records"] = std::move(recs);
    }
    return j;
}

inline std::string report_to_csv(const VerificationReport& rep) {
    std::string out = "identity,dim,seed,residual,scale,relative\n";
    for (const auto& r : rep.records) {
        out += r.identity;
        out += ',' + std::to_string(r.dim);
        out += ',' + std::to_string(r.seed);
        out += ',' + fmt_double(r.residual);
        out += ',' + fmt_double(r.scale);
        out += ',' + fmt_double(r.relative());
        out += '\n';
    }
    return out;
}

inline std::string report_to_pretty(const VerificationReport& rep) {
    char line[160];
    std::string out;
    std::snprintf(line, sizeof(line), "verification: dims=");
    out += line;
    for (std::size_t i = 0; i < rep.dims.size(); ++i)
        out += (i ? "," : "") + std::to_string(rep.dims[i]);
    out += " trials=" + std::to_string(rep.trials) + " seed=" + std::to_string(rep.seed) + "\n";
    std::snprintf(line, sizeof(line), "%-18s %-10s %-8s %-13s %-13s %s\n", "identity",
                  "tolerance", "count", "max_rel", "mean_rel", "verdict");
    out += line;
    for (const auto& agg : rep.identities) {
        std::snprintf(line, sizeof(line), "%-18s %-10.1e %-8zu %-13.3e %-13.3e %s\n",
                      agg.identity.c_str(), agg.tolerance, agg.count, agg.max_relative,
                      agg.mean_relative, agg.pass ? "pass" : "FAIL");
        out += line;
    }
    out += rep.pass ? "overall: pass\n" : "overall: FAIL\n";
    return out;
}

// witness command

inline nlohmann::json growth_to_json(const GrowthSeries& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"N", r.half_width},
                        {"witness_ratio", r.witness_ratio},
                        {"coadjoint_ratio", r.coadjoint_ratio}});
    auto fit_json = [](const LogFit& f) -> nlohmann::json {
        if (!f.valid) return nullptr;
        return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
    };
    return {{"command", "witness"},
            {"family", witness_family_name(s.family)},
            {"rows", std::move(rows)},
            {"witness_fit", fit_json(s.witness_fit)},
            {"coadjoint_fit", fit_json(s.coadjoint_fit)}};
}

inline std::string growth_to_csv(const GrowthSeries& s) {
    std::string out = "N,witness_ratio,coadjoint_ratio\n";
    for (const auto& r : s.rows)
        out += std::to_string(r.half_width) + ',' + fmt_double(r.witness_ratio) + ',' +
               fmt_double(r.coadjoint_ratio) + '\n';
    return out;
}

inline std::string growth_to_pretty(const GrowthSeries& s) {
    char line[160];
    std::string out = "growth series, witness family: ";
    out += witness_family_name(s.family);
    out += '\n';
    std::snprintf(line, sizeof(line), "%-8s %-16s %s\n", "N", "witness_ratio",
                  "coadjoint_ratio");
    out += line;
    for (const auto& r : s.rows) {
        std::snprintf(line, sizeof(line), "%-8zu %-16.10f %.10f\n", r.half_width,
                      r.witness_ratio, r.coadjoint_ratio);
        out += line;
    }
    if (s.witness_fit.valid) {
        std::snprintf(line, sizeof(line),
                      "witness fit:   ratio ~ %.6f ln N %+.6f   (R^2 = %.6f)\n",
                      s.witness_fit.slope, s.witness_fit.intercept, s.witness_fit.r_squared);
        out += line;
        std::snprintf(line, sizeof(line),
                      "coadjoint fit: ratio ~ %.6f ln N %+.6f   (R^2 = %.6f)\n",
                      s.coadjoint_fit.slope, s.coadjoint_fit.intercept,
                      s.coadjoint_fit.r_squared);
        out += line;
    }
    return out;
}

// pairing command

struct PairingReport {
    std::vector<std::pair<std::size_t, double>> rows;  // (n, smallest singular value)
    double tolerance = 1e-8;
    bool pass = false;
};

inline PairingReport run_pairing(const std::vector<std::size_t>& sizes, double tolerance) {
    PairingReport rep;
    rep.tolerance = tolerance;
    rep.pass = true;
    for (std::size_t n : sizes) {
        const double sv = pairing_gram(n).smallest_singular_value;
        rep.rows.emplace_back(n, sv);
        rep.pass = rep.pass && sv > tolerance;
    }
    return rep;
}

inline nlohmann::json pairing_to_json(const PairingReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [n, sv] : rep.rows)
        rows.push_back({{"n", n}, {"smallest_singular_value", sv}});
    return {{"command", "pairing"},
            {"tolerance", rep.tolerance},
            {"rows", std::move(rows)},
            {"pass", rep.pass}};
}

inline std::string pairing_to_csv(const PairingReport& rep) {
    std::string out = "n,smallest_singular_value\n";
    for (const auto& [n, sv] : rep.rows) out += std::to_string(n) + ',' + fmt_double(sv) + '\n';
    return out;
}

inline std::string pairing_to_pretty(const PairingReport& rep) {
    char line[120];
    std::string out = "duality pairing Gram spectrum\n";
    for (const auto& [n, sv] : rep.rows) {
        std::snprintf(line, sizeof(line), "n=%-4zu smallest singular value = %.12e\n", n, sv);
        out += line;
    }
    std::snprintf(line, sizeof(line), "nondegenerate above %.1e: %s\n", rep.tolerance,
                  rep.pass ? "pass" : "FAIL");
    out += line;
    return out;
}

}  // namespace uplab
