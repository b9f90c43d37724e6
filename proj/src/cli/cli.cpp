#include "entcost/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include "entcost/boson.hpp"
#include "entcost/errors.hpp"
#include "entcost/fermion.hpp"
#include "entcost/models.hpp"
#include "internal.hpp"

namespace entcost::cli {

namespace {

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

void add_output_options(CLI::App *cmd, OutputOptions &o) {
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.path, "output file (default: standard output)");
}

void emit(const Table &t, const OutputOptions &o, std::ostream &out) {
    if (o.path.empty()) {
        o.format == "json" ? write_json(t, out) : write_csv(t, out);
        return;
    }
    std::ofstream file(o.path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file " + o.path);
    }
    o.format == "json" ? write_json(t, file) : write_csv(t, file);
}

double single_value(const std::string &text, const std::string &name) {
    const auto grid = parse_grid(text, name);
    if (grid.size() != 1) {
        throw UsageError("--" + name + " takes a single value");
    }
    return grid.front();
}

// ---- cost-curve ----

struct CostCurveOptions {
    std::string stat;
    std::string eps1 = "1";
    std::string eps2 = "1";
    std::string r;
    std::string theta;
    std::string omega_max;
    OutputOptions output;
};

Table cost_curve(const CostCurveOptions &o) {
    const double eps1 = single_value(o.eps1, "eps1");
    const double eps2 = single_value(o.eps2, "eps2");
    const auto rs = parse_grid(o.r, "r");
    std::optional<double> theta;
    if (!o.theta.empty()) theta = single_value(o.theta, "theta");
    const double omega_max = o.omega_max.empty() ? eps2 : single_value(o.omega_max, "omega-max");
    const bool bosonic = o.stat == "boson";

    Table t;
    t.columns = {"r", "delta_S", "delta_E_min", "sigma_E", "delta_E_max"};
    if (theta) t.columns.push_back("delta_E_theta");
    for (double r : rs) {
        std::vector<Cell> row;
        if (bosonic) {
            const auto c = boson::extraction_cost(eps1, eps2, r, theta, omega_max);
            row = {r, c.delta_S, c.delta_E_min, c.sigma_E, *c.delta_E_max};
            if (theta) row.emplace_back(*c.delta_E_theta);
        } else {
            const auto c = fermion::extraction_cost(eps1, eps2, r, theta, omega_max);
            row = {r, c.delta_S, c.delta_E_min, c.sigma_E, *c.delta_E_max};
            if (theta) row.emplace_back(*c.delta_E_theta);
        }
        t.add(std::move(row));
    }
    return t;
}

// ---- model-scan ----

struct ModelScanOptions {
    std::string model;
    std::string gamma_over_omega = "0.01:0.49:49";
    double omega = 1.0;
    int sites = 10;
    double coupling = 1.0;
    std::string field;
    std::string gamma;
    std::string eps_min;
    std::string branch = "both";
    OutputOptions output;
};

Table bose_gas_scan(const ModelScanOptions &o) {
    Table t;
    t.columns = {"gamma_over_omega", "delta_S", "delta_E", "ratio"};
    for (double x : parse_grid(o.gamma_over_omega, "gamma-over-omega")) {
        const auto pair = models::bose_gas_pair_analysis(o.omega, x * o.omega);
        t.add({x, pair.delta_S, pair.delta_E, pair.delta_S > 0.0 ? pair.delta_E / pair.delta_S : 0.0});
    }
    return t;
}

void xy_row(Table &t, const models::XYSpec &spec) {
    try {
        const auto d = models::xy_dispersion(spec);
        const auto site = models::xy_single_site(spec, 0);
        t.add({spec.field, spec.anisotropy, d.eps_min, site.delta_S, site.delta_E, site.bound_lower,
               site.bound_upper});
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::GaplessHamiltonian) throw;
        t.warn(fmt::format("skipped gapless point h={} gamma={}", format_double(spec.field),
                           format_double(spec.anisotropy)));
    }
}

Table xy_scan(const ModelScanOptions &o) {
    if (o.sites < 2 || o.sites > 400) {
        fail(ErrorKind::Size, fmt::format("--sites must lie in 2..400, got {}", o.sites));
    }
    if (o.gamma.empty()) {
        throw UsageError("--gamma is required for the xy model");
    }
    const auto gammas = parse_grid(o.gamma, "gamma");
    Table t;
    t.columns = {"h", "gamma", "eps_min", "site_delta_S", "site_delta_E", "bound_lower", "bound_upper"};
    if (!o.eps_min.empty()) {
        if (!o.field.empty()) {
            throw UsageError("--h and --eps-min are mutually exclusive");
        }
        if (o.coupling != 1.0) {
            throw UsageError("fixed-gap paths are defined for --J 1");
        }
        std::vector<double> signs;
        if (o.branch != "-") signs.push_back(1.0);
        if (o.branch != "+") signs.push_back(-1.0);
        for (double target : parse_grid(o.eps_min, "eps-min")) {
            for (double sign : signs) {
                const auto path = models::xy_fixed_gap_path(target, gammas, sign);
                for (const auto &[g, why] : path.skipped) {
                    t.warn(fmt::format("skipped eps_min={} gamma={} branch={}: {}", format_double(target),
                                       format_double(g), sign > 0 ? "+" : "-", why));
                }
                for (const auto &p : path.points) {
                    xy_row(t, {o.sites, o.coupling, p.field, p.gamma});
                }
            }
        }
        return t;
    }
    if (o.field.empty()) {
        throw UsageError("the xy model needs --h or --eps-min");
    }
    for (double h : parse_grid(o.field, "h")) {
        for (double g : gammas) {
            xy_row(t, {o.sites, o.coupling, h, g});
        }
    }
    return t;
}

// ---- random-sample ----

struct RandomSampleOptions {
    int sites = 10;
    double coupling = 1.0;
    double field = 0.5;
    double gamma = 0.5;
    int samples = 10000;
    std::uint64_t seed = 1;
    OutputOptions output;
};

Table random_sample(const RandomSampleOptions &o, bool &all_within) {
    if (o.sites < 2 || o.sites > 400) {
        fail(ErrorKind::Size, fmt::format("--sites must lie in 2..400, got {}", o.sites));
    }
    if (o.samples < 1) {
        throw UsageError("--samples must be positive");
    }
    const auto samples = models::xy_haar_samples({o.sites, o.coupling, o.field, o.gamma}, o.samples, o.seed);
    Table t;
    t.columns = {"sample_index", "delta_S", "delta_E", "bound_lower", "bound_upper", "within_bounds"};
    all_within = true;
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto &s = samples[i];
        all_within = all_within && s.within_bounds;
        t.add({static_cast<std::int64_t>(i), s.delta_S, s.delta_E, s.bound_lower, s.bound_upper, s.within_bounds});
    }
    return t;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NumericalInconsistency: return kInvariantViolation;
        case ErrorKind::Convergence: return kNonConvergence;
        default: return kPrecondition;
    }
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Energy cost of extracting entangled partner-mode pairs from Gaussian ground states", "entcost"};
    // -h is taken by the XY field option.
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    CostCurveOptions cc;
    auto *cost = app.add_subcommand("cost-curve", "extraction cost as a function of the squeezing r");
    cost->add_option("--stat", cc.stat, "boson or fermion")->required()->check(CLI::IsMember({"boson", "fermion"}));
    cost->add_option("--eps1", cc.eps1, "lower restricted excitation energy");
    cost->add_option("--eps2", cc.eps2, "upper restricted excitation energy");
    cost->add_option("--r", cc.r, "squeezing grid: a,b,c or lo:hi:n")->required();
    cost->add_option("--theta", cc.theta, "mixing angle; adds delta_E_theta");
    cost->add_option("--omega-max", cc.omega_max, "largest excitation energy of the full system (default eps2)");
    add_output_options(cost, cc.output);

    ModelScanOptions ms;
    auto *scan = app.add_subcommand("model-scan", "Bose gas pairs or XY single-site extraction");
    scan->add_option("--model", ms.model, "bose-gas or xy")->required()->check(CLI::IsMember({"bose-gas", "xy"}));
    scan->add_option("--gamma-over-omega", ms.gamma_over_omega, "Bose gas coupling grid");
    scan->add_option("--omega", ms.omega, "Bose gas mode frequency");
    scan->add_option("--sites", ms.sites, "XY chain length");
    scan->add_option("--J", ms.coupling, "XY coupling");
    scan->add_option("--h", ms.field, "XY field grid");
    scan->add_option("--gamma", ms.gamma, "XY anisotropy grid");
    scan->add_option("--eps-min", ms.eps_min, "fixed-gap targets; h follows from gamma");
    scan->add_option("--branch", ms.branch, "sign of h on fixed-gap paths")->check(CLI::IsMember({"+", "-", "both"}));
    add_output_options(scan, ms.output);

    RandomSampleOptions rs;
    auto *sample = app.add_subcommand("random-sample", "Haar-random partner pairs on an XY chain");
    sample->add_option("--sites", rs.sites, "chain length");
    sample->add_option("--J", rs.coupling, "coupling");
    sample->add_option("--h", rs.field, "field");
    sample->add_option("--gamma", rs.gamma, "anisotropy");
    sample->add_option("--samples", rs.samples, "number of random modes");
    sample->add_option("--seed", rs.seed, "sampler seed");
    add_output_options(sample, rs.output);

    VerifyOptions vo;
    OutputOptions vout;
    std::string fault;
    auto *verify = app.add_subcommand("verify", "cross-check closed forms against the Fock-space oracles");
    verify->add_option("--modes", vo.fermion_modes, "fermionic modes for the exact-diagonalization checks");
    verify->add_option("--instances", vo.instances, "random Hamiltonians per check");
    verify->add_option("--cutoff", vo.cutoff, "bosonic Fock cutoff per mode");
    verify->add_option("--seed", vo.seed, "sampler seed");
    verify->add_option("--inject-fault", fault, "deliberately break a check")->check(CLI::IsMember({"wick-parity"}));
    add_output_options(verify, vout);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*cost) {
            emit(cost_curve(cc), cc.output, out);
        } else if (*scan) {
            emit(ms.model == "bose-gas" ? bose_gas_scan(ms) : xy_scan(ms), ms.output, out);
        } else if (*sample) {
            bool all_within = true;
            emit(random_sample(rs, all_within), rs.output, out);
            if (!all_within) {
                err << "invariant violation: some samples fall outside the cost bounds\n";
                return kInvariantViolation;
            }
        } else if (*verify) {
            vo.inject_wick_parity_fault = fault == "wick-parity";
            bool all_passed = true;
            emit(run_verify(vo, all_passed), vout, out);
            if (!all_passed) {
                err << "verification failed\n";
                return kInvariantViolation;
            }
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConvergenceError &e) {
        err << "oracle did not converge: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const Error &e) {
        err << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return kOk;
}

}  // namespace entcost::cli
