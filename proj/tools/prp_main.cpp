// Command-line front end: simulate | meanfield | chain | brw | sweep | critical.
// A JSON config file supplies defaults; flags override individual values.
// Exit codes: 0 success, 1 config error, 2 numerical failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "prp/brw.hpp"
#include "prp/chain.hpp"
#include "prp/config.hpp"
#include "prp/coupling.hpp"
#include "prp/criticality.hpp"
#include "prp/json_io.hpp"
#include "prp/meanfield.hpp"
#include "prp/rng.hpp"
#include "prp/simulator.hpp"

using namespace prp;

namespace {

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ConfigError({"cannot open output path: " + path});
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

void write_csv_header(std::ostream& os, const RunConfig& cfg) {
    os << "# config: " << config_to_json(cfg).dump() << "\n";
    os << "# seed: " << cfg.seed << "\n";
}

Json json_envelope(const RunConfig& cfg) {
    Json j;
    j["config"] = config_to_json(cfg);
    j["seed"] = cfg.seed;
    return j;
}

ControlFunction control_for_flavor(const RunConfig& cfg) {
    if (cfg.flavor == "logistic") return ControlFunction::logistic(cfg.kappa);
    return cfg.params.control;
}

MeanFieldFlavor flavor_of(const RunConfig& cfg) {
    return cfg.flavor == "logistic" ? MeanFieldFlavor::logistic(cfg.kappa)
                                    : MeanFieldFlavor::selfreg(cfg.params.control);
}

int cmd_simulate(const RunConfig& cfg) {
    const Geometry geom = cfg.make_geometry();
    OutputTarget out(cfg.out);

    if (cfg.op == "trajectory") {
        Rng rng(derive_seed(cfg.seed, 0));
        Simulation sim(geom, cfg.params);
        sim.seed_origin();
        write_csv_header(out.stream(), cfg);
        out.stream() << "time,event_kind,patch,site,population\n";
        const Outcome o = sim.run(cfg.stopping, rng,
                                  [&](double t, const Event& ev, long pop) {
                                      out.stream()
                                          << t << ',' << event_type_name(ev.type) << ','
                                          << ev.patch << ',' << ev.site << ',' << pop
                                          << '\n';
                                  });
        std::cout << "status=" << outcome_status_name(o.status) << " time=" << o.time
                  << " events=" << o.events << " peak=" << o.peak_population
                  << " seed=" << cfg.seed << "\n";
        return 0;
    }

    const SurvivalEstimate est = estimate_survival(cfg.params, geom, cfg.stopping,
                                                   cfg.replicas, cfg.seed, cfg.threads);
    if (cfg.format == "json") {
        Json j = json_envelope(cfg);
        j["estimate"] = survival_to_json(est);
        out.stream() << j.dump(2) << "\n";
    } else {
        write_csv_header(out.stream(), cfg);
        out.stream() << "replicas,survivors,point,ci_lo,ci_hi\n"
                     << est.replicas << ',' << est.survivors << ',' << est.point() << ','
                     << est.ci_lo << ',' << est.ci_hi << "\n";
    }
    std::cout << "survivors=" << est.survivors << "/" << est.replicas
              << " point=" << est.point() << " ci=[" << est.ci_lo << "," << est.ci_hi
              << "] seed=" << cfg.seed << "\n";
    return 0;
}

int cmd_meanfield(const RunConfig& cfg) {
    OutputTarget out(cfg.out);
    const std::string op = cfg.op.empty() ? "u0" : cfg.op;

    if (op == "u0") {
        double u0;
        if (cfg.flavor == "logistic") {
            u0 = u0_logistic(cfg.params.lambda, cfg.params.phi, cfg.kappa);
        } else {
            const U0Result r = u0_selfreg(cfg.params.lambda, cfg.params.phi,
                                          cfg.params.control);
            if (r.status == SeriesStatus::Inconclusive)
                throw std::runtime_error("u0 series inconclusive: " + r.note);
            u0 = r.value;
        }
        std::cout << "u0=" << u0 << "\n";
        return 0;
    }
    if (op == "limit") {
        if (cfg.flavor == "logistic") {
            std::cout << "u0_limit=" << u0_limit_logistic(cfg.params.lambda, cfg.params.phi)
                      << "\n";
        } else {
            const U0Result r = u0_limit_selfreg(cfg.params.lambda, cfg.params.phi,
                                                cfg.params.control);
            std::cout << "u0_limit=" << r.value << "\n";
        }
        return 0;
    }
    if (op == "profile") {
        const StationaryResult r =
            stationary_profile(flavor_of(cfg), cfg.params.lambda, cfg.params.phi);
        if (r.status == ProfileStatus::Inconclusive)
            throw std::runtime_error("stationary profile inconclusive: " + r.note);
        if (r.status == ProfileStatus::NoEndemicEquilibrium) {
            std::cout << "no_endemic_equilibrium u0=" << r.u0 << "\n";
            return 0;
        }
        write_csv_header(out.stream(), cfg);
        out.stream() << "i,u\n";
        for (long i = 0; i < r.profile->u.size(); ++i)
            out.stream() << i << ',' << r.profile->u[i] << '\n';
        std::cout << "u0=" << r.u0 << " K=" << r.profile->truncation() << "\n";
        return 0;
    }
    if (op == "integrate") {
        const MeanFieldFlavor flavor = flavor_of(cfg);
        const StationaryResult st =
            stationary_profile(flavor, cfg.params.lambda, cfg.params.phi);
        Eigen::VectorXd u0;
        if (st.status == ProfileStatus::Endemic) {
            u0 = st.profile->u;
        } else {
            const long K = cfg.flavor == "logistic"
                               ? cfg.kappa
                               : std::max<long>(cfg.truncation, 32);
            u0 = Eigen::VectorXd::Zero(K + 1);
            u0[0] = 1.0;
        }
        IntegrationOptions opts;
        opts.dt = cfg.dt;
        const IntegrationResult r = integrate_meanfield(flavor, cfg.params.lambda,
                                                        cfg.params.phi, u0, cfg.t_end, opts);
        write_csv_header(out.stream(), cfg);
        out.stream() << "i,u\n";
        for (long i = 0; i < r.u.size(); ++i) out.stream() << i << ',' << r.u[i] << '\n';
        std::cout << "mass_drift=" << r.mass_drift << " steps=" << r.steps
                  << " K=" << r.truncation << "\n";
        return 0;
    }
    if (op == "kappa-sweep") {
        if (cfg.kappas.empty())
            throw ConfigError({"meanfield kappa-sweep requires kappas"});
        write_csv_header(out.stream(), cfg);
        out.stream() << "kappa,lambda,phi,u0\n";
        for (long k : cfg.kappas)
            out.stream() << k << ',' << cfg.params.lambda << ',' << cfg.params.phi << ','
                         << u0_logistic(cfg.params.lambda, cfg.params.phi, k) << '\n';
        std::cout << "rows=" << cfg.kappas.size() << "\n";
        return 0;
    }
    throw ConfigError({"unknown meanfield op: " + op});
}

int cmd_chain(const RunConfig& cfg) {
    OutputTarget out(cfg.out);
    const std::string op = cfg.op.empty() ? "classify" : cfg.op;
    const ControlFunction& c = cfg.params.control;
    const double phi = cfg.params.phi;
    const std::optional<long> height =
        cfg.height > 0 ? std::optional<long>(cfg.height) : std::nullopt;

    if (op == "classify") {
        const ClassifyResult r = classify(phi, c);
        std::cout << "class=" << chain_class_name(r.cls);
        if (r.cls == ChainClass::Transient)
            std::cout << " lambda_cr=0";
        else if (r.cls == ChainClass::PositiveRecurrent)
            std::cout << " lambda_cr>0";
        else
            std::cout << " lambda_cr=unknown";
        std::cout << " reason=\"" << r.reason << "\"\n";
        return 0;
    }
    if (op == "mass") {
        const TotalMassResult r = total_mass(phi, c, cfg.params.N);
        if (r.status == SeriesStatus::Infinite)
            std::cout << "total_mass=infinite\n";
        else if (r.status == SeriesStatus::Finite)
            std::cout << "total_mass=" << r.value << " tail_bound=" << r.tail_bound << "\n";
        else
            throw std::runtime_error("total mass inconclusive: " + r.note);
        return 0;
    }
    if (op == "tau0") {
        PatchState start(cfg.params.N, 0);
        start[0] = 1;
        const AbsorptionResult r = expected_absorption_time(phi, c, cfg.params.N, start, height);
        std::cout << "e_tau0=" << r.value << " refined=" << r.refined
                  << " height=" << r.height << "\n";
        return 0;
    }
    if (op == "lambda-star") {
        const double bound =
            subcritical_lambda_bound(phi, c, cfg.params.N, cfg.params.d, height);
        std::cout << "lambda_star=" << bound << "\n";
        return 0;
    }
    if (op == "min-mean") {
        std::cout << "min_mean=" << min_mean_control(c, cfg.params.N, cfg.mass) << "\n";
        return 0;
    }
    if (op == "survival") {
        const SurvivalSolve r = single_patch_survival(phi, c, 1);
        std::cout << "survival=" << r.probability << " bracket=[" << r.lower << ","
                  << r.upper << "] height=" << r.height << "\n";
        return 0;
    }
    if (op == "sweep") {
        if (cfg.phis.empty()) throw ConfigError({"chain sweep requires phis"});
        write_csv_header(out.stream(), cfg);
        out.stream() << "phi,family,class,lambda_star,e_tau0\n";
        for (double p : cfg.phis) {
            const ClassifyResult r = classify(p, c);
            out.stream() << p << ',' << family_name(c.family()) << ','
                         << chain_class_name(r.cls) << ',';
            if (r.cls == ChainClass::PositiveRecurrent) {
                PatchState start(cfg.params.N, 0);
                start[0] = 1;
                const AbsorptionResult tau =
                    expected_absorption_time(p, c, cfg.params.N, start, height);
                out.stream() << (1.0 + p) / (2.0 * cfg.params.d * tau.value) << ','
                             << tau.value;
            } else {
                out.stream() << (r.cls == ChainClass::Transient ? "0" : "") << ',';
            }
            out.stream() << '\n';
        }
        std::cout << "rows=" << cfg.phis.size() << "\n";
        return 0;
    }
    throw ConfigError({"unknown chain op: " + op});
}

int cmd_brw(const RunConfig& cfg) {
    OutputTarget out(cfg.out);
    const std::string op = cfg.op.empty() ? "series" : cfg.op;
    const double phi = cfg.params.phi;
    const double lambda = cfg.params.lambda;
    const int d = cfg.params.d;

    auto dump_field = [&](const BoxField<double>& f) {
        write_csv_header(out.stream(), cfg);
        for (int k = 0; k < d; ++k) out.stream() << 'x' << k << ',';
        out.stream() << "value\n";
        for (long i = 0; i < f.size(); ++i) {
            if (f[i] == 0.0) continue;
            const auto x = f.coords(i);
            for (int k = 0; k < d; ++k) out.stream() << x[k] << ',';
            out.stream() << f[i] << '\n';
        }
    };

    if (op == "series") {
        const int n_max = brw_series_length(phi, lambda, d, cfg.t, 1e-9);
        const ExpectationField f = brw_expectation_field(phi, lambda, d, cfg.t, n_max);
        dump_field(f.field);
        double mass = 0.0;
        for (long i = 0; i < f.field.size(); ++i) mass += f.field[i];
        std::cout << "mass=" << mass << " n_terms=" << n_max
                  << " tail_bound=" << f.tail_bound << "\n";
        return 0;
    }
    if (op == "ode") {
        const long R = cfg.truncation > 0 ? cfg.truncation : 25;
        const OdeField f = brw_expectation_ode(phi, lambda, d, R, cfg.t, cfg.dt);
        dump_field(f.field);
        std::cout << "boundary_loss=" << f.boundary_loss << " steps=" << f.steps << "\n";
        return 0;
    }
    if (op == "lazy") {
        const BoxField<double> f = lazy_walk_field(phi, lambda, d, static_cast<int>(cfg.n));
        dump_field(f);
        std::cout << "n=" << cfg.n << "\n";
        return 0;
    }
    if (op == "counts") {
        const int n_max = static_cast<int>(cfg.n);
        const PathCountTable table(d, n_max, n_max);
        write_csv_header(out.stream(), cfg);
        out.stream() << "n,k,";
        for (int k = 0; k < d; ++k) out.stream() << 'x' << k << ',';
        out.stream() << "count\n";
        for (int nn = 0; nn <= n_max; ++nn)
            for (int kk = 0; kk <= nn; ++kk) {
                const auto& layer = table.layer(nn, kk);
                for (long i = 0; i < layer.size(); ++i) {
                    if (layer[i] == 0) continue;
                    const auto x = layer.coords(i);
                    out.stream() << nn << ',' << kk << ',';
                    for (int k = 0; k < d; ++k) out.stream() << x[k] << ',';
                    out.stream() << layer[i].str() << '\n';
                }
            }
        std::cout << "n_max=" << n_max << "\n";
        return 0;
    }
    throw ConfigError({"unknown brw op: " + op});
}

int cmd_sweep(const RunConfig& cfg) {
    SweepGrid grid;
    grid.lambdas = cfg.lambdas.empty() ? std::vector<double>{cfg.params.lambda} : cfg.lambdas;
    grid.phis = cfg.phis.empty() ? std::vector<double>{cfg.params.phi} : cfg.phis;
    grid.Ns = cfg.Ns.empty() ? std::vector<int>{cfg.params.N} : cfg.Ns;
    grid.controls = cfg.controls.empty() ? std::vector<ControlFunction>{cfg.params.control}
                                         : cfg.controls;
    const auto rows = sweep(grid, cfg.params.d, cfg.L, cfg.boundary, cfg.stopping,
                            cfg.replicas, cfg.seed, cfg.threads);
    OutputTarget out(cfg.out);
    write_csv_header(out.stream(), cfg);
    write_sweep_csv(out.stream(), rows);
    std::cout << "rows=" << rows.size() << " seed=" << cfg.seed << "\n";
    return 0;
}

int cmd_critical(const RunConfig& cfg) {
    BisectOptions opts;
    opts.threshold = cfg.threshold;
    opts.tolerance = cfg.tolerance;
    opts.replicas = cfg.replicas;
    opts.axis_max = cfg.axis_max;
    opts.initial_hi = cfg.initial_hi;
    opts.threads = cfg.threads;
    const Axis axis = cfg.axis == "phi" ? Axis::Phi : Axis::Lambda;

    const BisectResult r = bisect_critical(axis, cfg.params, cfg.make_geometry(),
                                           cfg.stopping, opts, cfg.seed);
    OutputTarget out(cfg.out);
    // JSON-lines log: one record per estimate, then a summary record
    for (const BisectEval& e : r.evals) {
        Json j;
        j["value"] = e.value;
        j["estimate"] = survival_to_json(e.estimate);
        out.stream() << j.dump() << "\n";
    }
    Json summary = json_envelope(cfg);
    summary["bracketed"] = r.bracketed;
    summary["note"] = r.note;
    if (r.bracket) {
        summary["lo"] = r.bracket->lo;
        summary["hi"] = r.bracket->hi;
        summary["midpoint"] = r.bracket->midpoint();
    }
    out.stream() << summary.dump() << "\n";

    if (r.bracketed)
        std::cout << "bracket=[" << r.bracket->lo << "," << r.bracket->hi
                  << "] midpoint=" << r.bracket->midpoint() << " evals=" << r.evals.size()
                  << " seed=" << cfg.seed << "\n";
    else
        std::cout << "no_bracket evals=" << r.evals.size() << " note=\"" << r.note
                  << "\"\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Patchy Restrained Process toolkit"};
    app.require_subcommand(0, 1);

    // config file first, flags override
    std::string config_path;
    RunConfig cfg;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "invalid config: cannot open " << config_path << "\n";
            return 1;
        }
        try {
            Json j = Json::parse(in);
            j.erase("command");  // the subcommand decides
            std::string cmd_placeholder = "simulate";
            RunConfig parsed;
            j["command"] = cmd_placeholder;
            parsed = config_from_json(j);
            parsed.command.clear();
            cfg = std::move(parsed);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return 1;
        }
    }

    std::string control_json, family;
    double lambda = 0, phi = 0, p_const = 0;
    int d = 0, N = 0, L = 0;
    long kappa = 0, height = 0, mass = 0, n = 0, truncation = 0, replicas = 0;
    double t = 0, t_end = 0, dt = 0, threshold = 0, tolerance = 0, axis_max = 0,
           initial_hi = 0, t_max = 0;
    long pop_cap = 0;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_path, format, op, flavor, axis, boundary;
    std::vector<double> lambdas, phis;
    std::vector<int> Ns;
    std::vector<long> kappas;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override it)");
        sub->add_option("--lambda", lambda, "inter-patch birth rate");
        sub->add_option("--phi", phi, "intra-patch birth rate");
        sub->add_option("--d", d, "lattice dimension");
        sub->add_option("--N", N, "patch size");
        sub->add_option("--control", control_json, "control function as JSON");
        sub->add_option("--family", family, "control family shortcut");
        sub->add_option("--kappa", kappa, "kappa for indicator/logistic control or flavor");
        sub->add_option("--p", p_const, "p for the constant control family");
        sub->add_option("--L", L, "box half-width");
        sub->add_option("--boundary", boundary, "periodic|absorbing");
        sub->add_option("--t-max", t_max, "stopping time cap");
        sub->add_option("--pop-cap", pop_cap, "stopping population cap");
        sub->add_option("--replicas", replicas, "number of replicas");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--threads", threads, "worker threads (0: PRP_THREADS/auto)");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format, "csv|json");
        sub->add_option("--op", op, "operation within the command");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run trajectories");
    add_common(simulate);
    CLI::App* meanfield = app.add_subcommand("meanfield", "stationary solutions and ODEs");
    add_common(meanfield);
    meanfield->add_option("--flavor", flavor, "logistic|selfreg");
    meanfield->add_option("--t-end", t_end, "integration horizon");
    meanfield->add_option("--dt", dt, "integration step");
    meanfield->add_option("--truncation", truncation, "state truncation");
    meanfield->add_option("--kappas", kappas, "kappa grid for kappa-sweep");
    CLI::App* chain = app.add_subcommand("chain", "embedded-walk analysis");
    add_common(chain);
    chain->add_option("--height", height, "truncation height (0 = automatic)");
    chain->add_option("--mass", mass, "total mass M for min-mean");
    chain->add_option("--phis", phis, "phi grid for chain sweep");
    CLI::App* brw = app.add_subcommand("brw", "branching random walk expectations");
    add_common(brw);
    brw->add_option("--t", t, "observation time");
    brw->add_option("--n", n, "path length (lazy/counts)");
    brw->add_option("--R", truncation, "box radius for the ODE oracle");
    brw->add_option("--dt", dt, "ODE step");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "survival sweep over a grid");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--lambdas", lambdas, "lambda grid");
    sweep_cmd->add_option("--phis", phis, "phi grid");
    sweep_cmd->add_option("--Ns", Ns, "patch size grid");
    CLI::App* critical = app.add_subcommand("critical", "bisect a critical parameter");
    add_common(critical);
    critical->add_option("--axis", axis, "lambda|phi");
    critical->add_option("--threshold", threshold, "survival threshold");
    critical->add_option("--tolerance", tolerance, "bracket width target");
    critical->add_option("--axis-max", axis_max, "auto-bracketing cap");
    critical->add_option("--initial-hi", initial_hi, "first bracketing probe");

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = nullptr;
    for (CLI::App* sub : {simulate, meanfield, chain, brw, sweep_cmd, critical})
        if (sub->parsed()) chosen = sub;
    if (!chosen) {
        std::cerr << app.help() << "\n";
        return 1;
    }
    cfg.command = chosen->get_name();

    try {
        auto set_if = [&](const char* flag, auto&& apply) {
            if (chosen->count(flag) > 0) apply();
        };
        set_if("--lambda", [&] { cfg.params.lambda = lambda; });
        set_if("--phi", [&] { cfg.params.phi = phi; });
        set_if("--d", [&] { cfg.params.d = d; });
        set_if("--N", [&] { cfg.params.N = N; });
        set_if("--control",
               [&] { cfg.params.control = control_from_json(Json::parse(control_json)); });
        set_if("--kappa", [&] { cfg.kappa = kappa; });
        if (chosen->count("--family") > 0) {
            if (family == "all_one") cfg.params.control = ControlFunction::all_one();
            else if (family == "indicator") cfg.params.control = ControlFunction::indicator(kappa);
            else if (family == "logistic") cfg.params.control = ControlFunction::logistic(kappa);
            else if (family == "constant") cfg.params.control = ControlFunction::constant(p_const);
            else throw ConfigError({"unknown control family shortcut: " + family});
        }
        set_if("--L", [&] { cfg.L = L; });
        set_if("--boundary", [&] { cfg.boundary = boundary_from_string(boundary); });
        set_if("--t-max", [&] { cfg.stopping.t_max = t_max; });
        set_if("--pop-cap", [&] { cfg.stopping.pop_cap = pop_cap; });
        set_if("--replicas", [&] { cfg.replicas = replicas; });
        set_if("--seed", [&] { cfg.seed = seed; });
        set_if("--threads", [&] { cfg.threads = threads; });
        set_if("--out", [&] { cfg.out = out_path; });
        set_if("--format", [&] { cfg.format = format; });
        set_if("--op", [&] { cfg.op = op; });
        if (chosen == meanfield) {
            set_if("--flavor", [&] { cfg.flavor = flavor; });
            set_if("--t-end", [&] { cfg.t_end = t_end; });
            set_if("--dt", [&] { cfg.dt = dt; });
            set_if("--truncation", [&] { cfg.truncation = truncation; });
            set_if("--kappas", [&] { cfg.kappas = kappas; });
            if (cfg.flavor == "logistic" && cfg.kappa == 0 && kappa > 0) cfg.kappa = kappa;
        }
        if (chosen == chain) {
            set_if("--height", [&] { cfg.height = height; });
            set_if("--mass", [&] { cfg.mass = mass; });
            set_if("--phis", [&] { cfg.phis = phis; });
        }
        if (chosen == brw) {
            set_if("--t", [&] { cfg.t = t; });
            set_if("--n", [&] { cfg.n = n; });
            set_if("--R", [&] { cfg.truncation = truncation; });
            set_if("--dt", [&] { cfg.dt = dt; });
        }
        if (chosen == sweep_cmd) {
            set_if("--lambdas", [&] { cfg.lambdas = lambdas; });
            set_if("--phis", [&] { cfg.phis = phis; });
            set_if("--Ns", [&] { cfg.Ns = Ns; });
        }
        if (chosen == critical) {
            set_if("--axis", [&] { cfg.axis = axis; });
            set_if("--threshold", [&] { cfg.threshold = threshold; });
            set_if("--tolerance", [&] { cfg.tolerance = tolerance; });
            set_if("--axis-max", [&] { cfg.axis_max = axis_max; });
            set_if("--initial-hi", [&] { cfg.initial_hi = initial_hi; });
        }
        validate_config(cfg);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 1;
    }

    try {
        if (cfg.command == "simulate") return cmd_simulate(cfg);
        if (cfg.command == "meanfield") return cmd_meanfield(cfg);
        if (cfg.command == "chain") return cmd_chain(cfg);
        if (cfg.command == "brw") return cmd_brw(cfg);
        if (cfg.command == "sweep") return cmd_sweep(cfg);
        if (cfg.command == "critical") return cmd_critical(cfg);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
