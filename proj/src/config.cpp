#include "prp/config.hpp"

#include <nlohmann/json.hpp>
#include <set>

namespace prp {

std::string ConfigError::join(const std::vector<std::string>& issues) {
    std::string s = "invalid config:";
    for (const auto& i : issues) s += "\n  - " + i;
    return s;
}

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

namespace {

const std::set<std::string> kCommands = {"simulate", "meanfield", "chain",
                                         "brw",      "sweep",     "critical"};

const std::set<std::string> kKeys = {
    "command",   "params",    "geometry",  "stopping",  "replicas", "seed",
    "threads",   "out",       "format",    "op",        "flavor",   "kappa",
    "t",         "t_end",     "dt",        "truncation", "height",  "mass",
    "axis",      "threshold", "tolerance", "axis_max",  "initial_hi",
    "lambdas",   "phis",      "Ns",        "kappas",    "controls",  "n"};

}  // namespace

RunConfig config_from_json(const Json& j) {
    std::vector<std::string> issues;
    RunConfig c;

    if (!j.is_object()) throw ConfigError({"config must be a JSON object"});

    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKeys.count(it.key())) issues.push_back("unknown key: " + it.key());

    auto grab = [&](const char* key, auto&& fn) {
        if (!j.contains(key)) return;
        try {
            fn(j.at(key));
        } catch (const std::exception& e) {
            issues.push_back(std::string(key) + ": " + e.what());
        }
    };

    grab("command", [&](const Json& v) { c.command = v.get<std::string>(); });
    grab("params", [&](const Json& v) { c.params = params_from_json(v); });
    grab("geometry", [&](const Json& v) {
        if (!v.is_object()) throw std::invalid_argument("expected an object");
        for (auto it = v.begin(); it != v.end(); ++it)
            if (it.key() != "L" && it.key() != "boundary")
                throw std::invalid_argument("unknown key: " + it.key());
        if (v.contains("L")) c.L = v.at("L").get<int>();
        if (v.contains("boundary"))
            c.boundary = boundary_from_string(v.at("boundary").get<std::string>());
    });
    grab("stopping", [&](const Json& v) { c.stopping = stopping_from_json(v); });
    grab("replicas", [&](const Json& v) { c.replicas = v.get<long>(); });
    grab("seed", [&](const Json& v) { c.seed = v.get<std::uint64_t>(); });
    grab("threads", [&](const Json& v) { c.threads = v.get<int>(); });
    grab("out", [&](const Json& v) { c.out = v.get<std::string>(); });
    grab("format", [&](const Json& v) { c.format = v.get<std::string>(); });
    grab("op", [&](const Json& v) { c.op = v.get<std::string>(); });
    grab("flavor", [&](const Json& v) { c.flavor = v.get<std::string>(); });
    grab("kappa", [&](const Json& v) { c.kappa = v.get<long>(); });
    grab("t", [&](const Json& v) { c.t = v.get<double>(); });
    grab("t_end", [&](const Json& v) { c.t_end = v.get<double>(); });
    grab("dt", [&](const Json& v) { c.dt = v.get<double>(); });
    grab("truncation", [&](const Json& v) { c.truncation = v.get<long>(); });
    grab("height", [&](const Json& v) { c.height = v.get<long>(); });
    grab("mass", [&](const Json& v) { c.mass = v.get<long>(); });
    grab("n", [&](const Json& v) { c.n = v.get<long>(); });
    grab("axis", [&](const Json& v) { c.axis = v.get<std::string>(); });
    grab("threshold", [&](const Json& v) { c.threshold = v.get<double>(); });
    grab("tolerance", [&](const Json& v) { c.tolerance = v.get<double>(); });
    grab("axis_max", [&](const Json& v) { c.axis_max = v.get<double>(); });
    grab("initial_hi", [&](const Json& v) { c.initial_hi = v.get<double>(); });
    grab("lambdas", [&](const Json& v) { c.lambdas = v.get<std::vector<double>>(); });
    grab("phis", [&](const Json& v) { c.phis = v.get<std::vector<double>>(); });
    grab("Ns", [&](const Json& v) { c.Ns = v.get<std::vector<int>>(); });
    grab("kappas", [&](const Json& v) { c.kappas = v.get<std::vector<long>>(); });
    grab("controls", [&](const Json& v) {
        for (const Json& e : v) c.controls.push_back(control_from_json(e));
    });

    if (!issues.empty()) throw ConfigError(std::move(issues));
    validate_config(c);
    return c;
}

void validate_config(const RunConfig& c) {
    std::vector<std::string> issues;
    if (c.command.empty())
        issues.push_back("command is required (one of simulate, meanfield, chain, brw, sweep, critical)");
    else if (!kCommands.count(c.command))
        issues.push_back("unknown command: " + c.command);

    try {
        c.params.validate();
    } catch (const std::exception& e) {
        issues.push_back(e.what());
    }
    try {
        c.stopping.validate();
    } catch (const std::exception& e) {
        issues.push_back(e.what());
    }
    if (c.L < 0) issues.push_back("geometry: L must be >= 0");
    if (c.boundary == Boundary::Periodic && c.L < 1)
        issues.push_back("geometry: periodic boundary needs L >= 1");
    if (c.replicas < 1) issues.push_back("replicas must be >= 1");
    if (c.format != "csv" && c.format != "json")
        issues.push_back("format must be csv or json");
    if (c.command == "critical" && c.axis != "lambda" && c.axis != "phi")
        issues.push_back("axis must be lambda or phi");
    if (c.command == "critical" && !(c.threshold > 0.0 && c.threshold < 1.0))
        issues.push_back("threshold must lie in (0,1)");
    if (c.command == "critical" && !(c.tolerance > 0.0))
        issues.push_back("tolerance must be > 0");
    if (c.command == "meanfield" && c.flavor != "logistic" && c.flavor != "selfreg")
        issues.push_back("flavor must be logistic or selfreg");
    if (c.command == "meanfield" && c.flavor == "logistic" && c.kappa < 1)
        issues.push_back("logistic flavor requires kappa >= 1");
    if (!(c.dt > 0.0)) issues.push_back("dt must be > 0");
    if (c.t < 0.0) issues.push_back("t must be >= 0");

    if (!issues.empty()) throw ConfigError(std::move(issues));
}

Json config_to_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["params"] = params_to_json(c.params);
    j["geometry"] = Json{{"L", c.L}, {"boundary", boundary_name(c.boundary)}};
    j["stopping"] = stopping_to_json(c.stopping);
    j["replicas"] = c.replicas;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["out"] = c.out;
    j["format"] = c.format;
    j["op"] = c.op;
    j["flavor"] = c.flavor;
    j["kappa"] = c.kappa;
    j["t"] = c.t;
    j["t_end"] = c.t_end;
    j["dt"] = c.dt;
    j["truncation"] = c.truncation;
    j["height"] = c.height;
    j["mass"] = c.mass;
    j["n"] = c.n;
    j["axis"] = c.axis;
    j["threshold"] = c.threshold;
    j["tolerance"] = c.tolerance;
    j["axis_max"] = c.axis_max;
    j["initial_hi"] = c.initial_hi;
    j["lambdas"] = c.lambdas;
    j["phis"] = c.phis;
    j["Ns"] = c.Ns;
    j["kappas"] = c.kappas;
    Json ctrls = Json::array();
    for (const auto& ctl : c.controls) ctrls.push_back(control_to_json(ctl));
    j["controls"] = std::move(ctrls);
    return j;
}

}  // namespace prp
