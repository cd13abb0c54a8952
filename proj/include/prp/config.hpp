#ifndef PRP_CONFIG_HPP
#define PRP_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prp/json_io.hpp"

namespace prp {

/// All diagnostics collected while parsing/validating one config.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues);
    std::vector<std::string> issues_;
};

/// One resolved run: command, process parameters, box, stopping rule,
/// replication, seeding, output destination, and per-command knobs.
struct RunConfig {
    std::string command;

    Params params;
    int L = 128;
    Boundary boundary = Boundary::Periodic;
    Stopping stopping;
    long replicas = 100;
    std::uint64_t seed = 0;
    int threads = 0;  // 0: PRP_THREADS or hardware
    std::string out;  // empty: stdout
    std::string format = "csv";

    // command-specific
    std::string op;                   // operation within the command
    std::string flavor = "logistic";  // meanfield flavor
    long kappa = 0;
    double t = 1.0;        // brw observation time
    double t_end = 100.0;  // meanfield integration horizon
    double dt = 0.01;
    long truncation = 0;  // meanfield truncation (0 = automatic)
    long height = 0;      // chain truncation height (0 = automatic)
    long mass = 0;        // chain min-mean mass M
    long n = 8;  // brw path length / table depth
    std::string axis = "lambda";
    double threshold = 0.05;
    double tolerance = 0.02;
    double axis_max = 64.0;
    double initial_hi = 1.0;
    std::vector<double> lambdas;  // sweep grids
    std::vector<double> phis;
    std::vector<int> Ns;
    std::vector<long> kappas;
    std::vector<ControlFunction> controls;

    bool operator==(const RunConfig&) const = default;

    Geometry make_geometry() const { return {params.d, L, params.N, boundary}; }
};

/// Strict parse: unknown keys, type mismatches, and invariant violations
/// are all collected and reported together in one ConfigError.
RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);

/// Re-validates invariants (used after flag overrides); throws ConfigError
/// listing every violated constraint.
void validate_config(const RunConfig& c);

}  // namespace prp

#endif  // PRP_CONFIG_HPP
