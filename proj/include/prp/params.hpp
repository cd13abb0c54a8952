#ifndef PRP_PARAMS_HPP
#define PRP_PARAMS_HPP

#include <string>

#include "prp/control.hpp"

namespace prp {

/// Full parameterization of one process: inter-patch rate lambda (per
/// neighboring patch, per particle), intra-patch rate phi (per particle),
/// lattice dimension d, patch size N, and the control function. The death
/// rate is fixed at 1 per particle.
struct Params {
    double lambda = 0.0;
    double phi = 0.0;
    int d = 1;
    int N = 1;
    ControlFunction control;
    /// When set, the inter-patch sum also includes the particle's own patch.
    /// Off by default: a particle breeds into its own patch only at rate phi.
    bool lambda_includes_own_patch = false;

    void validate() const;
    bool operator==(const Params&) const;
};

enum class PresetKind { CP, BCP, LogisticIRP, SelfRegIRP, IRP };

PresetKind preset_kind_from_string(const std::string& name);
std::string preset_kind_name(PresetKind kind);

/// Named special cases.
Params preset_cp(double lambda, int d = 1, int N = 1);
Params preset_bcp(double lambda, double phi, int d = 1, int N = 1);
Params preset_logistic_irp(double lambda, double phi, long kappa, int d = 1);
Params preset_selfreg_irp(double lambda, double phi, ControlFunction control, int d = 1);
Params preset_irp(double lambda, double phi, long kappa, int d = 1);

struct PresetArgs {
    double lambda = 0.0;
    double phi = 0.0;
    int d = 1;
    int N = 1;
    std::optional<long> kappa;
    std::optional<ControlFunction> control;
};

/// Dispatch by kind; throws std::invalid_argument when a kappa-indexed
/// preset is requested without kappa.
Params make_preset(PresetKind kind, const PresetArgs& args);

}  // namespace prp

#endif  // PRP_PARAMS_HPP
