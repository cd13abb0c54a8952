#include "prp/params.hpp"

#include <cmath>
#include <stdexcept>

namespace prp {

void Params::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("params: lambda must be finite and >= 0");
    if (!(phi >= 0.0) || !std::isfinite(phi))
        throw std::invalid_argument("params: phi must be finite and >= 0");
    if (d < 1) throw std::invalid_argument("params: d must be >= 1");
    if (N < 1) throw std::invalid_argument("params: N must be >= 1");
}

bool Params::operator==(const Params& o) const {
    return lambda == o.lambda && phi == o.phi && d == o.d && N == o.N &&
           control == o.control && lambda_includes_own_patch == o.lambda_includes_own_patch;
}

PresetKind preset_kind_from_string(const std::string& name) {
    if (name == "CP" || name == "cp") return PresetKind::CP;
    if (name == "BCP" || name == "bcp") return PresetKind::BCP;
    if (name == "LogisticIRP" || name == "logistic_irp") return PresetKind::LogisticIRP;
    if (name == "SelfRegIRP" || name == "selfreg_irp") return PresetKind::SelfRegIRP;
    if (name == "IRP" || name == "irp") return PresetKind::IRP;
    throw std::invalid_argument("unknown preset: " + name);
}

std::string preset_kind_name(PresetKind kind) {
    switch (kind) {
        case PresetKind::CP: return "CP";
        case PresetKind::BCP: return "BCP";
        case PresetKind::LogisticIRP: return "LogisticIRP";
        case PresetKind::SelfRegIRP: return "SelfRegIRP";
        case PresetKind::IRP: return "IRP";
    }
    return "?";
}

Params preset_cp(double lambda, int d, int N) {
    // phi = 0: the dynamics do not depend on the control function.
    Params p{lambda, 0.0, d, N, ControlFunction::all_one()};
    p.validate();
    return p;
}

Params preset_bcp(double lambda, double phi, int d, int N) {
    Params p{lambda, phi, d, N, ControlFunction::indicator(1)};
    p.validate();
    return p;
}

Params preset_logistic_irp(double lambda, double phi, long kappa, int d) {
    Params p{lambda, phi, d, 1, ControlFunction::logistic(kappa)};
    p.validate();
    return p;
}

Params preset_selfreg_irp(double lambda, double phi, ControlFunction control, int d) {
    Params p{lambda, phi, d, 1, std::move(control)};
    p.validate();
    return p;
}

Params preset_irp(double lambda, double phi, long kappa, int d) {
    Params p{lambda, phi, d, 1, ControlFunction::indicator(kappa)};
    p.validate();
    return p;
}

Params make_preset(PresetKind kind, const PresetArgs& args) {
    switch (kind) {
        case PresetKind::CP:
            return preset_cp(args.lambda, args.d, args.N);
        case PresetKind::BCP:
            return preset_bcp(args.lambda, args.phi, args.d, args.N);
        case PresetKind::LogisticIRP:
            if (!args.kappa)
                throw std::invalid_argument("preset LogisticIRP requires kappa");
            return preset_logistic_irp(args.lambda, args.phi, *args.kappa, args.d);
        case PresetKind::SelfRegIRP:
            if (!args.control)
                throw std::invalid_argument("preset SelfRegIRP requires a control function");
            return preset_selfreg_irp(args.lambda, args.phi, *args.control, args.d);
        case PresetKind::IRP:
            if (!args.kappa) throw std::invalid_argument("preset IRP requires kappa");
            return preset_irp(args.lambda, args.phi, *args.kappa, args.d);
    }
    throw std::invalid_argument("unknown preset kind");
}

}  // namespace prp
