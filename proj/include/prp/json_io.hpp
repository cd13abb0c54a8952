#ifndef PRP_JSON_IO_HPP
#define PRP_JSON_IO_HPP

#include <nlohmann/json_fwd.hpp>

#include "prp/control.hpp"
#include "prp/criticality.hpp"
#include "prp/geometry.hpp"
#include "prp/params.hpp"
#include "prp/simulator.hpp"

namespace prp {

using Json = nlohmann::json;

/// Control functions serialize as tagged objects, e.g.
///   {"family":"logistic","kappa":4}
///   {"family":"table","values":[[9,8],[8,9]],"tail":[1,2]}
/// Rationals accept either [num,den] pairs or plain numbers.
Json control_to_json(const ControlFunction& c);
ControlFunction control_from_json(const Json& j);

Json params_to_json(const Params& p);
Params params_from_json(const Json& j);

Json geometry_to_json(const Geometry& g);
Geometry geometry_from_json(const Json& j);

Json stopping_to_json(const Stopping& s);
Stopping stopping_from_json(const Json& j);

Json outcome_to_json(const Outcome& o);
Json survival_to_json(const SurvivalEstimate& e);

}  // namespace prp

#endif  // PRP_JSON_IO_HPP
