#include "prp/json_io.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace prp {

namespace {

Json rational_to_json(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1 && num >= -(1LL << 53) && num <= (1LL << 53))
        return Json(num.convert_to<long long>());
    return Json::array({num.str(), den.str()});
}

Rational rational_from_json(const Json& j) {
    if (j.is_number()) return Rational(j.get<double>());
    if (j.is_array() && j.size() == 2) {
        auto parse = [](const Json& v) -> boost::multiprecision::cpp_int {
            if (v.is_string()) return boost::multiprecision::cpp_int(v.get<std::string>());
            return boost::multiprecision::cpp_int(v.get<long long>());
        };
        return Rational(parse(j[0]), parse(j[1]));
    }
    throw std::invalid_argument("rational: expected a number or a [num,den] pair");
}

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    std::string bad;
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) bad += (bad.empty() ? "" : ", ") + it.key();
    }
    if (!bad.empty())
        throw std::invalid_argument(where + ": unknown keys: " + bad);
}

}  // namespace

Json control_to_json(const ControlFunction& c) {
    Json j;
    j["family"] = family_name(c.family());
    switch (c.family()) {
        case ControlFamily::AllOne: break;
        case ControlFamily::Indicator:
        case ControlFamily::Logistic:
            j["kappa"] = c.kappa();
            break;
        case ControlFamily::Constant:
            j["p"] = c.constant_p();
            break;
        case ControlFamily::Table: {
            Json vals = Json::array();
            for (const Rational& v : c.table_values()) vals.push_back(rational_to_json(v));
            j["values"] = std::move(vals);
            j["tail"] = rational_to_json(c.table_tail());
            break;
        }
        case ControlFamily::SquareRatio:
            j["a"] = c.ratio_a();
            j["b"] = c.ratio_b();
            j["scale"] = rational_to_json(c.ratio_scale());
            break;
    }
    return j;
}

ControlFunction control_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw std::invalid_argument("control: expected an object with a 'family' key");
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "all_one") {
        require_keys(j, {"family"}, "control(all_one)");
        return ControlFunction::all_one();
    }
    if (fam == "indicator" || fam == "logistic") {
        require_keys(j, {"family", "kappa"}, "control(" + fam + ")");
        if (!j.contains("kappa"))
            throw std::invalid_argument("control(" + fam + "): missing kappa");
        const long kappa = j.at("kappa").get<long>();
        return fam == "indicator" ? ControlFunction::indicator(kappa)
                                  : ControlFunction::logistic(kappa);
    }
    if (fam == "constant") {
        require_keys(j, {"family", "p"}, "control(constant)");
        return ControlFunction::constant(j.at("p").get<double>());
    }
    if (fam == "table") {
        require_keys(j, {"family", "values", "tail"}, "control(table)");
        std::vector<Rational> vals;
        for (const Json& v : j.at("values")) vals.push_back(rational_from_json(v));
        return ControlFunction::table(std::move(vals), rational_from_json(j.at("tail")));
    }
    if (fam == "square_ratio") {
        require_keys(j, {"family", "a", "b", "scale"}, "control(square_ratio)");
        return ControlFunction::square_ratio(j.at("a").get<long>(), j.at("b").get<long>(),
                                             rational_from_json(j.at("scale")));
    }
    throw std::invalid_argument("control: unknown family '" + fam + "'");
}

Json params_to_json(const Params& p) {
    Json j;
    j["lambda"] = p.lambda;
    j["phi"] = p.phi;
    j["d"] = p.d;
    j["N"] = p.N;
    j["control"] = control_to_json(p.control);
    if (p.lambda_includes_own_patch) j["lambda_includes_own_patch"] = true;
    return j;
}

Params params_from_json(const Json& j) {
    require_keys(j, {"lambda", "phi", "d", "N", "control", "lambda_includes_own_patch"},
                 "params");
    Params p;
    if (j.contains("lambda")) p.lambda = j.at("lambda").get<double>();
    if (j.contains("phi")) p.phi = j.at("phi").get<double>();
    if (j.contains("d")) p.d = j.at("d").get<int>();
    if (j.contains("N")) p.N = j.at("N").get<int>();
    if (j.contains("control")) p.control = control_from_json(j.at("control"));
    if (j.contains("lambda_includes_own_patch"))
        p.lambda_includes_own_patch = j.at("lambda_includes_own_patch").get<bool>();
    p.validate();
    return p;
}

Json geometry_to_json(const Geometry& g) {
    return Json{{"d", g.d()},
                {"L", g.half_width()},
                {"N", g.N()},
                {"boundary", boundary_name(g.boundary())}};
}

Geometry geometry_from_json(const Json& j) {
    require_keys(j, {"d", "L", "N", "boundary"}, "geometry");
    const int d = j.value("d", 1);
    const int L = j.value("L", 128);
    const int N = j.value("N", 1);
    const Boundary b = boundary_from_string(j.value("boundary", std::string("periodic")));
    return Geometry(d, L, N, b);
}

Json stopping_to_json(const Stopping& s) {
    return Json{{"t_max", s.t_max}, {"pop_cap", s.pop_cap}};
}

Stopping stopping_from_json(const Json& j) {
    require_keys(j, {"t_max", "pop_cap"}, "stopping");
    Stopping s;
    s.t_max = j.value("t_max", 200.0);
    s.pop_cap = j.value("pop_cap", 2000L);
    s.validate();
    return s;
}

Json outcome_to_json(const Outcome& o) {
    return Json{{"status", outcome_status_name(o.status)},
                {"time", o.time},
                {"events", o.events},
                {"peak_population", o.peak_population},
                {"final_population", o.final_population}};
}

Json survival_to_json(const SurvivalEstimate& e) {
    return Json{{"replicas", e.replicas}, {"survivors", e.survivors},
                {"point", e.point()},     {"ci_lo", e.ci_lo},
                {"ci_hi", e.ci_hi},       {"stopping", stopping_to_json(e.stopping)},
                {"seed", e.seed}};
}

}  // namespace prp
