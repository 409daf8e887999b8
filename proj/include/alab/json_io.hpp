#pragma once

#include <string>

#include <json.hpp>

#include "alab/lattice.hpp"
#include "alab/laurent.hpp"

namespace alab {

/// Canonical JSON form: {"dims": d, "terms": [{"exp": [...], "coef": n}, ...]}.
/// Coefficients beyond 64-bit range are carried as decimal strings.
inline nlohmann::json poly_to_json(const LaurentPoly& f) {
    nlohmann::json terms = nlohmann::json::array();
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    for (const auto& [m, c] : f.terms()) {
        nlohmann::json t;
        t["exp"] = m;
        if (c >= lo && c <= hi)
            t["coef"] = c.convert_to<long long>();
        else
            t["coef"] = c.str();
        terms.push_back(std::move(t));
    }
    return nlohmann::json{{"dims", f.dims()}, {"terms", std::move(terms)}};
}

inline LaurentPoly poly_from_json(const nlohmann::json& j) {
    LaurentPoly f(j.at("dims").get<int>());
    for (const auto& t : j.at("terms")) {
        const Exponent m = t.at("exp").get<Exponent>();
        BigInt c;
        if (t.at("coef").is_string())
            c = BigInt(t.at("coef").get<std::string>());
        else
            c = BigInt(t.at("coef").get<long long>());
        f.add_term(m, c);
    }
    return f;
}

inline nlohmann::json torsion_to_json(const TorsionPoint& w) {
    nlohmann::json angles = nlohmann::json::array();
    for (const Rat& a : w.angles) angles.push_back(a.str());
    return nlohmann::json{{"angles", std::move(angles)}, {"order", w.order}};
}

}  // namespace alab
