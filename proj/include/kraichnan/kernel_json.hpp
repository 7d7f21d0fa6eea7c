#pragma once

// JSON form of kernel specifications, e.g.
//   {"family":"constant","C":1}
//   {"family":"exponential","c":1,"delta":0.5}
//   {"family":"mixed_exponential","c2":1,"c1":1,"delta":1}
//   {"family":"power_law","C":1,"a":2}
//   {"family":"algebraic_mixed","c2":1,"c1":1,"a":2}
//   {"family":"separable","h":[...],"step":0.01}
//   {"family":"ratio_flat","C":1,"a":1,"stationary_part":{...}|null}

#include <string>

#include <json.hpp>

#include "kraichnan/kernel.hpp"

namespace kraichnan {

inline nlohmann::json kernel_to_json(const KernelSpec& k) {
    using namespace kernels;
    nlohmann::json j;
    j["family"] = family_name(k);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                j["C"] = v.C;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                j["c"] = v.c;
                j["delta"] = v.delta;
            } else if constexpr (std::is_same_v<T, MixedExponential>) {
                j["c2"] = v.c2;
                j["c1"] = v.c1;
                j["delta"] = v.delta;
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                j["C"] = v.C;
                j["a"] = v.a;
            } else if constexpr (std::is_same_v<T, AlgebraicMixed>) {
                j["c2"] = v.c2;
                j["c1"] = v.c1;
                j["a"] = v.a;
            } else if constexpr (std::is_same_v<T, Separable>) {
                j["h"] = v.h;
                j["step"] = v.step;
            } else {
                j["C"] = v.C;
                j["a"] = v.a;
                j["stationary_part"] =
                    v.stationary_part ? kernel_to_json(*v.stationary_part)
                                      : nlohmann::json(nullptr);
            }
        },
        k.variant());
    return j;
}

namespace detail {

inline double json_number(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw usage_error(std::string("kernel JSON: missing numeric field '") + field + "'");
    return j[field].get<double>();
}

} // namespace detail

inline KernelSpec kernel_from_json(const nlohmann::json& j) {
    using detail::json_number;
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw usage_error("kernel JSON: expected object with string field 'family'");
    const std::string family = j["family"].get<std::string>();
    try {
        if (family == "constant")
            return KernelSpec::constant(json_number(j, "C"));
        if (family == "exponential")
            return KernelSpec::exponential(json_number(j, "c"), json_number(j, "delta"));
        if (family == "mixed_exponential")
            return KernelSpec::mixed_exponential(json_number(j, "c2"), json_number(j, "c1"),
                                                 json_number(j, "delta"));
        if (family == "power_law")
            return KernelSpec::power_law(json_number(j, "C"), json_number(j, "a"));
        if (family == "algebraic_mixed")
            return KernelSpec::algebraic_mixed(json_number(j, "c2"), json_number(j, "c1"),
                                               json_number(j, "a"));
        if (family == "separable") {
            if (!j.contains("h") || !j["h"].is_array())
                throw usage_error("kernel JSON: separable kernel needs array field 'h'");
            return KernelSpec::separable(j["h"].get<std::vector<double>>(),
                                         json_number(j, "step"));
        }
        if (family == "ratio_flat") {
            const double C = json_number(j, "C");
            const double a = json_number(j, "a");
            if (j.contains("stationary_part") && !j["stationary_part"].is_null())
                return KernelSpec::ratio_flat(C, a, kernel_from_json(j["stationary_part"]));
            return KernelSpec::ratio_flat(C, a);
        }
    } catch (const domain_error& e) {
        throw usage_error(std::string("kernel JSON: ") + e.what());
    }
    throw usage_error("kernel JSON: unknown family '" + family + "'");
}

inline KernelSpec kernel_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw usage_error("kernel JSON: parse failure");
    return kernel_from_json(j);
}

} // namespace kraichnan
