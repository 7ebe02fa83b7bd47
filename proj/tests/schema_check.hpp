// Validator for the JSON Schema keywords the summary schema uses: type,
// const, enum, required, properties, additionalProperties (false) and the
// four numeric bounds.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace schema_check {

using nlohmann::json;

inline bool has_type(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    return false;
}

inline void validate(const json& v, const json& s, const std::string& path, std::vector<std::string>& errors) {
    if (s.contains("type")) {
        bool ok = false;
        if (s["type"].is_array()) {
            for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
        } else {
            ok = has_type(v, s["type"].get<std::string>());
        }
        if (!ok) {
            errors.push_back(path + ": type " + s["type"].dump() + " expected, got " + v.dump());
            return;
        }
    }
    if (s.contains("const") && v != s["const"]) errors.push_back(path + ": const " + s["const"].dump());
    if (s.contains("enum")) {
        bool found = false;
        for (const auto& e : s["enum"]) found = found || e == v;
        if (!found) errors.push_back(path + ": " + v.dump() + " not in enum");
    }
    if (v.is_number()) {
        const double x = v.get<double>();
        if (s.contains("minimum") && x < s["minimum"].get<double>()) errors.push_back(path + ": below minimum");
        if (s.contains("maximum") && x > s["maximum"].get<double>()) errors.push_back(path + ": above maximum");
        if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>()) {
            errors.push_back(path + ": not above exclusiveMinimum");
        }
        if (s.contains("exclusiveMaximum") && x >= s["exclusiveMaximum"].get<double>()) {
            errors.push_back(path + ": not below exclusiveMaximum");
        }
    }
    if (v.is_object()) {
        if (s.contains("required")) {
            for (const auto& r : s["required"]) {
                if (!v.contains(r.get<std::string>())) errors.push_back(path + ": missing " + r.get<std::string>());
            }
        }
        const json props = s.value("properties", json::object());
        for (const auto& [key, val] : v.items()) {
            if (props.contains(key)) {
                validate(val, props[key], path + "/" + key, errors);
            } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
                errors.push_back(path + ": unexpected property " + key);
            }
        }
    }
}

inline std::vector<std::string> validate(const json& v, const json& schema) {
    std::vector<std::string> errors;
    validate(v, schema, "", errors);
    return errors;
}

}  // namespace schema_check
