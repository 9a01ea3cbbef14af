// A small JSON Schema checker covering the subset the shipped schemas use:
// type, properties, required, items, enum, additionalProperties, minItems.
// Returns human-readable violations instead of throwing.
#ifndef EXPOLY_SCHEMA_HPP
#define EXPOLY_SCHEMA_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace expoly {

namespace detail {

inline bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline void validate_at(const nlohmann::json& value, const nlohmann::json& schema,
                        const std::string& path, std::vector<std::string>& errors) {
    if (!schema.is_object()) return;

    if (schema.contains("type")) {
        const auto& t = schema.at("type");
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else if (t.is_array()) {
            for (const auto& alt : t)
                if (type_matches(value, alt.get<std::string>())) ok = true;
        }
        if (!ok) {
            errors.push_back(path + ": expected type " + t.dump());
            return;  // further checks would only cascade
        }
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema.at("enum"))
            if (alt == value) ok = true;
        if (!ok) errors.push_back(path + ": value not in enum " + schema.at("enum").dump());
    }

    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required property \"" +
                                     key.get<std::string>() + "\"");
        const auto props =
            schema.contains("properties") ? schema.at("properties") : nlohmann::json::object();
        for (auto it = value.begin(); it != value.end(); ++it) {
            const std::string child = path + "/" + it.key();
            if (props.contains(it.key())) {
                validate_at(it.value(), props.at(it.key()), child, errors);
            } else if (schema.contains("additionalProperties")) {
                const auto& ap = schema.at("additionalProperties");
                if (ap.is_boolean() && !ap.get<bool>())
                    errors.push_back(path + ": unexpected property \"" + it.key() + "\"");
                else if (ap.is_object())
                    validate_at(it.value(), ap, child, errors);
            }
        }
    }

    if (value.is_array()) {
        if (schema.contains("minItems") &&
            value.size() < schema.at("minItems").get<std::size_t>())
            errors.push_back(path + ": fewer than minItems elements");
        if (schema.contains("items")) {
            std::size_t k = 0;
            for (const auto& e : value)
                validate_at(e, schema.at("items"), path + "/" + std::to_string(k++), errors);
        }
    }
}

}  // namespace detail

/// All schema violations of value against schema; empty means valid.
inline std::vector<std::string> schema_violations(const nlohmann::json& value,
                                                  const nlohmann::json& schema) {
    std::vector<std::string> errors;
    detail::validate_at(value, schema, "#", errors);
    return errors;
}

}  // namespace expoly

#endif  // EXPOLY_SCHEMA_HPP
