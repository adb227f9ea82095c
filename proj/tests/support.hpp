#pragma once

// Shared helpers for the CLI and acceptance suites: subprocess execution,
// a small XML well-formedness check, and a JSON-schema subset validator
// (type/required/properties/items/enum/minimum/maximum — everything the
// shipped schema uses).

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace testsupport {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline RunResult run_command(const std::string& command, const std::string& work_dir) {
    RunResult result;
    std::string out_path = work_dir + "/cmd_stdout.txt";
    std::string err_path = work_dir + "/cmd_stderr.txt";
    std::string full = command + " >" + out_path + " 2>" + err_path;
    int status = std::system(full.c_str());
    if (status == -1)
        result.exit_code = -1;
    else if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else
        result.exit_code = 128;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

// Minimal XML well-formedness: tags balance, attributes quoted, one root.
inline bool xml_well_formed(const std::string& text, std::string* why = nullptr) {
    auto fail = [&](const std::string& message) {
        if (why) *why = message;
        return false;
    };
    std::vector<std::string> stack;
    std::size_t i = 0;
    int roots = 0;
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        std::size_t start = i++;
        bool closing = i < text.size() && text[i] == '/';
        bool declaration = i < text.size() && text[i] == '?';
        if (closing || declaration) ++i;
        std::size_t name_start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '-' || text[i] == '_' || text[i] == ':'))
            ++i;
        std::string name = text.substr(name_start, i - name_start);
        if (name.empty()) return fail("empty tag name at offset " + std::to_string(start));
        // scan to '>' honoring quotes
        char quote = 0;
        bool self_closing = false;
        while (i < text.size()) {
            char c = text[i];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                break;
            } else if (c == '/') {
                self_closing = true;
            } else if (c == '<') {
                return fail("nested '<' inside tag " + name);
            } else if (c == '?') {
                // declaration end
            }
            ++i;
        }
        if (i >= text.size()) return fail("unterminated tag " + name);
        ++i; // consume '>'
        if (declaration) continue;
        if (closing) {
            if (stack.empty() || stack.back() != name)
                return fail("mismatched closing tag " + name);
            stack.pop_back();
            continue;
        }
        if (self_closing) {
            if (stack.empty()) ++roots;
            continue;
        }
        if (stack.empty()) ++roots;
        stack.push_back(name);
    }
    if (!stack.empty()) return fail("unclosed tag " + stack.back());
    if (roots != 1) return fail("expected exactly one root element, got " + std::to_string(roots));
    return true;
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// --- JSON-schema subset validation ---

inline bool type_matches(const std::string& type, const nlohmann::json& value) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline void validate_schema(const nlohmann::json& schema, const nlohmann::json& value,
                            const std::string& path, std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(t.get<std::string>(), value);
        } else {
            for (const auto& option : t)
                if (type_matches(option.get<std::string>(), value)) ok = true;
        }
        if (!ok) {
            errors.push_back(path + ": type mismatch (got " + std::string(value.type_name()) + ")");
            return;
        }
    }
    if (value.is_null()) return; // nullable field: nothing further to check
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& option : schema["enum"])
            if (option == value) ok = true;
        if (!ok) errors.push_back(path + ": value not in enum");
    }
    if (value.is_number()) {
        if (schema.contains("minimum") && value.get<double>() < schema["minimum"].get<double>())
            errors.push_back(path + ": below minimum");
        if (schema.contains("maximum") && value.get<double>() > schema["maximum"].get<double>())
            errors.push_back(path + ": above maximum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required key '" + key.get<std::string>() +
                                     "'");
        if (schema.contains("properties")) {
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
                if (value.contains(it.key()))
                    validate_schema(it.value(), value[it.key()], path + "." + it.key(), errors);
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i)
            validate_schema(schema["items"], value[i], path + "[" + std::to_string(i) + "]",
                            errors);
    }
}

inline std::vector<std::string> schema_errors(const nlohmann::json& schema,
                                              const nlohmann::json& value) {
    std::vector<std::string> errors;
    validate_schema(schema, value, "$", errors);
    return errors;
}

} // namespace testsupport
