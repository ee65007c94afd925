#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cycert/errors.hpp"
#include "cycert/parser.hpp"
#include "cycert/toric.hpp"
#include "cycert/transverse.hpp"

namespace cycert {

struct FamilySpec {
    std::string expression;  // contains the parameter as an identifier
    std::string param;
    long from = 0;
    long to = 0;
};

/// Parsed cone-spec document: a human-writable key/value text file
/// describing a cone presentation, its smoothing, and optional toric data.
struct ConeSpec {
    std::string name;
    std::vector<std::string> variables;
    bool toric_weights = false;
    std::vector<std::string> weight_exprs;
    std::optional<ToricDiagram> diagram;
    std::optional<std::pair<long, long>> toric_family;  // (k, l)
    std::vector<std::string> polynomial_exprs;
    std::vector<std::string> degree_exprs;   // optional; inferred when empty
    std::vector<std::size_t> singular_axes;  // 0-based
    std::vector<std::string> smoothing_exprs;
    std::string epsilon0_expr = "1";
    bool orbifold_attestation = false;
    std::optional<FamilySpec> family;
};

namespace conespec_detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string word;
    while (in >> word) out.push_back(word);
    return out;
}

inline long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigurationError("cannot parse integer '" + s + "' for " + what);
    }
}

}  // namespace conespec_detail

/// Parses the cone-spec text format: one "key: value" entry per line, '#'
/// comments, repeated "polynomial:"/"smoothing:" lines for complete
/// intersections. See the README for the full key list.
inline ConeSpec parse_conespec(const std::string& text) {
    using namespace conespec_detail;
    ConeSpec spec;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool saw_variables = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ConfigurationError("line " + std::to_string(line_no) +
                                     ": expected 'key: value'");
        std::string key = trim(line.substr(0, colon));
        std::string value = trim(line.substr(colon + 1));

        if (key == "name") {
            spec.name = value;
        } else if (key == "variables") {
            spec.variables = split_ws(value);
            saw_variables = true;
        } else if (key == "weights") {
            if (value == "toric") {
                spec.toric_weights = true;
            } else {
                spec.weight_exprs = split(value, ',');
            }
        } else if (key == "toric_diagram") {
            ToricDiagram d;
            std::string cleaned;
            for (char c : value) cleaned += (c == '(' || c == ')' || c == ',') ? ' ' : c;
            auto nums = split_ws(cleaned);
            if (nums.empty() || nums.size() % 2 != 0)
                throw ConfigurationError("toric_diagram expects pairs of integers");
            for (std::size_t i = 0; i + 1 < nums.size(); i += 2)
                d.points.push_back({parse_long(nums[i], "toric_diagram"),
                                    parse_long(nums[i + 1], "toric_diagram")});
            spec.diagram = d;
        } else if (key == "toric_family") {
            auto parts = split_ws(value);
            if (parts.size() != 2)
                throw ConfigurationError("toric_family expects two integers k l");
            spec.toric_family = {parse_long(parts[0], "toric_family"),
                                 parse_long(parts[1], "toric_family")};
        } else if (key == "polynomial" || key == "polynomials") {
            for (const auto& p : split(value, ';'))
                if (!p.empty()) spec.polynomial_exprs.push_back(p);
        } else if (key == "degrees") {
            spec.degree_exprs = split(value, ',');
        } else if (key == "singular_axes") {
            std::string cleaned;
            for (char c : value) cleaned += c == ',' ? ' ' : c;
            for (const auto& a : split_ws(cleaned)) {
                long axis = parse_long(a, "singular_axes");
                if (axis < 1) throw ConfigurationError("singular_axes are 1-based");
                spec.singular_axes.push_back(static_cast<std::size_t>(axis - 1));
            }
        } else if (key == "smoothing" || key == "smoothings") {
            for (const auto& q : split(value, ';'))
                if (!q.empty()) spec.smoothing_exprs.push_back(q);
        } else if (key == "epsilon0") {
            spec.epsilon0_expr = value;
        } else if (key == "orbifold_attestation") {
            if (value == "yes" || value == "true") spec.orbifold_attestation = true;
            else if (value == "no" || value == "false") spec.orbifold_attestation = false;
            else throw ConfigurationError("orbifold_attestation expects yes or no");
        } else if (key == "family") {
            // "z1^m + 1 ; m = 1 .. 8"
            auto parts = split(value, ';');
            if (parts.size() != 2)
                throw ConfigurationError("family expects '<expression> ; <param> = a .. b'");
            FamilySpec fam;
            fam.expression = parts[0];
            std::string range = parts[1];
            std::size_t eq = range.find('=');
            if (eq == std::string::npos)
                throw ConfigurationError("family range expects '<param> = a .. b'");
            fam.param = trim(range.substr(0, eq));
            std::string bounds = range.substr(eq + 1);
            std::size_t dots = bounds.find("..");
            if (dots == std::string::npos)
                throw ConfigurationError("family range expects '<param> = a .. b'");
            fam.from = parse_long(trim(bounds.substr(0, dots)), "family range");
            fam.to = parse_long(trim(bounds.substr(dots + 2)), "family range");
            if (fam.param.empty() || fam.to < fam.from)
                throw ConfigurationError("family range is empty or unnamed");
            spec.family = fam;
        } else {
            throw ConfigurationError("line " + std::to_string(line_no) + ": unknown key '" +
                                     key + "'");
        }
    }
    if (spec.name.empty()) throw ConfigurationError("cone spec needs a name");
    if (!saw_variables || spec.variables.empty())
        throw ConfigurationError("cone spec needs a variables line");
    if (spec.polynomial_exprs.empty())
        throw ConfigurationError("cone spec needs at least one polynomial");
    if (!spec.toric_weights && spec.weight_exprs.size() != spec.variables.size())
        throw ConfigurationError("weights must list one entry per variable, or 'toric'");
    return spec;
}

/// Substitutes an integer parameter value into a family expression by
/// replacing the standalone identifier.
inline std::string substitute_param(const std::string& expression, const std::string& param,
                                    long value) {
    std::string out;
    std::size_t i = 0;
    auto is_ident = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (i < expression.size()) {
        if (is_ident(expression[i])) {
            std::size_t start = i;
            while (i < expression.size() && is_ident(expression[i])) ++i;
            std::string word = expression.substr(start, i - start);
            out += (word == param) ? std::to_string(value) : word;
        } else {
            out += expression[i++];
        }
    }
    return out;
}

}  // namespace cycert
