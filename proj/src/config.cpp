#include "zmclab/config.hpp"

#include "zmclab/errors.hpp"
#include "zmclab/io.hpp"

#include "json.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace zmclab {

namespace {

struct ConfigValue {
    enum class Kind { string, number, boolean, array, nested };
    Kind kind = Kind::number;
    std::string str;
    double num = 0;
    bool flag = false;
    std::vector<double> arr;
    std::vector<std::vector<double>> nested;
};

using ConfigMap = std::map<std::string, ConfigValue>;

[[noreturn]] void bad(const std::string& what) { raise(errc::config_error, what); }

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
}

double parse_number(const std::string& tok, const std::string& where) {
    std::string t = trim(tok);
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty()) bad(where + ": empty number");
    double value = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        bad(where + ": not a number: '" + trim(tok) + "'");
    return value;
}

/// Parse a (possibly nested) numeric array starting at s[pos] == '['.
ConfigValue parse_array(const std::string& s, std::size_t& pos, const std::string& where) {
    ConfigValue v;
    v.kind = ConfigValue::Kind::array;
    bool saw_scalar = false, saw_array = false;
    ++pos;  // consume '['
    for (;;) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size()) bad(where + ": unterminated array");
        if (s[pos] == ']') {
            ++pos;
            break;
        }
        if (s[pos] == '[') {
            ConfigValue inner = parse_array(s, pos, where);
            if (inner.kind != ConfigValue::Kind::array)
                bad(where + ": arrays nest at most one level");
            v.nested.push_back(inner.arr);
            saw_array = true;
        } else {
            std::size_t end = pos;
            while (end < s.size() && s[end] != ',' && s[end] != ']') ++end;
            v.arr.push_back(parse_number(s.substr(pos, end - pos), where));
            pos = end;
            saw_scalar = true;
        }
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size()) bad(where + ": unterminated array");
        if (s[pos] == ',') {
            ++pos;
        } else if (s[pos] != ']') {
            bad(where + ": expected ',' or ']' in array");
        }
    }
    if (saw_scalar && saw_array) bad(where + ": array mixes numbers and arrays");
    if (saw_array) v.kind = ConfigValue::Kind::nested;
    return v;
}

ConfigValue parse_value(const std::string& raw, const std::string& where) {
    std::string s = trim(raw);
    if (s.empty()) bad(where + ": missing value");
    ConfigValue v;
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') bad(where + ": unterminated string");
        v.kind = ConfigValue::Kind::string;
        v.str = s.substr(1, s.size() - 2);
        if (v.str.find('"') != std::string::npos) bad(where + ": stray quote in string");
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = ConfigValue::Kind::boolean;
        v.flag = (s == "true");
        return v;
    }
    if (s.front() == '[') {
        std::size_t pos = 0;
        ConfigValue a = parse_array(s, pos, where);
        if (trim(s.substr(pos)) != "") bad(where + ": trailing characters after array");
        return a;
    }
    v.kind = ConfigValue::Kind::number;
    v.num = parse_number(s, where);
    return v;
}

std::string strip_comment(const std::string& line) {
    std::string out;
    bool in_string = false;
    for (char c : line) {
        if (c == '"') in_string = !in_string;
        if (c == '#' && !in_string) break;
        out += c;
    }
    return out;
}

int bracket_balance(const std::string& s) {
    int depth = 0;
    bool in_string = false;
    for (char c : s) {
        if (c == '"') in_string = !in_string;
        if (in_string) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
    }
    return depth;
}

ConfigMap toml_map(const std::string& text) {
    ConfigMap map;
    std::string prefix;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string logical = strip_comment(line);
        // Arrays may span lines; keep appending until brackets balance.
        while (bracket_balance(logical) > 0 && pos <= text.size()) {
            std::size_t nl2 = text.find('\n', pos);
            std::string cont =
                text.substr(pos, nl2 == std::string::npos ? std::string::npos : nl2 - pos);
            pos = (nl2 == std::string::npos) ? text.size() + 1 : nl2 + 1;
            ++line_no;
            logical += ' ';
            logical += strip_comment(cont);
        }
        std::string t = trim(logical);
        if (t.empty()) continue;
        std::string where = "config line " + std::to_string(line_no);
        if (t.front() == '[') {
            // A section header, not an array: "[name]".
            if (t.back() != ']') bad(where + ": malformed section header");
            std::string name = trim(t.substr(1, t.size() - 2));
            if (!valid_key(name)) bad(where + ": invalid section name '" + name + "'");
            prefix = name + ".";
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) bad(where + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        if (!valid_key(key)) bad(where + ": invalid key '" + key + "'");
        std::string full = prefix + key;
        if (map.count(full)) bad(where + ": duplicate key '" + full + "'");
        map[full] = parse_value(t.substr(eq + 1), where + " (" + full + ")");
    }
    return map;
}

ConfigValue json_value(const nlohmann::json& j, const std::string& where) {
    ConfigValue v;
    if (j.is_string()) {
        v.kind = ConfigValue::Kind::string;
        v.str = j.get<std::string>();
        return v;
    }
    if (j.is_boolean()) {
        v.kind = ConfigValue::Kind::boolean;
        v.flag = j.get<bool>();
        return v;
    }
    if (j.is_number()) {
        v.kind = ConfigValue::Kind::number;
        v.num = j.get<double>();
        return v;
    }
    if (j.is_array()) {
        bool scalar = false, nested = false;
        for (const auto& e : j) {
            if (e.is_number()) {
                scalar = true;
            } else if (e.is_array()) {
                nested = true;
                for (const auto& inner : e)
                    if (!inner.is_number()) bad(where + ": arrays nest at most one level");
            } else {
                bad(where + ": array elements must be numbers or numeric arrays");
            }
        }
        if (scalar && nested) bad(where + ": array mixes numbers and arrays");
        if (nested) {
            v.kind = ConfigValue::Kind::nested;
            for (const auto& e : j) v.nested.push_back(e.get<std::vector<double>>());
        } else {
            v.kind = ConfigValue::Kind::array;
            if (scalar) v.arr = j.get<std::vector<double>>();
        }
        return v;
    }
    bad(where + ": unsupported value type");
}

ConfigMap json_map(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) bad("config: invalid JSON");
    if (!doc.is_object()) bad("config: top level must be an object");
    ConfigMap map;
    for (const auto& [key, value] : doc.items()) {
        if (!valid_key(key)) bad("config: invalid key '" + key + "'");
        if (value.is_object()) {
            for (const auto& [sub, inner] : value.items()) {
                if (!valid_key(sub)) bad("config: invalid key '" + key + "." + sub + "'");
                map[key + "." + sub] = json_value(inner, "config key " + key + "." + sub);
            }
        } else {
            map[key] = json_value(value, "config key " + key);
        }
    }
    return map;
}

int as_int(const ConfigValue& v, const std::string& key) {
    if (v.kind != ConfigValue::Kind::number) bad("config key " + key + ": expected a number");
    if (!(std::floor(v.num) == v.num) || std::abs(v.num) > 1e9)
        bad("config key " + key + ": expected an integer");
    return static_cast<int>(v.num);
}

double as_number(const ConfigValue& v, const std::string& key) {
    if (v.kind != ConfigValue::Kind::number) bad("config key " + key + ": expected a number");
    return v.num;
}

std::string as_string(const ConfigValue& v, const std::string& key) {
    if (v.kind != ConfigValue::Kind::string) bad("config key " + key + ": expected a string");
    return v.str;
}

bool as_bool(const ConfigValue& v, const std::string& key) {
    if (v.kind != ConfigValue::Kind::boolean) bad("config key " + key + ": expected true/false");
    return v.flag;
}

std::vector<double> as_array(const ConfigValue& v, const std::string& key, int size = -1) {
    if (v.kind != ConfigValue::Kind::array)
        bad("config key " + key + ": expected a numeric array");
    if (size >= 0 && v.arr.size() != static_cast<std::size_t>(size))
        bad("config key " + key + ": expected " + std::to_string(size) + " entries");
    return v.arr;
}

RunConfig from_map(const ConfigMap& map) {
    RunConfig cfg;
    for (const auto& [key, value] : map) {
        if (key == "command") {
            cfg.command = as_string(value, key);
        } else if (key == "input") {
            cfg.input = as_string(value, key);
        } else if (key == "order") {
            cfg.order = as_int(value, key);
        } else if (key == "box") {
            auto b = as_array(value, key, 4);
            cfg.x0 = b[0];
            cfg.x1 = b[1];
            cfg.y0 = b[2];
            cfg.y1 = b[3];
        } else if (key == "grid") {
            auto g = as_array(value, key, 2);
            if (std::floor(g[0]) != g[0] || std::floor(g[1]) != g[1])
                bad("config key grid: expected integer counts");
            cfg.nx = static_cast<int>(g[0]);
            cfg.ny = static_cast<int>(g[1]);
        } else if (key == "tol") {
            cfg.tol = as_number(value, key);
        } else if (key == "band_tol") {
            cfg.band_tol = as_number(value, key);
        } else if (key == "out") {
            cfg.out = as_string(value, key);
        } else if (key == "json") {
            cfg.json = as_bool(value, key);
        } else if (key == "u" || key == "initial.u") {
            cfg.u = as_array(value, key);
        } else if (key == "v" || key == "initial.v") {
            cfg.v = as_array(value, key);
        } else if (key == "phi") {
            if (value.kind == ConfigValue::Kind::array && value.arr.empty()) {
                cfg.phi.clear();
            } else if (value.kind == ConfigValue::Kind::nested) {
                for (const auto& row : value.nested) {
                    if (row.size() != 3)
                        bad("config key phi: each entry must be [j, k, c]");
                    cfg.phi.push_back({row[0], row[1], row[2]});
                }
            } else {
                bad("config key phi: expected [[j, k, c], ...] or []");
            }
        } else if (key == "k") {
            cfg.k_max = as_int(value, key);
        } else if (key == "ygrid") {
            auto g = as_array(value, key, 2);
            cfg.ode_y0 = g[0];
            cfg.ode_y1 = g[1];
        } else if (key == "step") {
            cfg.ode_step = as_number(value, key);
        } else if (key == "curve") {
            cfg.curve = as_string(value, key);
        } else if (key == "c0") {
            cfg.c0 = as_array(value, key);
        } else if (key == "c1") {
            cfg.c1 = as_array(value, key);
        } else if (key == "c2") {
            cfg.c2 = as_array(value, key);
        } else if (key == "t0") {
            cfg.t0 = as_number(value, key);
        } else if (key == "t1") {
            cfg.t1 = as_number(value, key);
        } else if (key == "base") {
            cfg.base = as_string(value, key);
        } else if (key == "ellipse_a") {
            cfg.ellipse_a = as_number(value, key);
        } else if (key == "psi") {
            cfg.psi = as_array(value, key);
        } else if (key == "branch") {
            cfg.branch = as_string(value, key);
        } else if (key == "eps") {
            cfg.eps = as_number(value, key);
        } else if (key == "entry") {
            cfg.entry = as_string(value, key);
        } else {
            bad("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

} // namespace

RunConfig config_from_toml(const std::string& text) { return from_map(toml_map(text)); }

RunConfig config_from_json(const std::string& text) { return from_map(json_map(text)); }

RunConfig load_config(const std::string& path) {
    std::string text = read_file(path);
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return config_from_json(text);
    return config_from_toml(text);
}

void validate_config(const RunConfig& cfg) {
    static const char* commands[] = {"construct", "classify", "approx", "bjorling",
                                     "ruled",     "verify",   "gallery", "export"};
    bool known = false;
    for (const char* c : commands)
        if (cfg.command == c) known = true;
    if (!known) bad("config: unknown command '" + cfg.command + "'");
    if (cfg.order < 4) bad("config: order must be at least 4");
    if (cfg.nx < 2 || cfg.ny < 2) bad("config: grid counts must be at least 2");
    if (!(cfg.tol > 0)) bad("config: tol must be positive");
    if (!(cfg.band_tol > 0)) bad("config: band_tol must be positive");
    if (!(cfg.x0 < cfg.x1) || !(cfg.y0 < cfg.y1)) bad("config: box must be ordered");
    if (cfg.u.empty() || cfg.v.empty()) bad("config: u and v need at least one coefficient");
    for (const auto& row : cfg.phi) {
        if (!(std::floor(row[0]) == row[0]) || !(std::floor(row[1]) == row[1]) || row[0] < 0 ||
            row[1] < 0)
            bad("config: phi exponents must be nonnegative integers");
        if (!std::isfinite(row[2])) bad("config: phi coefficient must be finite");
    }
    if (cfg.k_max < 4) bad("config: k must be at least 4");
    if (!(cfg.ode_step > 0)) bad("config: step must be positive");
    if (!(cfg.ode_y0 < 0 && 0 < cfg.ode_y1)) bad("config: ygrid must straddle 0");
    if (!(cfg.t0 < cfg.t1)) bad("config: curve interval must satisfy t0 < t1");
    if (cfg.branch != "plus" && cfg.branch != "minus")
        bad("config: branch must be \"plus\" or \"minus\"");
    if (cfg.base != "ellipse" && cfg.base != "profile")
        bad("config: base must be \"ellipse\" or \"profile\"");
    if (!(cfg.ellipse_a > 0)) bad("config: ellipse_a must be positive");
    if (!(cfg.eps > 0)) bad("config: eps must be positive");
    if (cfg.curve != "helicoid_null" && cfg.curve != "coeffs")
        bad("config: curve must be \"helicoid_null\" or \"coeffs\"");
    if (cfg.curve == "coeffs" && (cfg.c0.empty() || cfg.c1.empty() || cfg.c2.empty()))
        bad("config: curve = \"coeffs\" needs c0, c1 and c2");
}

PowerSeries2 phi_series(const RunConfig& cfg) {
    int deg = 0;
    for (const auto& row : cfg.phi)
        deg = std::max(deg, static_cast<int>(row[0]) + static_cast<int>(row[1]));
    PowerSeries2 phi(deg);
    for (const auto& row : cfg.phi)
        phi.add_to(static_cast<int>(row[0]), static_cast<int>(row[1]), row[2]);
    return phi;
}

InitialCurve initial_curve_from(const RunConfig& cfg, int order) {
    PowerSeries1 u = PowerSeries1::from_coeffs(cfg.u);
    PowerSeries1 v = PowerSeries1::from_coeffs(cfg.v);
    if (u.order() < order) u = u.extended(order);
    if (v.order() < order) v = v.extended(order);
    return InitialCurve(std::move(u), std::move(v));
}

} // namespace zmclab
