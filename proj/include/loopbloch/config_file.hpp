// config_file.hpp — INI-style scheme configuration files

#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "loopbloch/scheme.hpp"

namespace loopbloch {

// Parse or interpretation failure, carrying a 1-based source location.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, int col, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + message),
          line_(line),
          col_(col) {}

    explicit ConfigError(const std::string& message)
        : std::runtime_error(message), line_(0), col_(0) {}

    // Same location, message already fully formatted (used to prefix a path).
    struct Preformatted {};
    ConfigError(Preformatted, int line, int col, const std::string& message)
        : std::runtime_error(message), line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_;
    int col_;
};

namespace detail {

struct ConfigEntry {
    std::string value;
    int line = 0;
    int col = 0;        // column of the key
    int value_col = 0;  // column of the value
    bool used = false;
};

struct RawConfig {
    // Keyed by "section.key"; duplicate keys are rejected at parse time.
    std::map<std::string, ConfigEntry> entries;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline RawConfig parse_raw(std::string_view text) {
    RawConfig raw;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;

        // Strip comments introduced by '#' or ';'.
        const std::size_t hash = line.find_first_of("#;");
        std::string_view body = line.substr(0, hash);
        std::string_view stripped = trim(body);

        if (!stripped.empty()) {
            const int indent = static_cast<int>(stripped.data() - line.data());
            if (stripped.front() == '[') {
                if (stripped.back() != ']' || stripped.size() < 3) {
                    throw ConfigError(line_no, indent + 1, "malformed section header");
                }
                section = std::string(trim(stripped.substr(1, stripped.size() - 2)));
                if (section.empty()) {
                    throw ConfigError(line_no, indent + 1, "empty section name");
                }
            } else {
                const std::size_t eq = stripped.find('=');
                if (eq == std::string_view::npos) {
                    throw ConfigError(line_no, indent + 1, "expected key = value");
                }
                const std::string_view key = trim(stripped.substr(0, eq));
                const std::string_view value = trim(stripped.substr(eq + 1));
                if (key.empty()) throw ConfigError(line_no, indent + 1, "empty key");
                if (value.empty()) {
                    throw ConfigError(line_no, indent + static_cast<int>(eq) + 2, "empty value");
                }
                if (section.empty()) {
                    throw ConfigError(line_no, indent + 1, "key before any [section]");
                }
                const std::string full = section + "." + std::string(key);
                const int key_col = static_cast<int>(key.data() - line.data()) + 1;
                const int value_col = static_cast<int>(value.data() - line.data()) + 1;
                auto [it, inserted] = raw.entries.emplace(
                    full, ConfigEntry{std::string(value), line_no, key_col, value_col});
                if (!inserted) {
                    throw ConfigError(line_no, key_col,
                                      "duplicate key '" + full + "' (first at line " +
                                          std::to_string(it->second.line) + ")");
                }
            }
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return raw;
}

inline double parse_number(const ConfigEntry& e, const std::string& key) {
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(e.line, e.value_col, "invalid number for '" + key + "': " + e.value);
    }
    return out;
}

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

// Parse a configuration from text. Sections and keys:
//   [scheme]  kind = diamond | double-lambda
//             gamma_ref = unit rate; all rates, couplings, detunings and
//             delta_omega are multiplied by it (default 1)
//   [decays]  gamma2, gamma3 (diamond) or gamma12, gamma13 (double-lambda);
//             gamma42, gamma43
//   [lasers]  g12, g13, g24, g34, delta2, delta3, delta4
//   [phase]   delta_omega, delta_k, delta_chi
//             or per-field chi12, chi13, chi24, chi34, which set delta_chi
//             to the loop mismatch chi12 + chi24 - chi34 - chi13
// Every key is optional and falls back to the SchemeConfig default. Unknown
// keys, duplicates and malformed numbers are reported with line and column.
inline SchemeConfig parse_config(std::string_view text) {
    detail::RawConfig raw = detail::parse_raw(text);
    SchemeConfig config;

    auto take = [&raw](const std::string& key) -> detail::ConfigEntry* {
        auto it = raw.entries.find(key);
        if (it == raw.entries.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    };
    auto number = [&take](const std::string& key, double& slot) {
        if (auto* e = take(key)) slot = detail::parse_number(*e, key);
    };

    if (auto* e = take("scheme.kind")) {
        if (e->value == "diamond") {
            config.kind = SchemeKind::Diamond;
        } else if (e->value == "double-lambda") {
            config.kind = SchemeKind::DoubleLambda;
        } else {
            throw ConfigError(e->line, e->value_col,
                              "unknown scheme kind '" + e->value +
                                  "' (expected diamond or double-lambda)");
        }
    }

    double gamma_ref = 1.0;
    if (auto* e = take("scheme.gamma_ref")) {
        gamma_ref = detail::parse_number(*e, "scheme.gamma_ref");
        if (!(gamma_ref > 0.0)) {
            throw ConfigError(e->line, e->value_col, "gamma_ref must be positive");
        }
    }

    // The two lower decay channels are named after their role in each scheme.
    const bool diamond = config.kind == SchemeKind::Diamond;
    const char* lo2 = diamond ? "decays.gamma2" : "decays.gamma12";
    const char* lo3 = diamond ? "decays.gamma3" : "decays.gamma13";
    const struct {
        const char* wrong;
        const char* right;
    } renames[] = {{diamond ? "decays.gamma12" : "decays.gamma2", lo2},
                   {diamond ? "decays.gamma13" : "decays.gamma3", lo3}};
    for (const auto& r : renames) {
        auto it = raw.entries.find(r.wrong);
        if (it != raw.entries.end()) {
            throw ConfigError(it->second.line, it->second.col,
                              std::string("key '") + r.wrong + "' does not apply to the " +
                                  to_string(config.kind) + " scheme (use '" + r.right + "')");
        }
    }
    number(lo2, config.gamma2);
    number(lo3, config.gamma3);
    number("decays.gamma42", config.gamma42);
    number("decays.gamma43", config.gamma43);

    number("lasers.g12", config.g12);
    number("lasers.g13", config.g13);
    number("lasers.g24", config.g24);
    number("lasers.g34", config.g34);
    number("lasers.delta2", config.delta2);
    number("lasers.delta3", config.delta3);
    number("lasers.delta4", config.delta4);

    number("phase.delta_omega", config.phase.delta_omega);
    number("phase.delta_k", config.phase.delta_k);

    const bool has_chi_parts = raw.entries.count("phase.chi12") ||
                               raw.entries.count("phase.chi13") ||
                               raw.entries.count("phase.chi24") ||
                               raw.entries.count("phase.chi34");
    const bool has_delta_chi = raw.entries.count("phase.delta_chi") != 0;
    number("phase.delta_chi", config.phase.delta_chi);
    if (has_chi_parts) {
        LaserPhases phases;
        number("phase.chi12", phases.chi12);
        number("phase.chi13", phases.chi13);
        number("phase.chi24", phases.chi24);
        number("phase.chi34", phases.chi34);
        config.laser_phases = phases;
        // Without an explicit delta_chi the loop combination defines it;
        // with one, validate() flags any mismatch.
        if (!has_delta_chi) config.phase.delta_chi = phases.loop_mismatch();
    }

    for (const auto& [key, entry] : raw.entries) {
        if (!entry.used) {
            throw ConfigError(entry.line, entry.col, "unknown key '" + key + "'");
        }
    }

    // Convert from gamma_ref units to absolute angular frequencies.
    if (gamma_ref != 1.0) {
        config.gamma2 *= gamma_ref;
        config.gamma3 *= gamma_ref;
        config.gamma42 *= gamma_ref;
        config.gamma43 *= gamma_ref;
        config.g12 *= gamma_ref;
        config.g13 *= gamma_ref;
        config.g24 *= gamma_ref;
        config.g34 *= gamma_ref;
        config.delta2 *= gamma_ref;
        config.delta3 *= gamma_ref;
        config.delta4 *= gamma_ref;
        config.phase.delta_omega *= gamma_ref;
    }
    return config;
}

inline SchemeConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(ConfigError::Preformatted{}, e.line(), e.col(),
                          path + ": " + e.what());
    }
}

// Canonical text form; parse_config(serialize_config(c)) reproduces c exactly.
inline std::string serialize_config(const SchemeConfig& config) {
    using detail::format_number;
    const bool diamond = config.kind == SchemeKind::Diamond;
    std::string out;
    out += "[scheme]\nkind = ";
    out += to_string(config.kind);
    out += "\n\n[decays]\n";
    out += (diamond ? "gamma2 = " : "gamma12 = ") + format_number(config.gamma2) + "\n";
    out += (diamond ? "gamma3 = " : "gamma13 = ") + format_number(config.gamma3) + "\n";
    out += "gamma42 = " + format_number(config.gamma42) + "\n";
    out += "gamma43 = " + format_number(config.gamma43) + "\n";
    out += "\n[lasers]\n";
    out += "g12 = " + format_number(config.g12) + "\n";
    out += "g13 = " + format_number(config.g13) + "\n";
    out += "g24 = " + format_number(config.g24) + "\n";
    out += "g34 = " + format_number(config.g34) + "\n";
    out += "delta2 = " + format_number(config.delta2) + "\n";
    out += "delta3 = " + format_number(config.delta3) + "\n";
    out += "delta4 = " + format_number(config.delta4) + "\n";
    out += "\n[phase]\n";
    out += "delta_omega = " + format_number(config.phase.delta_omega) + "\n";
    out += "delta_k = " + format_number(config.phase.delta_k) + "\n";
    out += "delta_chi = " + format_number(config.phase.delta_chi) + "\n";
    if (config.laser_phases) {
        out += "chi12 = " + format_number(config.laser_phases->chi12) + "\n";
        out += "chi13 = " + format_number(config.laser_phases->chi13) + "\n";
        out += "chi24 = " + format_number(config.laser_phases->chi24) + "\n";
        out += "chi34 = " + format_number(config.laser_phases->chi34) + "\n";
    }
    return out;
}

}  // namespace loopbloch
