// sweep.hpp — parameter grids, parallel evaluation, deterministic CSV output

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopbloch/config_file.hpp"
#include "loopbloch/core.hpp"
#include "loopbloch/doppler.hpp"
#include "loopbloch/parallel.hpp"
#include "loopbloch/states.hpp"
#include "loopbloch/steady_state.hpp"

namespace loopbloch {

// Evenly spaced grid, optionally geometric, written "start:stop:count".
struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    bool log = false;  // geometric spacing; requires start, stop > 0

    static GridSpec parse(std::string_view text) {
        GridSpec g;
        const std::size_t c1 = text.find(':');
        const std::size_t c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
        auto to_double = [&text](std::string_view part, double& out) {
            const char* begin = part.data();
            const auto [ptr, ec] = std::from_chars(begin, begin + part.size(), out);
            if (ec != std::errc() || ptr != begin + part.size()) {
                throw std::invalid_argument("grid: bad number '" + std::string(part) +
                                            "' in '" + std::string(text) + "'");
            }
        };
        if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
            throw std::invalid_argument("grid: expected start:stop:count, got '" +
                                        std::string(text) + "'");
        }
        to_double(text.substr(0, c1), g.start);
        to_double(text.substr(c1 + 1, c2 - c1 - 1), g.stop);
        double count = 0;
        to_double(text.substr(c2 + 1), count);
        g.count = static_cast<int>(count);
        if (g.count != count || g.count < 1) {
            throw std::invalid_argument("grid: count must be a positive integer in '" +
                                        std::string(text) + "'");
        }
        return g;
    }

    std::vector<double> points() const {
        if (count < 1) throw std::invalid_argument("grid: count must be positive");
        if (log && (start <= 0 || stop <= 0)) {
            throw std::invalid_argument("grid: log spacing needs positive endpoints");
        }
        std::vector<double> p;
        p.reserve(static_cast<std::size_t>(count));
        if (count == 1) {
            p.push_back(start);
            return p;
        }
        for (int i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / (count - 1);
            p.push_back(log ? start * std::pow(stop / start, f) : start + (stop - start) * f);
        }
        return p;
    }
};

// Tabular sweep output: '#'-prefixed metadata, a header row, then data rows.
struct SweepResult {
    std::vector<std::string> metadata;  // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write_csv(std::ostream& out) const {
        for (const auto& line : metadata) {
            out << (line.empty() ? "#" : "# " + line) << "\n";
        }
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << columns[c];
        }
        out << "\n";
        char buf[32];
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.16e", row[c]);
                out << (c ? "," : "") << buf;
            }
            out << "\n";
        }
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        write_csv(out);
        if (!out) throw std::runtime_error("failed writing output file: " + path);
    }
};

namespace detail {

// Metadata block echoing the exact configuration; deliberately timestamp-free
// so identical runs produce byte-identical files.
inline std::vector<std::string> sweep_metadata(const std::string& command,
                                               const SchemeConfig& config) {
    std::vector<std::string> meta;
    meta.push_back("loopbloch " + std::string(kVersion));
    meta.push_back("command: " + command);
    meta.push_back("config:");
    const std::string serialized = serialize_config(config);
    std::size_t pos = 0;
    while (pos < serialized.size()) {
        const std::size_t eol = serialized.find('\n', pos);
        meta.push_back("  " + serialized.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return meta;
}

inline std::vector<std::string> bloch_columns(const std::string& first) {
    std::vector<std::string> cols{first};
    for (const char* name : BlochComponents::field_names()) cols.emplace_back(name);
    return cols;
}

}  // namespace detail

// Steady-state Bloch components against the loop phase. width > 0 averages
// each point over the thermal detuning distribution.
inline SweepResult sweep_phase(const SchemeConfig& config, const GridSpec& grid,
                               const ThermalSpec& thermal = {}) {
    if (grid.count < 2) throw std::invalid_argument("sweep-phase: grid needs at least 2 points");
    const std::vector<double> phis = grid.points();
    SweepResult result;
    result.metadata = detail::sweep_metadata("sweep-phase", config);
    result.metadata.push_back("phi grid: " + std::to_string(grid.start) + " .. " +
                              std::to_string(grid.stop) + ", " + std::to_string(grid.count) +
                              " points");
    if (thermal.width > 0) {
        result.metadata.push_back("doppler width: " + detail::format_number(thermal.width) +
                                  ", nodes: " + std::to_string(thermal.nodes));
    }
    result.columns = detail::bloch_columns("phi");

    result.rows = parallel_map(phis.size(), [&](std::size_t i) {
        const double phi = phis[i];
        try {
            const DensityMatrix rho = thermal.width > 0
                                          ? doppler_average(config, phi, thermal).rho
                                          : solve_steady_state(config, phi).rho;
            const BlochComponents b = bloch_components(rho, phi);
            std::vector<double> row{phi};
            const auto values = b.values();
            row.insert(row.end(), values.begin(), values.end());
            return row;
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep-phase: point phi = " + detail::format_number(phi) +
                                     " failed: " + e.what());
        }
    });
    return result;
}

// Steady state against alpha at a loop phase that is an even multiple of
// 2 pi, where the closed loop leaves only nine independent nonzero
// components. The sweep rescales gamma42 = gamma43 to hit each alpha and
// verifies that the structurally vanishing components stay below 1e-10.
inline SweepResult sweep_alpha(const SchemeConfig& config, const GridSpec& grid) {
    const double phi = config.phase_at(0.0);
    if (std::abs(std::remainder(phi, kTwoPi)) > 1e-12) {
        throw std::invalid_argument(
            "sweep-alpha requires the loop phase to be a multiple of 2 pi");
    }
    const std::vector<double> alphas = grid.points();
    SweepResult result;
    result.metadata = detail::sweep_metadata("sweep-alpha", config);
    result.metadata.push_back("alpha grid: " + std::to_string(grid.start) + " .. " +
                              std::to_string(grid.stop) + ", " + std::to_string(grid.count) +
                              (grid.log ? " points (log)" : " points"));
    result.columns = {"alpha", "rho11", "rho22", "rho33", "rho44", "v12", "v24", "u23", "u14"};

    result.rows = parallel_map(alphas.size(), [&](std::size_t i) {
        const double alpha = alphas[i];
        SchemeConfig c = config;
        c.gamma42 = c.gamma43 = 0.5 * alpha * (c.gamma2 + c.gamma3);
        SteadyStateResult ss;
        try {
            ss = solve_steady_state(c, phi);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep-alpha: point alpha = " +
                                     detail::format_number(alpha) + " failed: " + e.what());
        }
        const BlochComponents b = bloch_components(ss.rho, phi);
        for (double vanishing : {b.u12, b.u13, b.u24, b.u34t, b.v14, b.v23}) {
            if (std::abs(vanishing) > 1e-10) {
                throw std::runtime_error(
                    "sweep-alpha: component expected to vanish reached " +
                    std::to_string(vanishing) + " at alpha = " + std::to_string(alpha));
            }
        }
        return std::vector<double>{alpha,  b.rho11, b.rho22, b.rho33, b.rho44,
                                   b.v12,  b.v24,   b.u23,   b.u14};
    });
    return result;
}

}  // namespace loopbloch
