#pragma once

// File formats.
//
//   intensity CSV     family,input,mu,beta_prime,count
//   intensity JSON    {theta_deg, shots, seed, mode, rows: [{family,input,mu,beta_prime,count}]}
//   boundary CSV      theta_deg,N,D
//   surface CSV       vartheta_deg,phi_deg,D
//
// Reals are printed with 17 significant digits; integer counts without a
// fractional part. Output is a pure function of the data, so identical inputs
// give identical bytes.

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnd/boundary.hpp"
#include "qnd/correction.hpp"
#include "qnd/estimation.hpp"

namespace qnd::io {

inline double to_degrees(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }
inline double to_radians(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

/// Shortest round-trip-safe decimal form (17 significant digits, %g style).
inline std::string format_real(double v) {
    if (v == 0.0) return "0";  // also folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Degrees for presentation: rounded to 1e-9 so that 45.000000000000007 prints as 45.
inline std::string format_degrees(double rad) {
    const double deg = std::round(to_degrees(rad) * 1e9) / 1e9;
    return format_real(deg);
}

inline std::string format_count(double c) {
    if (c == std::floor(c) && std::abs(c) < 9.0e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", c);
        return buf;
    }
    return format_real(c);
}

inline constexpr const char* kIntensityCsvHeader = "family,input,mu,beta_prime,count";
inline constexpr const char* kBoundaryCsvHeader = "theta_deg,N,D";
inline constexpr const char* kSurfaceCsvHeader = "vartheta_deg,phi_deg,D";

inline void write_intensity_csv(std::ostream& os, const std::vector<IntensityTable>& tables) {
    os << kIntensityCsvHeader << '\n';
    for (const auto& t : tables) {
        for (Outcome in : kOutcomes) {
            for (Outcome mu : kOutcomes) {
                for (Outcome bo : kOutcomes) {
                    os << to_string(t.family) << ',' << label(in) << ',' << label(mu) << ',' << label(bo) << ','
                       << format_count(t.at(in, mu, bo)) << '\n';
                }
            }
        }
    }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        out.push_back(cell);
    }
    return out;
}

inline IntensityTable& table_for(std::vector<IntensityTable>& tables, InputFamily f) {
    for (auto& t : tables) {
        if (t.family == f) return t;
    }
    tables.push_back(IntensityTable{});
    tables.back().family = f;
    return tables.back();
}

}  // namespace detail

/// Parses intensity CSV; tables come back in first-appearance order of their family.
/// Metadata not carried by the format (shots, seed, mode, theta) is left at defaults.
inline std::vector<IntensityTable> read_intensity_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("intensity CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kIntensityCsvHeader) throw ValidationError("intensity CSV: unexpected header '" + line + "'");
    std::vector<IntensityTable> tables;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 5) throw ValidationError("intensity CSV: line " + std::to_string(lineno) + " needs 5 fields");
        try {
            IntensityTable& t = detail::table_for(tables, parse_family(cells[0]));
            t.at(outcome_from_label(std::stoi(cells[1])), outcome_from_label(std::stoi(cells[2])),
                 outcome_from_label(std::stoi(cells[3]))) = std::stod(cells[4]);
        } catch (const std::logic_error& e) {
            throw ValidationError("intensity CSV: line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return tables;
}

inline nlohmann::ordered_json intensity_json(const std::vector<IntensityTable>& tables) {
    nlohmann::ordered_json j;
    const IntensityTable* first = tables.empty() ? nullptr : &tables.front();
    j["theta_deg"] = first && std::isfinite(first->theta) ? std::round(to_degrees(first->theta) * 1e9) / 1e9 : 0.0;
    j["shots"] = first ? first->shots_per_input : 0;
    j["seed"] = first ? first->seed : 0;
    j["mode"] = first ? std::string(to_string(first->mode)) : std::string("exact");
    auto rows = nlohmann::ordered_json::array();
    for (const auto& t : tables) {
        for (Outcome in : kOutcomes) {
            for (Outcome mu : kOutcomes) {
                for (Outcome bo : kOutcomes) {
                    nlohmann::ordered_json r;
                    r["family"] = std::string(to_string(t.family));
                    r["input"] = label(in);
                    r["mu"] = label(mu);
                    r["beta_prime"] = label(bo);
                    const double c = t.at(in, mu, bo);
                    if (c == std::floor(c) && c < 9.0e15) {
                        r["count"] = static_cast<std::int64_t>(c);
                    } else {
                        r["count"] = c;
                    }
                    rows.push_back(std::move(r));
                }
            }
        }
    }
    j["rows"] = std::move(rows);
    return j;
}

inline std::vector<IntensityTable> read_intensity_json(const nlohmann::json& j) {
    std::vector<IntensityTable> tables;
    try {
        const double theta = to_radians(j.at("theta_deg").get<double>());
        const auto shots = j.at("shots").get<std::int64_t>();
        const auto seed = j.at("seed").get<std::uint64_t>();
        const CountingMode mode = parse_counting_mode(j.at("mode").get<std::string>());
        for (const auto& r : j.at("rows")) {
            IntensityTable& t = detail::table_for(tables, parse_family(r.at("family").get<std::string>()));
            t.theta = theta;
            t.shots_per_input = shots;
            t.seed = seed;
            t.mode = mode;
            t.at(outcome_from_label(r.at("input").get<int>()), outcome_from_label(r.at("mu").get<int>()),
                 outcome_from_label(r.at("beta_prime").get<int>())) = r.at("count").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("intensity JSON: ") + e.what());
    }
    return tables;
}

inline void write_boundary_csv(std::ostream& os, const std::vector<BoundaryPoint>& pts) {
    os << kBoundaryCsvHeader << '\n';
    for (const auto& p : pts) os << format_degrees(p.theta) << ',' << format_real(p.noise) << ',' << format_real(p.disturbance) << '\n';
}

inline void write_surface_csv(std::ostream& os, const std::vector<SurfacePoint>& surface) {
    os << kSurfaceCsvHeader << '\n';
    for (const auto& s : surface) {
        os << format_degrees(s.vartheta) << ',' << format_degrees(s.phi) << ',' << format_real(s.disturbance) << '\n';
    }
}

}  // namespace qnd::io
