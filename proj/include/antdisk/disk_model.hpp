#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "antdisk/task.hpp"

namespace antdisk {

// Unit conventions, pinned project-wide:
//   KB = 1024 bytes (request sizes), MBps = 10^6 bytes/second (disk rate),
//   all times are double-precision milliseconds.
inline constexpr std::uint64_t kKiB = 1024;

enum class RotationMode {
    angular,    // latency from the platter angle implied by the clock
    fixed_half, // constant half-revolution latency
};

// Parametric disk. Defaults model the HP 97560: a two-piece seek curve
// (sqrt up to a breakpoint, then linear), 4002 RPM, 10 MB/s transfer.
struct DiskGeometry {
    int cylinders = 1972;
    int tracks_per_cylinder = 19;
    int sectors_per_track = 72;
    int sector_size = 512;
    double rpm = 4002.0;
    double transfer_rate = 10'000'000.0; // bytes/second
    double seek_near_base = 3.24;        // ms
    double seek_near_coeff = 0.4;        // ms
    double seek_far_base = 8.00;         // ms
    double seek_far_coeff = 0.008;       // ms per cylinder
    int seek_breakpoint = 383;           // cylinders
    RotationMode rotation_mode = RotationMode::angular;

    double rotation_period_ms() const { return 60000.0 / rpm; }

    void validate() const {
        if (cylinders <= 0 || tracks_per_cylinder <= 0 || sectors_per_track <= 0 ||
            sector_size <= 0) {
            throw std::invalid_argument("disk geometry: counts must be positive");
        }
        if (rpm <= 0.0 || transfer_rate <= 0.0) {
            throw std::invalid_argument("disk geometry: rates must be positive");
        }
        if (seek_breakpoint >= cylinders) {
            throw std::invalid_argument("disk geometry: seek_breakpoint must be < cylinders");
        }
        if (!std::isfinite(rotation_period_ms()) || rotation_period_ms() <= 0.0) {
            throw std::invalid_argument("disk geometry: invalid rotation period");
        }
    }
};

// Simulated clock plus head position.
struct HeadState {
    double time_ms = 0.0;
    int cylinder = 0;
};

// Seek time in ms for a head move of `distance` cylinders. Zero distance
// costs nothing: the base term models actuator start cost for real moves.
inline double seek_time(const DiskGeometry& g, int distance) {
    if (distance < 0 || distance >= g.cylinders) {
        throw std::domain_error("seek_time: distance out of range");
    }
    if (distance == 0) return 0.0;
    if (distance <= g.seek_breakpoint) {
        return g.seek_near_base + g.seek_near_coeff * std::sqrt(static_cast<double>(distance));
    }
    return g.seek_far_base + g.seek_far_coeff * static_cast<double>(distance);
}

// Wait until target_sector rotates under the head. In angular mode the
// platter angle is derived from the arrival time; fixed_half always
// charges half a revolution.
inline double rotational_latency(const DiskGeometry& g, double arrival_ms, int target_sector) {
    if (target_sector < 0 || target_sector >= g.sectors_per_track) {
        throw std::domain_error("rotational_latency: sector out of range");
    }
    const double period = g.rotation_period_ms();
    if (g.rotation_mode == RotationMode::fixed_half) {
        return period / 2.0;
    }
    const double sector_start = static_cast<double>(target_sector) * period /
                                static_cast<double>(g.sectors_per_track);
    double latency = std::fmod(sector_start - std::fmod(arrival_ms, period), period);
    if (latency < 0.0) latency += period;
    return latency;
}

inline double transfer_time(const DiskGeometry& g, std::uint64_t size_bytes) {
    return static_cast<double>(size_bytes) / g.transfer_rate * 1000.0;
}

// Full service cost: seek, then rotation evaluated at the post-seek
// arrival time, then transfer.
inline double service_time(const DiskGeometry& g, const HeadState& head, const Task& task) {
    const int distance = std::abs(task.cylinder - head.cylinder);
    const double seek = seek_time(g, distance);
    const double rotation = rotational_latency(g, head.time_ms + seek, task.sector);
    return seek + rotation + transfer_time(g, task.size_bytes);
}

inline RotationMode rotation_mode_from_string(const std::string& s) {
    if (s == "angular") return RotationMode::angular;
    if (s == "fixed_half" || s == "fixed-half") return RotationMode::fixed_half;
    throw std::invalid_argument("unknown rotation mode: " + s);
}

inline std::string to_string(RotationMode m) {
    return m == RotationMode::angular ? "angular" : "fixed_half";
}

// Parses a geometry from JSON; omitted fields keep their defaults.
inline DiskGeometry geometry_from_json(const nlohmann::json& j) {
    DiskGeometry g;
    if (j.contains("cylinders")) g.cylinders = j.at("cylinders").get<int>();
    if (j.contains("tracks_per_cylinder")) g.tracks_per_cylinder = j.at("tracks_per_cylinder").get<int>();
    if (j.contains("sectors_per_track")) g.sectors_per_track = j.at("sectors_per_track").get<int>();
    if (j.contains("sector_size")) g.sector_size = j.at("sector_size").get<int>();
    if (j.contains("rpm")) g.rpm = j.at("rpm").get<double>();
    if (j.contains("transfer_rate")) g.transfer_rate = j.at("transfer_rate").get<double>();
    if (j.contains("seek_near_base")) g.seek_near_base = j.at("seek_near_base").get<double>();
    if (j.contains("seek_near_coeff")) g.seek_near_coeff = j.at("seek_near_coeff").get<double>();
    if (j.contains("seek_far_base")) g.seek_far_base = j.at("seek_far_base").get<double>();
    if (j.contains("seek_far_coeff")) g.seek_far_coeff = j.at("seek_far_coeff").get<double>();
    if (j.contains("seek_breakpoint")) g.seek_breakpoint = j.at("seek_breakpoint").get<int>();
    if (j.contains("rotation_mode")) g.rotation_mode = rotation_mode_from_string(j.at("rotation_mode").get<std::string>());
    g.validate();
    return g;
}

} // namespace antdisk
