#pragma once

#include <cstdint>

namespace antdisk {

// One disk request. Times are real-valued milliseconds from simulation
// start; sizes are bytes.
struct Task {
    int id = 0;
    double ready_ms = 0.0;
    double deadline_ms = 0.0;
    int cylinder = 0;
    int sector = 0;
    std::uint64_t size_bytes = 0;

    bool operator==(const Task&) const = default;
};

} // namespace antdisk
