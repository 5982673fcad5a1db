#pragma once

#include <chrono>
#include <optional>

#include "gblab/errors.hpp"

namespace gblab {

// Cooperative resource budget. Long-running scans consult it at safe points
// (between row insertions, between pair reductions) so that a wall-clock cap
// aborts cleanly with a BudgetError instead of being killed mid-computation.
struct Budget {
    std::optional<std::chrono::steady_clock::time_point> deadline;

    static Budget none() { return {}; }
    static Budget with_timeout(double seconds) {
        Budget b;
        b.deadline = std::chrono::steady_clock::now() +
                     std::chrono::microseconds(int64_t(seconds * 1e6));
        return b;
    }

    bool expired() const {
        return deadline && std::chrono::steady_clock::now() > *deadline;
    }
    void check(const char* where) const {
        if (expired()) throw BudgetError(std::string("wall-clock budget exhausted in ") + where);
    }
};

}
