#pragma once

#include <cstdint>
#include <functional>

namespace geodesy::par {

// Worker cap, resolved once from GEODESY_THREADS (0 = OpenMP default).
int max_threads();
void set_max_threads(int n);

// When true every kernel runs its serial reference path. Used by tests and
// the benchmark to compare the two implementations.
bool serial_mode();
void set_serial_mode(bool on);

// Deterministic parallel map: fn(i) writes only to slot i of its output, so
// the result is identical in serial and parallel runs.
void for_each_index(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace geodesy::par
