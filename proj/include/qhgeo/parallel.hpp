#pragma once

namespace qhgeo {

// Upper bound on OpenMP fan-out: QHGEO_THREADS when set to a positive
// integer, otherwise the runtime default. Read once per process.
int thread_cap();

// Overrides the cap for the rest of the process (CLI flag, benchmarks).
void set_thread_cap(int threads);

}  // namespace qhgeo
