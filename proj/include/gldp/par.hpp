#pragma once

namespace gldp::par {

// Thread cap for parallel kernels: programmatic override if set, else the
// GRAPHON_LDP_THREADS environment variable, else the OpenMP default.
int threads();

// Override the cap (<= 0 restores env/OpenMP behaviour).
void set_threads(int t);

}  // namespace gldp::par
