#include "gldp/par.hpp"

#include <omp.h>

#include <cstdlib>

namespace gldp::par {

namespace {
int g_override = 0;
}

int threads() {
  if (g_override > 0) return g_override;
  if (const char* env = std::getenv("GRAPHON_LDP_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return omp_get_max_threads();
}

void set_threads(int t) { g_override = t > 0 ? t : 0; }

}  // namespace gldp::par
