#pragma once

namespace qs {

// Thread-count control for the OpenMP kernels. 0 = machine default.
void set_threads(int n);
int max_threads();

} // namespace qs
