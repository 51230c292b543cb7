#pragma once

namespace aximhd {

/// Caps OpenMP threads. 0 means the runtime default.
void set_thread_limit(int n);
/// Reads AXIMHD_THREADS (0 = auto) and applies it. Returns the value read.
int apply_thread_env();
int max_threads();

} // namespace aximhd
