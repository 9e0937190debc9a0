#pragma once

#include <cstddef>
#include <functional>

namespace mofa {

/// Maps a requested worker count to an actual one; 0 means one per hardware thread.
std::size_t resolve_threads(std::size_t requested);

/// Worker count from the MOFA_THREADS environment variable (0 = auto when unset
/// or unparsable).
std::size_t threads_from_env();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work items are
/// striped across workers; callers write only to slot i, so results do not
/// depend on the worker count.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace mofa
