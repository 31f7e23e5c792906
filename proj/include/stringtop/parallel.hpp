#pragma once

#include <cstddef>
#include <functional>

namespace stringtop {

/// Worker cap from STRINGTOP_THREADS; 0 or unset means sequential.
std::size_t thread_cap();

/// Runs body(i) for i in [0, count), fanned out up to thread_cap() workers.
/// Bodies must not share mutable state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace stringtop
