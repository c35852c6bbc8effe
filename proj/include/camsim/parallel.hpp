#ifndef CAMSIM_PARALLEL_HPP
#define CAMSIM_PARALLEL_HPP

namespace camsim {

// Kernel selection: `serial` is the reference implementation, `parallel`
// the OpenMP one. Both produce bitwise-identical results.
enum class ExecutionPolicy { serial, parallel };

}  // namespace camsim

#endif
