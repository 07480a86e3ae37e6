#pragma once

namespace edmnet {

// Kernels with data-parallel loops take an Execution mode. The serial
// path is a plain loop kept as the reference; the parallel path uses
// OpenMP and is bit-identical to it (every loop iteration writes its own
// slot, and floating-point reductions run in a fixed order).
enum class Execution { serial, parallel };

// Number of threads the parallel path would use (1 when built without
// OpenMP).
int hardware_threads();

}  // namespace edmnet
