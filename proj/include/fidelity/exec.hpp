#pragma once

namespace fidelity {

// Selects the implementation of a data-parallel kernel. Both paths produce
// bit-identical results; the serial one is the reference used by tests and
// by the benchmark.
enum class ExecPolicy { serial, openmp };

}  // namespace fidelity
