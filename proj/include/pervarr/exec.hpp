#pragma once

namespace pervarr {

// Sweep kernels (collinearity tables, relation validation) come in two
// flavours: a serial reference and an OpenMP one. Both must produce
// identical results; tests compare them instance by instance.
enum class Exec { serial, parallel };

#if defined(PERVARR_HAVE_OPENMP)
inline constexpr Exec default_exec = Exec::parallel;
#else
inline constexpr Exec default_exec = Exec::serial;
#endif

}  // namespace pervarr
