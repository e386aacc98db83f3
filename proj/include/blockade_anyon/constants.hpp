#pragma once

namespace blockade_anyon::golden {

// Powers of the golden mean, written out to full double precision.
inline constexpr double phi = 1.618033988749894848204587;
inline constexpr double sqrt_phi = 1.272019649514068964252422;       // phi^{1/2}
inline constexpr double inv_sqrt_phi = 0.7861513777574232860695586;  // phi^{-1/2}
inline constexpr double phi_3_2 = 2.058171027271492250321981;        // phi^{3/2}
inline constexpr double inv_phi_3_2 = 0.4858682717566456781828639;   // phi^{-3/2}
inline constexpr double inv_phi = 0.6180339887498948482045868;       // phi^{-1}
inline constexpr double inv_phi2 = 0.3819660112501051517954132;      // phi^{-2}
inline constexpr double phi_5_2 = 3.330190676785561214574404;        // phi^{5/2}

}  // namespace blockade_anyon::golden
