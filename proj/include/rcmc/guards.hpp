#pragma once

namespace rcmc {

// Default enumeration limits.  Everything that walks a 2^m (or 2^n) state
// space refuses larger instances unless the caller raises the guard.
constexpr int kEnumGuardM = 20;   // edge-subset enumerations
constexpr int kEnumGuardN = 20;   // spin enumerations
constexpr int kMatrixGuardM = 12; // dense transition matrices

} // namespace rcmc
