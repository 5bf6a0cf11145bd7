#pragma once

#include <cstdint>

namespace epilim::config {

inline constexpr int kReportVersion = 1;

// Generator seeding constants (xorshift64*), fixed for reproducibility.
inline constexpr std::uint64_t kSeedMix = 0x9E3779B97F4A7C15ull;

// Tolerance classes: exact identities on integer grids use 0, float
// identities 1e-9, discretization-limited checks C * h with C frozen here.
inline constexpr double kExactTol = 0.0;
inline constexpr double kFloatTol = 1e-9;
inline constexpr double kTheorem77Factor = 3.0;     // deviation <= 3 h
inline constexpr double kTheorem77Shrink = 5.0;     // deviation shrink across h decades
inline constexpr double kQuarterTol = 0.00390625;   // 2^-8, quantization-limited checks

// Scenario slack constants, calibrated once against the oracles and frozen.
inline constexpr double kMainIneqSlackExact = 1e-9;    // constant/periodic families
inline constexpr double kMainIneqSlackSpike = 0.00390625;
inline constexpr double kFormula4Slack = 0.00390625;

// Shared verdict thresholds.
inline constexpr double kUiTolerance = 0.03125;     // equi / delta-plus zero threshold
inline constexpr double kBoundCeiling = 1e6;        // "bounded" stand-in on finite data
inline constexpr double kDivergeCeiling = 1e9;      // divergence marker ceiling
inline constexpr double kCertTolerance = 1e-6;      // vanishing-trace threshold
inline constexpr int kDpBudgetUnits = 256;          // ball-sup budget resolution

}  // namespace epilim::config
