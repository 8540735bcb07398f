#pragma once

#include <cstdint>

namespace ergw {

// Fixed 64-bit seed of the random signal / initial-point corpus. All seeded
// experiments derive their streams from this value so that reported numbers
// are reproducible byte-for-byte.
inline constexpr std::uint64_t kCorpusSeed = 0xE26A5B9D41C3F708ULL;

// Largest sieve size constructed in memory (values + smallest-prime-factor
// table); beyond this a ResourceError is raised.
inline constexpr std::int64_t kMaxSieveSize = 200'000'000;

// Largest kernel support for which exact FFT convolutions are attempted;
// oscillation blocks beyond it fall back to certified upper bounds.
inline constexpr std::int64_t kMaxExactKernelSupport = 1LL << 21;

}  // namespace ergw
