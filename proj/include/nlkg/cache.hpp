#pragma once
#include <cstdint>
#include <string>

#include "nlkg/spectral.hpp"

namespace nlkg {

// Content hash of everything that determines a spectral decomposition:
// grid extent and size, sampled potential, mass, and the edge-band factor.
std::uint64_t spectral_key(const Grid1D& g, const Potential& V, double m,
                           const Tolerances& tol = {});

// NLKG_CACHE_DIR, else ~/.cache/nlkg, else ./.nlkg-cache; created on demand.
// Empty string when no writable location exists.
std::string cache_dir();

bool load_spectral_cache(std::uint64_t key, SpectralData& out);

// atomic: writes a temporary alongside and renames into place
void store_spectral_cache(std::uint64_t key, const SpectralData& S);

// decompose with read-through caching; cache failures fall back silently
SpectralData cached_decompose(const Grid1D& g, const Potential& V, double m,
                              const Tolerances& tol = {});

}  // namespace nlkg
