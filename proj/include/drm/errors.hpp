#pragma once

#include <stdexcept>
#include <string>

namespace drm {

// Raised when a configured desk-scale bound (ring size, orbit count,
// factorization bound, search box) would be exceeded. Callers surface
// these as structured diagnostics, never as silent truncation.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace drm
