#pragma once

#include <stdexcept>

namespace svps {

/// Raised when a statistical procedure cannot produce an estimate
/// (too few points, search ceiling exceeded, and the like).
struct estimation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace svps
