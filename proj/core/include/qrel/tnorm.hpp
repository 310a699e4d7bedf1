#pragma once

#include "qrel/rational.hpp"

namespace qrel {

/// The three left-continuous t-norms on the rational unit interval.
enum class TNorm : std::uint8_t { product, minimum, lukasiewicz };

/// a & b for a, b in [0, 1].
Rat tnorm_apply(TNorm t, const Rat& a, const Rat& b);

/// Residual x -> z: the largest v with x & v <= z.
Rat tnorm_residual(TNorm t, const Rat& x, const Rat& z);

const char* tnorm_name(TNorm t);

}  // namespace qrel
