#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "sft/fourier_fit.hpp"

namespace sft {

/// Versioned plain-text record stream: one header per set, one line per
/// coefficient (basis, order, value in full precision). A file may hold
/// several sets (for example all three Gaussian kinds).
void write_coefficient_sets(std::ostream& os, const std::vector<CoefficientSet>& sets);
std::vector<CoefficientSet> read_coefficient_sets(std::istream& is);

}  // namespace sft
