#pragma once

#include "sphosc/chiral.hpp"
#include "sphosc/eigenfunctions.hpp"
#include "sphosc/partition.hpp"
#include "sphosc/special_functions.hpp"
#include "sphosc/spectrum.hpp"
#include "sphosc/sturm_liouville.hpp"

namespace sphosc {
inline constexpr const char* kVersion = "sphosc 1.0.0";
}
