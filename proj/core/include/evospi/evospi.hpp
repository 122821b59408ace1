#pragma once

// Umbrella header for the whole public surface.

#include "evospi/bench.hpp"
#include "evospi/core.hpp"
#include "evospi/evolve.hpp"
#include "evospi/pnm.hpp"
#include "evospi/problems.hpp"
#include "evospi/rng.hpp"
#include "evospi/spi.hpp"
