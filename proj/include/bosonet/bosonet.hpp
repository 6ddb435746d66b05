// bosonet.hpp: Umbrella header.

#pragma once

#include "bosonet/types.hpp"
#include "bosonet/linalg.hpp"
#include "bosonet/quadrature.hpp"
#include "bosonet/network.hpp"
#include "bosonet/reservoirs.hpp"
#include "bosonet/stationary.hpp"
#include "bosonet/propagation.hpp"
#include "bosonet/phase_space.hpp"
#include "bosonet/metrics.hpp"
#include "bosonet/oracle.hpp"
