#pragma once

// Everything except the command-line layer (midx/cli.hpp).

#include "midx/scalar.hpp"
#include "midx/poly.hpp"
#include "midx/roots.hpp"
#include "midx/gamma.hpp"
#include "midx/determinant.hpp"
#include "midx/strip.hpp"
#include "midx/systems.hpp"
#include "midx/virtual_states.hpp"
#include "midx/casoratian.hpp"
#include "midx/verifier.hpp"
#include "midx/quadrature.hpp"
#include "midx/limits.hpp"
#include "midx/sweep.hpp"
