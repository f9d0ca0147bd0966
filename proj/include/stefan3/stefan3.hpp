#pragma once

// Explicit similarity solutions of the three-phase melting problem on a
// semi-infinite slab with convective, temperature or flux data at x = 0.

#include "stefan3/errors.hpp"
#include "stefan3/specfun.hpp"
#include "stefan3/model.hpp"
#include "stefan3/transcendental.hpp"
#include "stefan3/solver.hpp"
#include "stefan3/equivalence.hpp"
#include "stefan3/verify.hpp"
#include "stefan3/fieldmap.hpp"
#include "stefan3/json_io.hpp"
