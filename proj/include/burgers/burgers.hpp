#pragma once

#include "burgers/analytic.hpp"
#include "burgers/diffusion.hpp"
#include "burgers/errors.hpp"
#include "burgers/grid.hpp"
#include "burgers/hopfcole.hpp"
#include "burgers/metrics.hpp"
#include "burgers/parallel.hpp"
#include "burgers/solver.hpp"
#include "burgers/special.hpp"
#include "burgers/splines.hpp"
