#pragma once

// Exact nonstandard arithmetic on a computable fragment of *R, the Frechet
// filter on the eventually periodic subsets of N, ultrafilter fragments as
// coherent residue towers, and three provably equivalent limit engines.

#include "starlim/error.hpp"
#include "starlim/expr.hpp"
#include "starlim/filters.hpp"
#include "starlim/germ.hpp"
#include "starlim/limits.hpp"
#include "starlim/models.hpp"
#include "starlim/natset.hpp"
#include "starlim/polynomial.hpp"
#include "starlim/rational.hpp"
#include "starlim/rational_function.hpp"
#include "starlim/roots.hpp"
#include "starlim/starset.hpp"
