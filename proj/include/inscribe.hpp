#pragma once

// Everything: exact predicates, hulls, triangulations, liftings, K-bodies,
// the construction pipeline and JSON I/O.

#include "inscribe/combinatorics.hpp"
#include "inscribe/errors.hpp"
#include "inscribe/exact_core.hpp"
#include "inscribe/hull_complex.hpp"
#include "inscribe/io.hpp"
#include "inscribe/kbody_inscribe.hpp"
#include "inscribe/lifting.hpp"
#include "inscribe/pipeline.hpp"
#include "inscribe/rational.hpp"
#include "inscribe/triangulation.hpp"
