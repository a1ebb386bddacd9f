#pragma once

#include "polystrata/rational.hpp"
#include "polystrata/matrix.hpp"
#include "polystrata/snf.hpp"
#include "polystrata/lp.hpp"
#include "polystrata/hull.hpp"
#include "polystrata/lattice.hpp"
#include "polystrata/polytope.hpp"
#include "polystrata/matroid.hpp"
#include "polystrata/cells.hpp"
#include "polystrata/complex.hpp"
#include "polystrata/subdivision.hpp"
#include "polystrata/periodic.hpp"
