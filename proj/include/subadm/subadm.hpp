#pragma once

#include "exact.hpp"
#include "lattice.hpp"
#include "rootsys.hpp"
#include "affine.hpp"
#include "admissible.hpp"
#include "theta.hpp"
#include "numerators.hpp"
#include "parallel.hpp"
#include "smatrix.hpp"
#include "qhr.hpp"
#include "sampling.hpp"
