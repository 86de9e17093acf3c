#pragma once

// Exact runtime analysis of (1+lambda) evolutionary algorithms on OneMax whose
// mutation operator is a static distribution over mutation strengths, plus the
// machinery to search for optimal distributions and compare classic operators
// against them.

#include "omsd/dp.hpp"
#include "omsd/experiments.hpp"
#include "omsd/io.hpp"
#include "omsd/math.hpp"
#include "omsd/operators.hpp"
#include "omsd/parallel.hpp"
#include "omsd/reference_runtimes.hpp"
#include "omsd/rng.hpp"
#include "omsd/sep_cmaes.hpp"
#include "omsd/simulate.hpp"
#include "omsd/strength_distribution.hpp"
#include "omsd/transition_kernel.hpp"
