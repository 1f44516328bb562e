#pragma once

#include "maxent/classify.hpp"
#include "maxent/config.hpp"
#include "maxent/constraints.hpp"
#include "maxent/errors.hpp"
#include "maxent/game.hpp"
#include "maxent/information.hpp"
#include "maxent/kelly.hpp"
#include "maxent/lp.hpp"
#include "maxent/measure.hpp"
#include "maxent/representation.hpp"
#include "maxent/rng.hpp"
#include "maxent/sampling.hpp"
#include "maxent/solver.hpp"
#include "maxent/space.hpp"
