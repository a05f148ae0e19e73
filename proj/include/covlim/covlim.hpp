#pragma once

#include "covlim/word.hpp"
#include "covlim/grid.hpp"
#include "covlim/fox.hpp"
#include "covlim/stallings.hpp"
#include "covlim/lattice.hpp"
#include "covlim/abtower.hpp"
#include "covlim/tower.hpp"
#include "covlim/engine.hpp"
#include "covlim/tower_io.hpp"
#include "covlim/builtin.hpp"
#include "covlim/cache.hpp"
#include "covlim/hegfactor.hpp"
