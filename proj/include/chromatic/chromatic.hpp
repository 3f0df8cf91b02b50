#pragma once

#include "chromatic/error.hpp"
#include "chromatic/small_set.hpp"
#include "chromatic/universe.hpp"
#include "chromatic/complex.hpp"
#include "chromatic/subdivision.hpp"
#include "chromatic/geometry.hpp"
#include "chromatic/coloring.hpp"
#include "chromatic/valency.hpp"
#include "chromatic/local_solvers.hpp"
#include "chromatic/renaming.hpp"
#include "chromatic/game.hpp"
#include "chromatic/oracle.hpp"
#include "chromatic/io.hpp"
#include "chromatic/service.hpp"
