#pragma once

#include "treedepth/dp/engine.hpp"
#include "treedepth/errors.hpp"
#include "treedepth/generators.hpp"
#include "treedepth/graph.hpp"
#include "treedepth/io.hpp"
#include "treedepth/oracle.hpp"
#include "treedepth/solvers.hpp"
#include "treedepth/td_decomposition.hpp"
#include "treedepth/tree_decomposition.hpp"
