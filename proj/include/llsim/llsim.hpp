#pragma once

#include "llsim/algorithms/colouring.hpp"
#include "llsim/algorithms/dominating_set.hpp"
#include "llsim/algorithms/stable_marriage.hpp"
#include "llsim/algorithms/vertex_cover.hpp"
#include "llsim/engine.hpp"
#include "llsim/graph.hpp"
#include "llsim/io.hpp"
#include "llsim/lattice.hpp"
#include "llsim/program.hpp"
#include "llsim/registry.hpp"
