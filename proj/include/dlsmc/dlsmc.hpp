#ifndef DLSMC_DLSMC_HPP
#define DLSMC_DLSMC_HPP

#include "bench.hpp"
#include "clique_state.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "penalties.hpp"
#include "solver.hpp"
#include "vertex_set.hpp"

#endif // DLSMC_DLSMC_HPP
