#ifndef SPARSH_SPARSH_HPP
#define SPARSH_SPARSH_HPP

/**
 * \file sparsh.hpp
 * \brief Convenience umbrella for the whole library.
 */

#include "sparsh/aggregation.hpp"
#include "sparsh/coarse_solver.hpp"
#include "sparsh/coarsen.hpp"
#include "sparsh/config.hpp"
#include "sparsh/convergence.hpp"
#include "sparsh/csr.hpp"
#include "sparsh/cycle.hpp"
#include "sparsh/hierarchy.hpp"
#include "sparsh/krylov.hpp"
#include "sparsh/log.hpp"
#include "sparsh/memory_model.hpp"
#include "sparsh/mm_io.hpp"
#include "sparsh/parallel.hpp"
#include "sparsh/problems.hpp"
#include "sparsh/smoother.hpp"

#endif
