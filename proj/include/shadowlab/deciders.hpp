#pragma once

#include "shadowlab/deciders/certificates.hpp"
#include "shadowlab/deciders/delta_graph.hpp"
#include "shadowlab/deciders/engine.hpp"
#include "shadowlab/deciders/inverse.hpp"
#include "shadowlab/deciders/lasso_refuter.hpp"
#include "shadowlab/deciders/limit.hpp"
#include "shadowlab/deciders/oracle.hpp"
#include "shadowlab/deciders/property.hpp"
#include "shadowlab/deciders/shadowing.hpp"
#include "shadowlab/deciders/strong_orbital.hpp"
#include "shadowlab/deciders/verdict.hpp"
#include "shadowlab/deciders/visited_sets.hpp"
