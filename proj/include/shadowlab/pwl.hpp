#pragma once

#include "shadowlab/pwl/circle.hpp"
#include "shadowlab/pwl/examples.hpp"
#include "shadowlab/pwl/interval_set.hpp"
#include "shadowlab/pwl/pl_map.hpp"
#include "shadowlab/pwl/rotation_search.hpp"
#include "shadowlab/pwl/shadow_run.hpp"
