#pragma once

#include "shadowlab/lifting/alp.hpp"
#include "shadowlab/lifting/certificates.hpp"
#include "shadowlab/lifting/preservation.hpp"
#include "shadowlab/lifting/family.hpp"
