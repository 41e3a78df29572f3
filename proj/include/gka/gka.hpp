#pragma once

#include "gka/errors.hpp"
#include "gka/field.hpp"
#include "gka/matrix.hpp"
#include "gka/subspace.hpp"
#include "gka/labeled_space.hpp"
#include "gka/degree_set.hpp"
#include "gka/subsets.hpp"
#include "gka/windowed_map.hpp"
#include "gka/graded_algebra.hpp"
#include "gka/graded_module.hpp"
#include "gka/regrade.hpp"
#include "gka/constructions.hpp"
#include "gka/lifting.hpp"
#include "gka/harness.hpp"
