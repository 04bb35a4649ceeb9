#pragma once

#include "phull/core.hpp"
#include "phull/poly.hpp"
#include "phull/simplex.hpp"
#include "phull/optimize.hpp"
#include "phull/parallel.hpp"
#include "phull/extremal.hpp"
#include "phull/modconst.hpp"
#include "phull/extend.hpp"
#include "phull/hull.hpp"
