#pragma once

#include "gpcuntz/core.hpp"
#include "gpcuntz/algebra.hpp"
#include "gpcuntz/expr.hpp"
#include "gpcuntz/params.hpp"
#include "gpcuntz/states.hpp"
#include "gpcuntz/reps.hpp"
#include "gpcuntz/classify.hpp"
#include "gpcuntz/random.hpp"
#include "gpcuntz/io.hpp"
