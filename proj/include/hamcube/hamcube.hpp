#pragma once

#include "hamcube/cube.hpp"
#include "hamcube/errors.hpp"
#include "hamcube/functionals.hpp"
#include "hamcube/io.hpp"
#include "hamcube/matrix.hpp"
#include "hamcube/numeric.hpp"
#include "hamcube/report.hpp"
#include "hamcube/rng.hpp"
#include "hamcube/search.hpp"
#include "hamcube/spaces.hpp"
#include "hamcube/verifier.hpp"
