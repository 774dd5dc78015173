#pragma once

#include "gtcoef/distribution.hpp"
#include "gtcoef/empirical.hpp"
#include "gtcoef/errors.hpp"
#include "gtcoef/gt.hpp"
#include "gtcoef/incgamma.hpp"
#include "gtcoef/point_process.hpp"
#include "gtcoef/quadrature.hpp"
#include "gtcoef/renewal.hpp"
#include "gtcoef/rng.hpp"
