#pragma once

#include "igbm/asian.hpp"
#include "igbm/dothan.hpp"
#include "igbm/errors.hpp"
#include "igbm/model.hpp"
#include "igbm/oracles.hpp"
#include "igbm/quadrature.hpp"
#include "igbm/ratefn.hpp"
#include "igbm/rootfind.hpp"
#include "igbm/specfun.hpp"
