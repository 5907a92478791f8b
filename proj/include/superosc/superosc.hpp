#pragma once

#include "superosc/complex.hpp"
#include "superosc/errors.hpp"
#include "superosc/evolution.hpp"
#include "superosc/families.hpp"
#include "superosc/identities.hpp"
#include "superosc/measure.hpp"
#include "superosc/metrics.hpp"
#include "superosc/policy.hpp"
#include "superosc/quadrature.hpp"
#include "superosc/rational.hpp"
#include "superosc/real.hpp"
#include "superosc/special.hpp"
#include "superosc/symbol.hpp"
