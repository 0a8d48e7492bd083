#pragma once

// Numerical laboratory for calculus on conformal maps: conformal derivatives
// of functionals on domain configurations, their quadratic-differential
// structure, stress-tensor Ward identities as derivative identities, and
// annular factorization of near-identity maps.

#include "confcalc/boundary_curve.hpp"
#include "confcalc/cft.hpp"
#include "confcalc/configuration.hpp"
#include "confcalc/conformal_map.hpp"
#include "confcalc/contour.hpp"
#include "confcalc/core.hpp"
#include "confcalc/derivative.hpp"
#include "confcalc/domain.hpp"
#include "confcalc/factorization.hpp"
#include "confcalc/flow.hpp"
#include "confcalc/report.hpp"
#include "confcalc/riemann_map.hpp"
#include "confcalc/suites.hpp"
#include "confcalc/vector_field.hpp"
