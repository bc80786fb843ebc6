#pragma once

#include "spintomo/entropy.hpp"
#include "spintomo/errors.hpp"
#include "spintomo/half_integer.hpp"
#include "spintomo/linalg.hpp"
#include "spintomo/quadrature.hpp"
#include "spintomo/quantum_state.hpp"
#include "spintomo/su2.hpp"
#include "spintomo/tomography.hpp"
#include "spintomo/unitary_minimizer.hpp"
#include "spintomo/wigner3j.hpp"
