#pragma once

#include "dirac_coulomb/error.hpp"
#include "dirac_coulomb/polynomials.hpp"
#include "dirac_coulomb/quadrature.hpp"
#include "dirac_coulomb/model.hpp"
#include "dirac_coulomb/spectrum.hpp"
#include "dirac_coulomb/symmetry.hpp"
#include "dirac_coulomb/radial.hpp"
#include "dirac_coulomb/io.hpp"
