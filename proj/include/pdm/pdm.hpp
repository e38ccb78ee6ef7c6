#pragma once

#include "pdm/banded_matrix.hpp"
#include "pdm/classical_dynamics.hpp"
#include "pdm/core.hpp"
#include "pdm/em_coupling.hpp"
#include "pdm/jet.hpp"
#include "pdm/mass_models.hpp"
#include "pdm/numerics.hpp"
#include "pdm/operators.hpp"
#include "pdm/point_transform.hpp"
#include "pdm/spectral_solver.hpp"

#define PDM_VERSION "0.1.0"
