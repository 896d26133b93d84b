#pragma once

// Umbrella header.

#include "lorentz/arith.hpp"
#include "lorentz/chart.hpp"
#include "lorentz/cli_app.hpp"
#include "lorentz/dirichlet.hpp"
#include "lorentz/genset.hpp"
#include "lorentz/isometry.hpp"
#include "lorentz/json_io.hpp"
#include "lorentz/lattice_enum.hpp"
#include "lorentz/oracle.hpp"
#include "lorentz/quadform.hpp"
#include "lorentz/stabilizer.hpp"
