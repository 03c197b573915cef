// dicat.hpp: umbrella header

#pragma once

#include "dicat/types.hpp"
#include "dicat/core/model.hpp"
#include "dicat/core/operators.hpp"
#include "dicat/core/oscillator.hpp"
#include "dicat/core/states.hpp"
#include "dicat/linalg/expm.hpp"
#include "dicat/linalg/lanczos.hpp"
#include "dicat/exact/evolve.hpp"
#include "dicat/exact/fidelity.hpp"
#include "dicat/exact/quench.hpp"
#include "dicat/exact/reduce.hpp"
#include "dicat/circuit/gates.hpp"
#include "dicat/circuit/schedule.hpp"
#include "dicat/circuit/trotter.hpp"
#include "dicat/noise/lindblad.hpp"
#include "dicat/tomography/displacement.hpp"
#include "dicat/tomography/marginal.hpp"
#include "dicat/tomography/wigner.hpp"
#include "dicat/field/angular.hpp"
#include "dicat/field/elliptic.hpp"
#include "dicat/field/free_energy.hpp"
#include "dicat/field/instanton.hpp"
