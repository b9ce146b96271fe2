#pragma once

#include "rdlab/error.hpp"
#include "rdlab/functionals/energy.hpp"
#include "rdlab/functionals/entropy.hpp"
#include "rdlab/functionals/gagliardo_nirenberg.hpp"
#include "rdlab/functionals/windowed_sup.hpp"
#include "rdlab/grid/grid.hpp"
#include "rdlab/grid/holder.hpp"
#include "rdlab/grid/norms.hpp"
#include "rdlab/grid/operators.hpp"
#include "rdlab/grid/snapshot_io.hpp"
#include "rdlab/inequality_report.hpp"
#include "rdlab/model/assumptions.hpp"
#include "rdlab/model/polynomial.hpp"
#include "rdlab/model/reaction_system.hpp"
#include "rdlab/model/sampling.hpp"
#include "rdlab/multi_index.hpp"
#include "rdlab/solver/augment.hpp"
#include "rdlab/solver/diffusion.hpp"
#include "rdlab/solver/dual.hpp"
#include "rdlab/solver/nonlinearity.hpp"
#include "rdlab/solver/run.hpp"
#include "rdlab/solver/scheme.hpp"
#include "rdlab/solver/trajectory.hpp"
#include "rdlab/theta/theta.hpp"
