#pragma once

#include "blockade_anyon/anyon_projectors.hpp"
#include "blockade_anyon/basis.hpp"
#include "blockade_anyon/commutant.hpp"
#include "blockade_anyon/constants.hpp"
#include "blockade_anyon/eigensolver.hpp"
#include "blockade_anyon/errors.hpp"
#include "blockade_anyon/hamiltonian.hpp"
#include "blockade_anyon/io.hpp"
#include "blockade_anyon/leakage.hpp"
#include "blockade_anyon/op_spec.hpp"
#include "blockade_anyon/rydberg_ops.hpp"
#include "blockade_anyon/sparse_operator.hpp"
#include "blockade_anyon/spectra.hpp"
#include "blockade_anyon/topo_symmetry.hpp"
#include "blockade_anyon/version.hpp"
