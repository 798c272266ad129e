#pragma once

#include "tstein/decomposition.hpp"
#include "tstein/error.hpp"
#include "tstein/householder.hpp"
#include "tstein/io.hpp"
#include "tstein/kron.hpp"
#include "tstein/lu.hpp"
#include "tstein/matrix.hpp"
#include "tstein/random.hpp"
#include "tstein/schur.hpp"
#include "tstein/solvers.hpp"
#include "tstein/spectral.hpp"
#include "tstein/svd.hpp"
#include "tstein/sylvester.hpp"
#include "tstein/triangular.hpp"
