#pragma once

#include "uplab/basis_window.hpp"
#include "uplab/complex_matrix.hpp"
#include "uplab/decompositions.hpp"
#include "uplab/growth.hpp"
#include "uplab/matrix_json.hpp"
#include "uplab/poisson.hpp"
#include "uplab/quotient.hpp"
#include "uplab/random.hpp"
#include "uplab/report.hpp"
