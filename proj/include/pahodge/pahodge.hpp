#pragma once

// Everything at once.

#include "errors.hpp"
#include "valuation.hpp"
#include "padic.hpp"
#include "padic_functions.hpp"
#include "matrix.hpp"
#include "matrix_functions.hpp"
#include "roots.hpp"
#include "newton.hpp"
#include "series.hpp"
#include "cyclotomic.hpp"
#include "bdr.hpp"
#include "uadj.hpp"
#include "phi_modules.hpp"
#include "refinements.hpp"
