#pragma once

#include "ncharm/calculus.hpp"
#include "ncharm/classify.hpp"
#include "ncharm/error.hpp"
#include "ncharm/evaluate.hpp"
#include "ncharm/exact_linalg.hpp"
#include "ncharm/gram.hpp"
#include "ncharm/harmonic.hpp"
#include "ncharm/io.hpp"
#include "ncharm/middle_matrix.hpp"
#include "ncharm/neighbor.hpp"
#include "ncharm/parse.hpp"
#include "ncharm/poly.hpp"
#include "ncharm/positivity.hpp"
#include "ncharm/scalar.hpp"
#include "ncharm/word.hpp"
