#pragma once

#include "cdopt/errors.hpp"
#include "cdopt/flops.hpp"
#include "cdopt/linalg.hpp"
#include "cdopt/partition.hpp"
#include "cdopt/rng.hpp"
#include "cdopt/spectral.hpp"

#include "cdopt/prox.hpp"
#include "cdopt/summative.hpp"
#include "cdopt/tv1d.hpp"

#include "cdopt/gradient_table.hpp"
#include "cdopt/index_rules.hpp"
#include "cdopt/schemes.hpp"

#include "cdopt/problems/lasso.hpp"
#include "cdopt/problems/least_squares.hpp"
#include "cdopt/problems/logistic.hpp"
#include "cdopt/problems/nmf.hpp"
#include "cdopt/problems/quadratic.hpp"
#include "cdopt/problems/rotated_l1.hpp"
#include "cdopt/problems/svm_dual.hpp"

#include "cdopt/bench/experiment.hpp"
#include "cdopt/bench/generators.hpp"
#include "cdopt/bench/io.hpp"
#include "cdopt/bench/prox_oracle.hpp"
#include "cdopt/bench/reference.hpp"
