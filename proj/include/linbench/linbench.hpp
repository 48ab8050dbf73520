#pragma once

#include "linbench/balassa.hpp"
#include "linbench/bench.hpp"
#include "linbench/dense_matrix.hpp"
#include "linbench/errors.hpp"
#include "linbench/linalg.hpp"
#include "linbench/matrix_core.hpp"
#include "linbench/oracles.hpp"
#include "linbench/prog.hpp"
#include "linbench/report.hpp"
#include "linbench/rng.hpp"
#include "linbench/suite.hpp"
#include "linbench/validate.hpp"
