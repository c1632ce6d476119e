// SPDX-License-Identifier: Apache-2.0

#ifndef BIATSP_BIATSP_HPP
#define BIATSP_BIATSP_HPP

#include "biatsp/assignment.hpp"
#include "biatsp/error.hpp"
#include "biatsp/exact.hpp"
#include "biatsp/experiment.hpp"
#include "biatsp/instance.hpp"
#include "biatsp/metrics.hpp"
#include "biatsp/nsga2.hpp"
#include "biatsp/operators.hpp"
#include "biatsp/pareto.hpp"
#include "biatsp/rational.hpp"
#include "biatsp/rng.hpp"

#endif  // BIATSP_BIATSP_HPP
