#pragma once

#include "cosym/chart.hpp"
#include "cosym/config.hpp"
#include "cosym/constructions.hpp"
#include "cosym/diff.hpp"
#include "cosym/error.hpp"
#include "cosym/geometry.hpp"
#include "cosym/groupoid.hpp"
#include "cosym/hamiltonian.hpp"
#include "cosym/holonomy.hpp"
#include "cosym/hull.hpp"
#include "cosym/morse_bott.hpp"
#include "cosym/parallel.hpp"
#include "cosym/point_tensor.hpp"
#include "cosym/report.hpp"
#include "cosym/runner.hpp"
#include "cosym/scenario.hpp"
#include "cosym/subspace.hpp"
