#pragma once

#include "core.hpp"
#include "csv.hpp"
#include "evolution.hpp"
#include "experiments.hpp"
#include "fitting.hpp"
#include "gauge.hpp"
#include "invariants.hpp"
#include "multiplier.hpp"
#include "nonlinearity.hpp"
#include "spectral.hpp"
#include "svg.hpp"
