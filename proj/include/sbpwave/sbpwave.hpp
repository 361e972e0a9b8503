#pragma once

// Umbrella header for the SBP-SAT wave-equation workbench.

#include "sbpwave/coefficients.hpp"
#include "sbpwave/convergence.hpp"
#include "sbpwave/errors.hpp"
#include "sbpwave/manufactured.hpp"
#include "sbpwave/normal_mode.hpp"
#include "sbpwave/operators.hpp"
#include "sbpwave/periodic.hpp"
#include "sbpwave/report.hpp"
#include "sbpwave/system.hpp"
#include "sbpwave/tabulated.hpp"
#include "sbpwave/tensor.hpp"
#include "sbpwave/timeloop.hpp"
