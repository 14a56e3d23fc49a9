// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "scatkern/elliptic.hpp"
#include "scatkern/hg_closed.hpp"
#include "scatkern/integrate.hpp"
#include "scatkern/kernel_grid.hpp"
#include "scatkern/legendre.hpp"
#include "scatkern/phase_function.hpp"
#include "scatkern/quadrature.hpp"
