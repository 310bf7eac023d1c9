#pragma once

#include "hbeam/beam_system.hpp"
#include "hbeam/closed_form.hpp"
#include "hbeam/common.hpp"
#include "hbeam/density.hpp"
#include "hbeam/evolution.hpp"
#include "hbeam/galerkin.hpp"
#include "hbeam/optimizer.hpp"
#include "hbeam/parallel.hpp"
#include "hbeam/piecewise.hpp"
#include "hbeam/stability.hpp"
