#pragma once

#include "abin/baseline.hpp"
#include "abin/bin_cull.hpp"
#include "abin/compare.hpp"
#include "abin/frustum.hpp"
#include "abin/heightfield.hpp"
#include "abin/mapping.hpp"
#include "abin/quadratic.hpp"
#include "abin/scenario.hpp"
#include "abin/selftest.hpp"
#include "abin/terrain.hpp"
