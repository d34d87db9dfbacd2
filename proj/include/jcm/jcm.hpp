// jcm.hpp -- umbrella header.

#pragma once

#include "jcm/distance.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/experiments.hpp"
#include "jcm/model.hpp"
#include "jcm/numerics.hpp"
#include "jcm/oracle.hpp"
#include "jcm/states.hpp"
