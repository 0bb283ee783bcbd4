#pragma once

#include "hypermass/archimedes.hpp"
#include "hypermass/closed_forms.hpp"
#include "hypermass/density.hpp"
#include "hypermass/errors.hpp"
#include "hypermass/isometry.hpp"
#include "hypermass/lamina.hpp"
#include "hypermass/line.hpp"
#include "hypermass/linear_set.hpp"
#include "hypermass/minkowski.hpp"
#include "hypermass/models.hpp"
#include "hypermass/numeric.hpp"
#include "hypermass/point.hpp"
#include "hypermass/point_mass.hpp"
#include "hypermass/quadrature.hpp"
#include "hypermass/region.hpp"
#include "hypermass/trig.hpp"
