#ifndef SPHGEOM_SPHGEOM_HPP
#define SPHGEOM_SPHGEOM_HPP

#include "sphgeom/area.hpp"
#include "sphgeom/cevians.hpp"
#include "sphgeom/core.hpp"
#include "sphgeom/error.hpp"
#include "sphgeom/extremal.hpp"
#include "sphgeom/geodesics.hpp"
#include "sphgeom/lexell.hpp"
#include "sphgeom/pappus.hpp"
#include "sphgeom/planar.hpp"
#include "sphgeom/projections.hpp"
#include "sphgeom/sampling.hpp"
#include "sphgeom/svg.hpp"
#include "sphgeom/trig.hpp"
#include "sphgeom/verify.hpp"

#endif  // SPHGEOM_SPHGEOM_HPP
