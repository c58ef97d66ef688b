#pragma once

// Cohomology-ring layer: catalog spaces, graded classes, homology, maps.
#include "kcharge/graded.hpp"
#include "kcharge/map.hpp"
#include "kcharge/rational.hpp"
#include "kcharge/space.hpp"
