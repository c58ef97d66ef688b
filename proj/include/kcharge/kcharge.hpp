#pragma once

#include "kcharge/bundle.hpp"
#include "kcharge/charclass.hpp"
#include "kcharge/khomology.hpp"
#include "kcharge/ktheory.hpp"
#include "kcharge/ring.hpp"
