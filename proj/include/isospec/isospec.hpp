#pragma once

#include "config.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "pseudospectra.hpp"
#include "classify.hpp"
#include "gallery.hpp"
