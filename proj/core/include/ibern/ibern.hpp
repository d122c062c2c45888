#pragma once

#include "ibern/bernstein.hpp"
#include "ibern/calculus.hpp"
#include "ibern/dense.hpp"
#include "ibern/errors.hpp"
#include "ibern/functions.hpp"
#include "ibern/iterated.hpp"
#include "ibern/qbernstein.hpp"
#include "ibern/szasz.hpp"
