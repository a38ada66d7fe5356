#pragma once

#include "gmtkit/chain.hpp"
#include "gmtkit/complex.hpp"
#include "gmtkit/convergence.hpp"
#include "gmtkit/errors.hpp"
#include "gmtkit/families.hpp"
#include "gmtkit/flatnorm.hpp"
#include "gmtkit/geom.hpp"
#include "gmtkit/io.hpp"
#include "gmtkit/mcf.hpp"
#include "gmtkit/varifold.hpp"
