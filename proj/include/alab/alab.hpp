#pragma once

#include "alab/common.hpp"
#include "alab/config.hpp"
#include "alab/cyclo.hpp"
#include "alab/dioph.hpp"
#include "alab/homoclinic.hpp"
#include "alab/lattice.hpp"
#include "alab/laurent.hpp"
#include "alab/mahler.hpp"
#include "alab/numeric.hpp"
#include "alab/periodic.hpp"
#include "alab/rational.hpp"
#include "alab/variety.hpp"
