#pragma once

#include "cubiq/errors.hpp"
#include "cubiq/integer.hpp"
#include "cubiq/matrix.hpp"
#include "cubiq/lattice.hpp"
#include "cubiq/subset.hpp"
#include "cubiq/obstructions.hpp"
#include "cubiq/transforms.hpp"
#include "cubiq/classify.hpp"
#include "cubiq/io.hpp"
