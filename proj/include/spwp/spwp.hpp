#pragma once

#include "spwp/linalg.hpp"
#include "spwp/scalars.hpp"
#include "spwp/coeffalg.hpp"
#include "spwp/bimodule.hpp"
#include "spwp/species.hpp"
#include "spwp/tensor.hpp"
#include "spwp/jacobian.hpp"
#include "spwp/mutation.hpp"
#include "spwp/product.hpp"
#include "spwp/preproj.hpp"
#include "spwp/io.hpp"
