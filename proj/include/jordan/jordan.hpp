#pragma once

#include "jordan/errors.hpp"
#include "jordan/partitions.hpp"
#include "jordan/gfp_matrix.hpp"
#include "jordan/jordan_oracle.hpp"
#include "jordan/recursions.hpp"
#include "jordan/structural.hpp"
#include "jordan/mainthm.hpp"
