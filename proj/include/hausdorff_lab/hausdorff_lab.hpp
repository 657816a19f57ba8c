#pragma once

#include "hausdorff_lab/core_sets.hpp"
#include "hausdorff_lab/dimension.hpp"
#include "hausdorff_lab/fractals.hpp"
#include "hausdorff_lab/gauge_measure.hpp"
#include "hausdorff_lab/grid_cover.hpp"
#include "hausdorff_lab/hausdorff.hpp"
#include "hausdorff_lab/io.hpp"
#include "hausdorff_lab/parallel.hpp"
#include "hausdorff_lab/verify.hpp"
