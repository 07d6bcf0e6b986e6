#pragma once

#include "csar/core/error.hpp"
#include "csar/core/fft.hpp"
#include "csar/core/geometry.hpp"
#include "csar/core/image.hpp"
#include "csar/core/image_io.hpp"
#include "csar/core/params.hpp"
#include "csar/core/scene.hpp"
#include "csar/sim/echo.hpp"
#include "csar/sim/noise.hpp"
#include "csar/rda/filters.hpp"
#include "csar/rda/rcmc.hpp"
#include "csar/rda/focus.hpp"
#include "csar/apobs/approx_observe.hpp"
#include "csar/apobs/calibration.hpp"
#include "csar/sampling/random.hpp"
#include "csar/sampling/pattern.hpp"
#include "csar/solver/threshold.hpp"
#include "csar/solver/ita.hpp"
#include "csar/solver/reconstruct.hpp"
#include "csar/cseo/reconstruct_exact.hpp"
#include "csar/cseo/densify.hpp"
#include "csar/metrics/upsample.hpp"
#include "csar/metrics/sidelobe.hpp"
#include "csar/metrics/support.hpp"
#include "csar/cli/export.hpp"
#include "csar/cli/pipeline.hpp"
