#pragma once

#include <threshkit/adaptive.hpp>
#include <threshkit/global_threshold.hpp>
#include <threshkit/iatm.hpp>
#include <threshkit/integral.hpp>
#include <threshkit/metrics.hpp>
#include <threshkit/pnm.hpp>
#include <threshkit/raster.hpp>
#include <threshkit/synth.hpp>
