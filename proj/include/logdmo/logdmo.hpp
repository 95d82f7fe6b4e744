#pragma once

// Umbrella header for the whole library.

#include "analysis.hpp"
#include "fft.hpp"
#include "fk.hpp"
#include "grid.hpp"
#include "gridio.hpp"
#include "interp.hpp"
#include "kernel.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "pipeline.hpp"
#include "stretch.hpp"
#include "wavelet.hpp"
