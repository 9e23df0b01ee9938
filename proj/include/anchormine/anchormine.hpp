#pragma once

// Umbrella header for the anchor-mining VOS toolkit.

#include "anchormine/config.hpp"
#include "anchormine/d4.hpp"
#include "anchormine/dataset.hpp"
#include "anchormine/detect.hpp"
#include "anchormine/embed.hpp"
#include "anchormine/errors.hpp"
#include "anchormine/image.hpp"
#include "anchormine/mask.hpp"
#include "anchormine/metrics.hpp"
#include "anchormine/pipeline.hpp"
#include "anchormine/png_io.hpp"
#include "anchormine/pool.hpp"
#include "anchormine/presets.hpp"
#include "anchormine/rle.hpp"
#include "anchormine/rng.hpp"
#include "anchormine/select.hpp"
#include "anchormine/synth.hpp"
#include "anchormine/track.hpp"
#include "anchormine/version.hpp"
