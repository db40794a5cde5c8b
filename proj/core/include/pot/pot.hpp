#pragma once

#include "pot/errors.hpp"
#include "pot/exact_ot.hpp"
#include "pot/ingest.hpp"
#include "pot/matrix.hpp"
#include "pot/metrics.hpp"
#include "pot/prototypes.hpp"
#include "pot/random.hpp"
#include "pot/scorer.hpp"
#include "pot/synth.hpp"
#include "pot/transport.hpp"
