#pragma once

#include "risopt/channel.hpp"
#include "risopt/config_io.hpp"
#include "risopt/evaluator.hpp"
#include "risopt/geometry.hpp"
#include "risopt/heatmap.hpp"
#include "risopt/manifest.hpp"
#include "risopt/metrics.hpp"
#include "risopt/objective.hpp"
#include "risopt/optimizer.hpp"
#include "risopt/result_io.hpp"
#include "risopt/ris.hpp"
#include "risopt/rng.hpp"
#include "risopt/scenario.hpp"
#include "risopt/search_params_io.hpp"
#include "risopt/version.hpp"
