#pragma once

#include "maac/alert.hpp"
#include "maac/alert_graph.hpp"
#include "maac/app.hpp"
#include "maac/config.hpp"
#include "maac/embedding.hpp"
#include "maac/metrics.hpp"
#include "maac/parse.hpp"
#include "maac/paths.hpp"
#include "maac/pipeline.hpp"
#include "maac/reduction.hpp"
#include "maac/scenario.hpp"
#include "maac/scoring.hpp"
#include "maac/stage_classifier.hpp"
