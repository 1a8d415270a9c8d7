#pragma once

// Library umbrella. The HTTP layer lives in tourroute/service.hpp.

#include "tourroute/baselines.hpp"
#include "tourroute/dispatch.hpp"
#include "tourroute/enumerate.hpp"
#include "tourroute/error.hpp"
#include "tourroute/graph.hpp"
#include "tourroute/ledger.hpp"
#include "tourroute/route.hpp"
