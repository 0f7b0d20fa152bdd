#pragma once

#include "errors.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "lipschitz.hpp"
#include "locality.hpp"
#include "lp_report.hpp"
#include "metric_space.hpp"
#include "pasting.hpp"
