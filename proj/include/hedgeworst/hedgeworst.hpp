#pragma once

#include "adversary.hpp"
#include "analysis.hpp"
#include "dp.hpp"
#include "game.hpp"
#include "oracle.hpp"
#include "scalar_opt.hpp"
