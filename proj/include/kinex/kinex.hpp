// Umbrella header.
#pragma once

#include "kinex/aemachine.hpp"
#include "kinex/core_model.hpp"
#include "kinex/dataset.hpp"
#include "kinex/expressivity.hpp"
#include "kinex/report.hpp"
#include "kinex/specfile.hpp"
