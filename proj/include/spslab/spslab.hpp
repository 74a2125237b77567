#pragma once

#include "spslab/analysis.hpp"
#include "spslab/dot.hpp"
#include "spslab/io.hpp"
