#pragma once

#include "qspin/chain.hpp"
#include "qspin/common.hpp"
#include "qspin/io.hpp"
#include "qspin/metric.hpp"
#include "qspin/qalgebra.hpp"
#include "qspin/relations.hpp"
#include "qspin/spectral.hpp"
