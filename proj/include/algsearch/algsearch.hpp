#pragma once

#include "algsearch/algorithms.hpp"
#include "algsearch/combinatorics.hpp"
#include "algsearch/core.hpp"
#include "algsearch/errors.hpp"
#include "algsearch/information.hpp"
#include "algsearch/metrics.hpp"
#include "algsearch/scalar.hpp"
#include "algsearch/verifiers.hpp"
