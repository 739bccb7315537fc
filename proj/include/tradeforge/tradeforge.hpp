#pragma once
// Umbrella header.

#include "collection.hpp"
#include "combinatorics.hpp"
#include "exact.hpp"
#include "halvings.hpp"
#include "io.hpp"
#include "sts.hpp"
#include "trades.hpp"
