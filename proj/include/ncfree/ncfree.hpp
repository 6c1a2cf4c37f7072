#pragma once

// Umbrella header: exact enumeration of non-crossing partitions, the
// Kreweras complement machinery, moment/cumulant transforms, free
// multiplicative convolution, and certified support-edge bounds.

#include "ncfree/bounds.hpp"
#include "ncfree/convolution.hpp"
#include "ncfree/enumerate.hpp"
#include "ncfree/errors.hpp"
#include "ncfree/laws.hpp"
#include "ncfree/measure.hpp"
#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"
#include "ncfree/sequences.hpp"
