#pragma once

#include "chains.hpp"
#include "count_arithmetic.hpp"
#include "counting.hpp"
#include "diagnostics.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "measure.hpp"
#include "profile.hpp"
#include "serialization.hpp"
#include "spectra.hpp"
#include "word.hpp"
