#pragma once

#include "secrecy/analysis.hpp"
#include "secrecy/channels.hpp"
#include "secrecy/complex_matrix.hpp"
#include "secrecy/csv.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/inputs.hpp"
#include "secrecy/metrics.hpp"
#include "secrecy/quadrature.hpp"
#include "secrecy/rates.hpp"
#include "secrecy/rng.hpp"
#include "secrecy/special.hpp"
