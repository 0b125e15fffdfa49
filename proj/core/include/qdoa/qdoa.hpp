#ifndef QDOA_QDOA_HPP
#define QDOA_QDOA_HPP

#include "qdoa/array_model.hpp"
#include "qdoa/bit_depth.hpp"
#include "qdoa/crlb.hpp"
#include "qdoa/csv_io.hpp"
#include "qdoa/estimators.hpp"
#include "qdoa/experiment_config.hpp"
#include "qdoa/polynomial.hpp"
#include "qdoa/quantizer.hpp"
#include "qdoa/rng.hpp"
#include "qdoa/sweeps.hpp"

#endif  // QDOA_QDOA_HPP
