#pragma once

#include "elastica/kernel.hpp"

// Plain single-threaded reference kernels. These mirror the parallel
// implementations cell for cell and must produce bit-identical results;
// tests and the benchmark compare against them.
namespace elastica::serial {

CostField cost_field(const TangentFunction& a0, const TangentFunction& a1,
                     double sigma);

DpResult dp_match(const CostField& field, int kmax = 4);

}  // namespace elastica::serial
