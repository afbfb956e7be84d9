// Umbrella header.

#ifndef PMODAL_PMODAL_HPP_
#define PMODAL_PMODAL_HPP_

#include "pmodal/constraints.hpp"
#include "pmodal/errors.hpp"
#include "pmodal/evaluator.hpp"
#include "pmodal/kripke.hpp"
#include "pmodal/lp.hpp"
#include "pmodal/model.hpp"
#include "pmodal/model_io.hpp"
#include "pmodal/rational.hpp"
#include "pmodal/search.hpp"
#include "pmodal/solver.hpp"
#include "pmodal/syntax.hpp"

#endif  // PMODAL_PMODAL_HPP_
