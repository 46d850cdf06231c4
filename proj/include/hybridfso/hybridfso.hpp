#ifndef HYBRIDFSO_HYBRIDFSO_HPP
#define HYBRIDFSO_HYBRIDFSO_HPP

#include "analytic.hpp"
#include "channel_models.hpp"
#include "combining.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "montecarlo.hpp"
#include "random.hpp"
#include "special_functions.hpp"

#endif // HYBRIDFSO_HYBRIDFSO_HPP
