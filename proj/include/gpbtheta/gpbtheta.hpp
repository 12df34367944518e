#ifndef GPBTHETA_GPBTHETA_HPP
#define GPBTHETA_GPBTHETA_HPP

#include "bundles.hpp"
#include "descent.hpp"
#include "field.hpp"
#include "generate.hpp"
#include "gpb.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "random.hpp"
#include "stability.hpp"
#include "theta.hpp"

// JSON encodings and the batch harness need the vendored json.hpp:
// serialization.hpp, experiment.hpp

#endif  // GPBTHETA_GPBTHETA_HPP
