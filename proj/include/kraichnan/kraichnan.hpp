#pragma once

#include "kraichnan/asymptotics.hpp"
#include "kraichnan/bessel.hpp"
#include "kraichnan/errors.hpp"
#include "kraichnan/kernel.hpp"
#include "kraichnan/ncp.hpp"
#include "kraichnan/rng.hpp"
#include "kraichnan/spectral.hpp"
#include "kraichnan/volterra.hpp"

// matrix_oracle.hpp is kept out of the umbrella: it pulls in Eigen.
