#pragma once

// Convenience umbrella for the whole library.

#include "halfplane.hpp"
#include "density.hpp"
#include "quadrature.hpp"
#include "measure.hpp"
#include "kernels.hpp"
#include "torus.hpp"
#include "representation.hpp"
#include "certification.hpp"
#include "inversion.hpp"
#include "corpus.hpp"
#include "io.hpp"
