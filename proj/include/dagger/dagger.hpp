#pragma once

#include "dagger/algebra.hpp"
#include "dagger/crossed.hpp"
#include "dagger/error.hpp"
#include "dagger/gallery.hpp"
#include "dagger/json.hpp"
#include "dagger/lattice.hpp"
#include "dagger/matrix.hpp"
#include "dagger/monoid.hpp"
#include "dagger/parse.hpp"
#include "dagger/presentation.hpp"
#include "dagger/rational.hpp"
#include "dagger/ring.hpp"
#include "dagger/scalar.hpp"
#include "dagger/series.hpp"
#include "dagger/snf.hpp"
#include "dagger/spectral.hpp"
