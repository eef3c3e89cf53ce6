#pragma once

#include "chordmeans/chordfun.hpp"
#include "chordmeans/curve.hpp"
#include "chordmeans/electro.hpp"
#include "chordmeans/errors.hpp"
#include "chordmeans/fourier.hpp"
#include "chordmeans/leakywire.hpp"
#include "chordmeans/quadrature.hpp"
#include "chordmeans/roots.hpp"
#include "chordmeans/search.hpp"
#include "chordmeans/serialize.hpp"
#include "chordmeans/specfun.hpp"
