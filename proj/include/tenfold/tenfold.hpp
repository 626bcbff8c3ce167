#pragma once

#include "tenfold/classifier.hpp"
#include "tenfold/ensembles.hpp"
#include "tenfold/fock.hpp"
#include "tenfold/io.hpp"
#include "tenfold/symmetric_space.hpp"
#include "tenfold/verify.hpp"
