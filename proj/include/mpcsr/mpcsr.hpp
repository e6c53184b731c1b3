#pragma once

#include "mpcsr/scalar.hpp"
#include "mpcsr/matrix.hpp"
#include "mpcsr/digraph.hpp"
#include "mpcsr/closure.hpp"
#include "mpcsr/critical.hpp"
#include "mpcsr/ensemble.hpp"
#include "mpcsr/trellis.hpp"
#include "mpcsr/numbers.hpp"
#include "mpcsr/csr.hpp"
#include "mpcsr/bounds.hpp"
#include "mpcsr/reference.hpp"
#include "mpcsr/counterexamples.hpp"
