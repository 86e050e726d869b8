#pragma once

#include "wdisp/core/errors.hpp"
#include "wdisp/core/integer.hpp"
#include "wdisp/ring/ring.hpp"
#include "wdisp/ring/parse.hpp"
#include "wdisp/ring/json.hpp"
#include "wdisp/witt/witt.hpp"
#include "wdisp/witt/finite.hpp"
#include "wdisp/witt/matrix.hpp"
#include "wdisp/display/display.hpp"
#include "wdisp/display/examples.hpp"
#include "wdisp/dieudonne/dieudonne.hpp"
#include "wdisp/moduli/moduli.hpp"
#include "wdisp/deformation/deformation.hpp"
#include "wdisp/period/period.hpp"
#include "wdisp/io/json.hpp"
