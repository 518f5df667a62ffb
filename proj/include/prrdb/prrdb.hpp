#pragma once

// De Bruijn sequence generation by successor rules over the pure run-length
// register x_0 + x_1 + x_{n-1}.

#include "canonical.hpp"
#include "errors.hpp"
#include "jointree.hpp"
#include "lcm.hpp"
#include "oracle.hpp"
#include "registers.hpp"
#include "rules.hpp"
#include "state.hpp"
#include "timing.hpp"
