// loopbloch.hpp — umbrella header

#pragma once

#include "loopbloch/analytic.hpp"
#include "loopbloch/config_file.hpp"
#include "loopbloch/core.hpp"
#include "loopbloch/doppler.hpp"
#include "loopbloch/dynamics.hpp"
#include "loopbloch/generator.hpp"
#include "loopbloch/parallel.hpp"
#include "loopbloch/scheme.hpp"
#include "loopbloch/states.hpp"
#include "loopbloch/steady_state.hpp"
#include "loopbloch/sweep.hpp"
#include "loopbloch/validate.hpp"
