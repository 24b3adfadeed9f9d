#pragma once

#include "esc/arith.hpp"
#include "esc/coverage.hpp"
#include "esc/identities.hpp"
#include "esc/io.hpp"
#include "esc/solver.hpp"
#include "esc/triple.hpp"
