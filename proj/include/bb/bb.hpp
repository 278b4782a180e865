#pragma once

// Umbrella header for the bb propositional abstraction library.

#include "bb/abstraction.hpp"
#include "bb/formula.hpp"
#include "bb/parser.hpp"
#include "bb/qe.hpp"
#include "bb/semantics.hpp"
#include "bb/theory_io.hpp"
