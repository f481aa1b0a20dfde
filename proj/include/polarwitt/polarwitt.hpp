#pragma once

// Umbrella header.
#include "errors.hpp"
#include "scalars.hpp"
#include "intpoly.hpp"
#include "universal.hpp"
#include "linalg.hpp"
#include "gradedpoly.hpp"
#include "polar.hpp"
#include "witt.hpp"
#include "cowitt.hpp"
#include "dieudonne.hpp"
#include "parse.hpp"
